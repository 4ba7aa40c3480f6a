//! Binary forms in (x, y) with polynomial coefficients in t, and their
//! homogeneous resultant.
//!
//! The resultant is the determinant of the 2d×2d Sylvester matrix over ℚ[t],
//! computed by fraction-free Bareiss elimination: every division is exact in
//! ℚ[t], which keeps intermediate degrees linear instead of exponential.

use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiForm {
    d: usize,
    /// Index j = coefficient of x^{d−j} y^j.
    coeffs: Vec<Poly>,
}

impl BiForm {
    pub fn new(d: usize, coeffs: Vec<Poly>) -> Result<Self> {
        if d < 1 {
            return Err(Error::domain("binary form degree must be at least 1"));
        }
        if coeffs.len() != d + 1 {
            return Err(Error::domain(format!(
                "degree-{d} form needs {} coefficients, got {}",
                d + 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().all(Poly::is_zero) {
            return Err(Error::domain("identically zero binary form"));
        }
        Ok(BiForm { d, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Substitute a pair of polynomials: Σ c_j x^{d−j} y^j.
    pub fn eval_poly(&self, x: &Poly, y: &Poly) -> Poly {
        let xs = power_table(x, self.d);
        let ys = power_table(y, self.d);
        let mut acc = Poly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(c * &(&xs[self.d - j] * &ys[j]));
        }
        acc
    }

    /// eval_poly with all products truncated to degree < prec (series mode).
    pub fn eval_poly_trunc(&self, x: &Poly, y: &Poly, prec: usize) -> Poly {
        let xs = power_table_trunc(x, self.d, prec);
        let ys = power_table_trunc(y, self.d, prec);
        let mut acc = Poly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = xs[self.d - j].mul_trunc(&ys[j], prec);
            acc = &acc + &c.mul_trunc(&m, prec);
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Result<Self> {
        BiForm::new(self.d, self.coeffs.iter().map(f).collect())
    }

    /// Max t-degree over the coefficients.
    pub fn coeff_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(Poly::deg)
            .max()
            .unwrap_or(0)
    }
}

fn power_table(x: &Poly, d: usize) -> Vec<Poly> {
    let mut v = Vec::with_capacity(d + 1);
    v.push(Poly::one());
    for i in 1..=d {
        v.push(&v[i - 1] * x);
    }
    v
}

fn power_table_trunc(x: &Poly, d: usize, prec: usize) -> Vec<Poly> {
    let mut v = Vec::with_capacity(d + 1);
    v.push(Poly::one());
    for i in 1..=d {
        v.push(v[i - 1].mul_trunc(x, prec));
    }
    v
}

/// Homogeneous resultant of two equal-degree binary forms: the Sylvester
/// determinant, a polynomial in t vanishing exactly at parameters where the
/// specialized forms share a projective root.
pub fn resultant_forms(p: &BiForm, q: &BiForm) -> Result<Poly> {
    if p.degree() != q.degree() {
        return Err(Error::domain(format!(
            "resultant needs equal degrees, got {} and {}",
            p.degree(),
            q.degree()
        )));
    }
    let d = p.degree();
    let n = 2 * d;
    let mut m = vec![vec![Poly::zero(); n]; n];
    for i in 0..d {
        for (j, c) in p.coeffs().iter().enumerate() {
            m[i][i + j] = c.clone();
        }
        for (j, c) in q.coeffs().iter().enumerate() {
            m[d + i][i + j] = c.clone();
        }
    }
    bareiss_det(m)
}

/// Fraction-free determinant over ℚ[t]; row swaps flip the sign, a fully zero
/// pivot column short-circuits to 0.
fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Result<Poly> {
    let n = m.len();
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut negated = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(Poly::zero());
            };
            m.swap(k, r);
            negated = !negated;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev)?;
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negated { -&det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::from_ints(v)
    }

    fn c(n: i64) -> Poly {
        Poly::from_ints(&[n])
    }

    /// Independent oracle: cofactor expansion along the first row.
    fn cofactor_det(m: &[Vec<Poly>]) -> Poly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Poly::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Poly>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn res_x2_y2_is_one() {
        let pf = BiForm::new(2, vec![c(1), c(0), c(0)]).unwrap();
        let qf = BiForm::new(2, vec![c(0), c(0), c(1)]).unwrap();
        assert_eq!(resultant_forms(&pf, &qf).unwrap(), Poly::one());
    }

    #[test]
    fn res_quadratic_family_lift() {
        // (x² + t y², y²)
        let pf = BiForm::new(2, vec![c(1), c(0), p(&[0, 1])]).unwrap();
        let qf = BiForm::new(2, vec![c(0), c(0), c(1)]).unwrap();
        assert_eq!(resultant_forms(&pf, &qf).unwrap(), Poly::one());
    }

    #[test]
    fn res_flipped_quadratic_lift() {
        // (s·x² + y², s·y²) — resultant s⁴
        let s = p(&[0, 1]);
        let pf = BiForm::new(2, vec![s.clone(), c(0), c(1)]).unwrap();
        let qf = BiForm::new(2, vec![c(0), c(0), s]).unwrap();
        assert_eq!(
            resultant_forms(&pf, &qf).unwrap(),
            p(&[0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn bareiss_matches_cofactor_oracle() {
        let pf = BiForm::new(2, vec![p(&[1, 2]), p(&[0, 0, 3]), p(&[-1, 1])]).unwrap();
        let qf = BiForm::new(2, vec![p(&[2]), p(&[1, -1]), p(&[0, 5])]).unwrap();
        let d = pf.degree();
        let n = 2 * d;
        let mut m = vec![vec![Poly::zero(); n]; n];
        for i in 0..d {
            for (j, cc) in pf.coeffs().iter().enumerate() {
                m[i][i + j] = cc.clone();
            }
            for (j, cc) in qf.coeffs().iter().enumerate() {
                m[d + i][i + j] = cc.clone();
            }
        }
        assert_eq!(resultant_forms(&pf, &qf).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn res_scaling_multiplicativity() {
        // Res(P, c·Q) = c^d Res(P, Q) for constant c
        let pf = BiForm::new(2, vec![c(1), p(&[0, 2]), p(&[3, 1])]).unwrap();
        let qf = BiForm::new(2, vec![p(&[1, 1]), c(4), c(1)]).unwrap();
        let base = resultant_forms(&pf, &qf).unwrap();
        let scaled = qf.map_coeffs(|cc| cc.mul_rat(&crate::rational::rat_int(5))).unwrap();
        assert_eq!(
            resultant_forms(&pf, &scaled).unwrap(),
            base.mul_rat(&crate::rational::rat_int(25))
        );
    }

    #[test]
    fn shared_factor_gives_zero() {
        // P = x·y, Q = y² share the factor y
        let pf = BiForm::new(2, vec![c(0), c(1), c(0)]).unwrap();
        let qf = BiForm::new(2, vec![c(0), c(0), c(1)]).unwrap();
        assert!(resultant_forms(&pf, &qf).unwrap().is_zero());
    }

    #[test]
    fn eval_poly_substitutes() {
        // x² + t y² at (t, 1+t): t² + t(1+t)² = t³ + 3t² + t... check directly
        let pf = BiForm::new(2, vec![c(1), c(0), p(&[0, 1])]).unwrap();
        let v = pf.eval_poly(&p(&[0, 1]), &p(&[1, 1]));
        let expect = &(&p(&[0, 1]) * &p(&[0, 1]))
            + &(&p(&[0, 1]) * &(&p(&[1, 1]) * &p(&[1, 1])));
        assert_eq!(v, expect);
        assert_eq!(pf.eval_poly_trunc(&p(&[0, 1]), &p(&[1, 1]), 2), expect.truncated(2));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let pf = BiForm::new(2, vec![c(1), c(0), c(0)]).unwrap();
        let qf = BiForm::new(3, vec![c(0), c(0), c(0), c(1)]).unwrap();
        assert!(resultant_forms(&pf, &qf).is_err());
    }
}
