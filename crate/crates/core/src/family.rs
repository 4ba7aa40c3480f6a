//! Algebraic families F_t = (P_t, Q_t) of homogeneous degree-d self-maps.
//!
//! Construction canonicalizes the pair: the joint polynomial gcd of all
//! coefficients is removed (so no parameter kills every coefficient at once),
//! then a rational scale and a sign are fixed so equal maps get equal
//! representations. The cached resultant drives both the degenerate-place
//! report and the cancellation shortcut in `apply`: the gcd removed when
//! normalizing an image always divides the resultant, so gcds are taken
//! against the (small) resultant instead of the (large) image coordinates.

use num::complex::Complex64;
use num::{One, Signed, Zero};

use crate::biform::{resultant_forms, BiForm};
use crate::error::{Error, Result};
use crate::point::ProjPointK;
use crate::poly::{squarefree_factorization, Poly};
use crate::rational::{rat_from_f64_cf, rat_gcd, Rat};
use crate::roots::complex_roots;

#[derive(Clone, PartialEq, Debug)]
pub struct RationalMapFamily {
    d: usize,
    p: BiForm,
    q: BiForm,
    res: Poly,
    coeff_degree: usize,
    q_infinity: usize,
    d_total: usize,
}

#[derive(Clone, Debug)]
pub enum PlaceValue {
    Exact(Rat),
    Numeric(Complex64),
}

#[derive(Clone, Debug)]
pub struct Place {
    pub value: PlaceValue,
    /// Multiplicity of the place as a root of the resultant.
    pub q: usize,
}

#[derive(Clone, Debug)]
pub struct PlaceReport {
    pub finite_places: Vec<Place>,
    pub q_infinity: usize,
    pub d_total: usize,
}

impl RationalMapFamily {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> &BiForm {
        &self.p
    }

    pub fn q(&self) -> &BiForm {
        &self.q
    }

    pub fn res(&self) -> &Poly {
        &self.res
    }

    pub fn coeff_degree(&self) -> usize {
        self.coeff_degree
    }

    pub fn q_infinity(&self) -> usize {
        self.q_infinity
    }

    /// deg(res) + q_∞: the uniform per-step degree-change bound.
    pub fn d_total(&self) -> usize {
        self.d_total
    }
}

/// Validate and canonicalize a lift; compute its resultant and the local data
/// at t = ∞ (via the flipped model).
pub fn make_family(p: BiForm, q: BiForm) -> Result<RationalMapFamily> {
    if p.degree() != q.degree() {
        return Err(Error::domain(format!(
            "coordinate forms have degrees {} and {}",
            p.degree(),
            q.degree()
        )));
    }
    let d = p.degree();
    if d < 2 {
        return Err(Error::domain(format!("family degree must be at least 2, got {d}")));
    }
    let (pc, qc) = canonicalize(p.coeffs().to_vec(), q.coeffs().to_vec())?;
    let p = BiForm::new(d, pc)?;
    let q = BiForm::new(d, qc)?;
    let res = resultant_forms(&p, &q)?;
    if res.is_zero() {
        return Err(Error::domain(
            "degenerate family: the coordinate forms share a factor identically",
        ));
    }
    let coeff_degree = p.coeff_degree().max(q.coeff_degree());
    let q_infinity = q_infinity_of(p.coeffs(), q.coeffs(), d, coeff_degree)?;
    let d_total = res.deg().unwrap() + q_infinity;
    Ok(RationalMapFamily {
        d,
        p,
        q,
        res,
        coeff_degree,
        q_infinity,
        d_total,
    })
}

/// Apply the family to a point: image normalized, plus the monic gcd that was
/// cancelled (it divides the resultant up to a constant).
pub fn apply(f: &RationalMapFamily, pt: &ProjPointK) -> Result<(ProjPointK, Poly)> {
    let b1 = f.p.eval_poly(pt.a1(), pt.a2());
    let b2 = f.q.eval_poly(pt.a1(), pt.a2());
    if b1.is_zero() && b2.is_zero() {
        return Err(Error::internal(
            "image (0,0) of a valid point: resultant bookkeeping violated",
        ));
    }
    let cancelled = if f.res.is_constant() {
        Poly::one()
    } else {
        // gcd(B1,B2) divides res, so gcd(gcd(B1,res), gcd(B2,res)) equals it.
        f.res.gcd(&b1).gcd(&f.res.gcd(&b2))
    };
    let image = if cancelled.is_constant() {
        ProjPointK::from_coprime(b1, b2)
    } else {
        ProjPointK::from_coprime(b1.div_exact(&cancelled)?, b2.div_exact(&cancelled)?)
    };
    Ok((image, cancelled))
}

/// Recompose the family under t ↦ t + t0. No re-canonicalization happens, so
/// the resultant transports exactly: res_shifted(t) = res(t + t0).
pub fn shift(f: &RationalMapFamily, t0: &Rat) -> Result<RationalMapFamily> {
    let pc: Vec<Poly> = f.p.coeffs().iter().map(|c| c.shift_var(t0)).collect();
    let qc: Vec<Poly> = f.q.coeffs().iter().map(|c| c.shift_var(t0)).collect();
    let p = BiForm::new(f.d, pc)?;
    let q = BiForm::new(f.d, qc)?;
    let res = f.res.shift_var(t0);
    let coeff_degree = p.coeff_degree().max(q.coeff_degree());
    let q_infinity = q_infinity_of(p.coeffs(), q.coeffs(), f.d, coeff_degree)?;
    let d_total = res.deg().unwrap() + q_infinity;
    Ok(RationalMapFamily {
        d: f.d,
        p,
        q,
        res,
        coeff_degree,
        q_infinity,
        d_total,
    })
}

/// The model at t = ∞: substitute t = 1/s and clear denominators with s^e,
/// then canonicalize. Returns a family in the parameter s.
pub fn flip(f: &RationalMapFamily) -> Result<RationalMapFamily> {
    let e = f.coeff_degree;
    let pc: Vec<Poly> = f.p.coeffs().iter().map(|c| c.reversed_to(e)).collect();
    let qc: Vec<Poly> = f.q.coeffs().iter().map(|c| c.reversed_to(e)).collect();
    make_family(BiForm::new(f.d, pc)?, BiForm::new(f.d, qc)?)
}

/// Degenerate places: roots of the resultant (exact rationals recovered where
/// possible, complex doubles otherwise) plus the order at t = ∞.
pub fn degenerate_places(f: &RationalMapFamily) -> Result<PlaceReport> {
    let mut finite_places = Vec::new();
    if !f.res.is_constant() {
        for (factor, mult) in squarefree_factorization(&f.res)? {
            if factor.deg() == Some(1) {
                let root = -factor.coeff(0) / factor.lc().unwrap();
                finite_places.push(Place {
                    value: PlaceValue::Exact(root),
                    q: mult,
                });
                continue;
            }
            let list = complex_roots(&factor, 1e-10)?;
            for (z, _) in list.roots {
                let value = exactify_root(&factor, z);
                finite_places.push(Place { value, q: mult });
            }
        }
        // Each squarefree-factor root is simple, so multiplicities must tile
        // the resultant degree exactly.
        let total: usize = finite_places.iter().map(|pl| pl.q).sum();
        let expect = f.res.deg().unwrap();
        if total != expect {
            return Err(Error::internal(format!(
                "degenerate-place multiplicities sum to {total}, resultant degree is {expect}"
            )));
        }
    }
    Ok(PlaceReport {
        finite_places,
        q_infinity: f.q_infinity,
        d_total: f.d_total,
    })
}

/// Two families induce the same map ℙ¹→ℙ¹ at every parameter iff the
/// cross-products of their coordinate forms agree.
pub fn projectively_equal(a: &RationalMapFamily, b: &RationalMapFamily) -> bool {
    if a.d != b.d {
        return false;
    }
    form_product(a.p.coeffs(), b.q.coeffs()) == form_product(b.p.coeffs(), a.q.coeffs())
}

fn form_product(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// Try to recognize a numeric root as an exact rational root of `factor`.
fn exactify_root(factor: &Poly, z: Complex64) -> PlaceValue {
    if z.im.abs() <= 1e-9 {
        if let Some(cand) = rat_from_f64_cf(z.re, 1_000_000_000_000) {
            if factor.eval(&cand).is_zero() {
                return PlaceValue::Exact(cand);
            }
        }
    }
    PlaceValue::Numeric(z)
}

/// Joint canonical form: divide out the polynomial gcd of all coefficients,
/// then the rational content, then fix the sign of the first nonzero
/// coefficient's leading term.
fn canonicalize(mut pc: Vec<Poly>, mut qc: Vec<Poly>) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let mut g = Poly::zero();
    for c in pc.iter().chain(qc.iter()) {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_constant() {
                break;
            }
        }
    }
    if g.is_zero() {
        return Err(Error::domain("identically zero family"));
    }
    if !g.is_constant() {
        for c in pc.iter_mut().chain(qc.iter_mut()) {
            *c = c.div_exact(&g)?;
        }
    }
    let mut content = Rat::zero();
    for c in pc.iter().chain(qc.iter()) {
        content = rat_gcd(&content, &c.content());
        if content.is_one() {
            break;
        }
    }
    if !content.is_zero() && !content.is_one() {
        let inv = content.recip();
        for c in pc.iter_mut().chain(qc.iter_mut()) {
            *c = c.mul_rat(&inv);
        }
    }
    let negative = pc
        .iter()
        .chain(qc.iter())
        .find(|c| !c.is_zero())
        .map_or(false, |c| c.lc().unwrap().is_negative());
    if negative {
        for c in pc.iter_mut().chain(qc.iter_mut()) {
            *c = -&*c;
        }
    }
    Ok((pc, qc))
}

/// ord_{s=0} of the flipped model's resultant, computed from raw coefficient
/// lists so construction never recurses through make_family.
fn q_infinity_of(pc: &[Poly], qc: &[Poly], d: usize, e: usize) -> Result<usize> {
    let fp: Vec<Poly> = pc.iter().map(|c| c.reversed_to(e)).collect();
    let fq: Vec<Poly> = qc.iter().map(|c| c.reversed_to(e)).collect();
    let (fp, fq) = canonicalize(fp, fq)?;
    let res_f = resultant_forms(&BiForm::new(d, fp)?, &BiForm::new(d, fq)?)?;
    if res_f.is_zero() {
        return Err(Error::internal(
            "flipped model degenerate although the family is not",
        ));
    }
    res_f.ord_at(&Rat::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::testkit::{lattes, quadratic};

    fn p(v: &[i64]) -> Poly {
        Poly::from_ints(v)
    }

    fn c(n: i64) -> Poly {
        Poly::from_ints(&[n])
    }

    #[test]
    fn quadratic_family_accepted() {
        let f = quadratic();
        assert_eq!(f.d(), 2);
        assert_eq!(f.res(), &Poly::one());
        assert_eq!(f.coeff_degree(), 1);
        assert_eq!(f.q_infinity(), 4);
        assert_eq!(f.d_total(), 4);
    }

    #[test]
    fn lattes_family_accepted() {
        let f = lattes();
        assert_eq!(f.d(), 4);
        assert!(!f.res().is_zero());
    }

    #[test]
    fn shared_factor_rejected() {
        // P = xy, Q = y²
        let pf = BiForm::new(2, vec![c(0), c(1), c(0)]).unwrap();
        let qf = BiForm::new(2, vec![c(0), c(0), c(1)]).unwrap();
        assert!(make_family(pf, qf).is_err());
    }

    #[test]
    fn apply_infinity_fixed() {
        let f = quadratic();
        let (img, cancelled) = apply(&f, &ProjPointK::infinity()).unwrap();
        assert!(img.is_infinity());
        assert_eq!(cancelled, Poly::one());
    }

    #[test]
    fn apply_constant_point() {
        let f = quadratic();
        let a = ProjPointK::from_rat(rat_int(3));
        let (img, cancelled) = apply(&f, &a).unwrap();
        assert_eq!(img.a1(), &p(&[9, 1])); // 3² + t
        assert_eq!(img.a2(), &Poly::one());
        assert_eq!(cancelled, Poly::one());
    }

    #[test]
    fn lattes_zero_maps_to_infinity_with_t_squared() {
        let f = lattes();
        let a = ProjPointK::from_rat(rat_int(0));
        let (img, cancelled) = apply(&f, &a).unwrap();
        assert!(img.is_infinity());
        assert_eq!(cancelled, p(&[0, 0, 1])); // t²
    }

    #[test]
    fn lattes_one_and_t_map_to_infinity() {
        let f = lattes();
        let (img1, c1) = apply(&f, &ProjPointK::from_rat(rat_int(1))).unwrap();
        assert!(img1.is_infinity());
        assert_eq!(c1, p(&[1, -2, 1])); // (t−1)²
        let t_pt = crate::point::proj_normalize(p(&[0, 1]), Poly::one()).unwrap();
        let (img2, c2) = apply(&f, &t_pt).unwrap();
        assert!(img2.is_infinity());
        assert_eq!(c2, &p(&[0, 0, 1]) * &p(&[1, -2, 1])); // t²(t−1)²
    }

    #[test]
    fn cancelled_divides_res() {
        let f = lattes();
        for a in [
            ProjPointK::from_rat(rat_int(0)),
            ProjPointK::from_rat(rat_int(1)),
            ProjPointK::from_rat(rat(5, 3)),
            crate::point::proj_normalize(p(&[1, 0, 2]), p(&[0, 1])).unwrap(),
        ] {
            let (_, cancelled) = apply(&f, &a).unwrap();
            if !cancelled.is_constant() {
                assert!(f.res().div_rem(&cancelled).unwrap().1.is_zero());
            }
        }
    }

    #[test]
    fn shift_transports_resultant_exactly() {
        let f = lattes();
        let s = shift(&f, &rat_int(1)).unwrap();
        assert_eq!(s.res(), &f.res().shift_var(&rat_int(1)));
        assert_eq!(
            s.res().ord_at(&rat_int(0)).unwrap(),
            f.res().ord_at(&rat_int(1)).unwrap()
        );
        let q = quadratic();
        let qs = shift(&q, &rat(-7, 2)).unwrap();
        assert!(qs.res().is_constant());
        let id = shift(&q, &rat_int(0)).unwrap();
        assert_eq!(id, q);
    }

    #[test]
    fn flip_quadratic() {
        let f = quadratic();
        let g = flip(&f).unwrap();
        // (s·x² + y², s·y²), res = s⁴
        assert_eq!(g.p().coeffs(), &[p(&[0, 1]), c(0), c(1)]);
        assert_eq!(g.q().coeffs(), &[c(0), c(0), p(&[0, 1])]);
        assert_eq!(g.res(), &p(&[0, 0, 0, 0, 1]));
        let gg = flip(&g).unwrap();
        assert!(projectively_equal(&gg, &f));
    }

    #[test]
    fn flip_constant_family_trivial() {
        // z²: (x², y²), no t anywhere
        let pf = BiForm::new(2, vec![c(1), c(0), c(0)]).unwrap();
        let qf = BiForm::new(2, vec![c(0), c(0), c(1)]).unwrap();
        let f = make_family(pf, qf).unwrap();
        assert_eq!(f.q_infinity(), 0);
        assert_eq!(f.d_total(), 0);
        let g = flip(&f).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn degenerate_places_quadratic_and_lattes() {
        let q = degenerate_places(&quadratic()).unwrap();
        assert!(q.finite_places.is_empty());
        assert_eq!(q.q_infinity, 4);
        assert_eq!(q.d_total, 4);

        let l = degenerate_places(&lattes()).unwrap();
        let mut exact: Vec<Rat> = l
            .finite_places
            .iter()
            .filter_map(|pl| match &pl.value {
                PlaceValue::Exact(r) => Some(r.clone()),
                PlaceValue::Numeric(_) => None,
            })
            .collect();
        exact.sort();
        exact.dedup();
        assert_eq!(exact, vec![rat_int(0), rat_int(1)]);
        assert!(l
            .finite_places
            .iter()
            .all(|pl| matches!(pl.value, PlaceValue::Exact(_))));
    }

    #[test]
    fn canonicalization_scale_invariance() {
        // 3·(x² + t y², y²) scaled by (2t+2) must canonicalize to the same family
        let s = p(&[6, 6]);
        let pf = BiForm::new(2, vec![s.clone(), c(0), &p(&[0, 1]) * &s]).unwrap();
        let qf = BiForm::new(2, vec![c(0), c(0), s]).unwrap();
        assert_eq!(make_family(pf, qf).unwrap(), quadratic());
    }
}
