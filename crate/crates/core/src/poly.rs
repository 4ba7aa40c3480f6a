//! Dense univariate polynomials in the parameter t over exact rationals.
//!
//! Degrees reached by orbit computations go into the thousands (degree
//! sequences grow like d^n), so multiplication switches from schoolbook to
//! Karatsuba splitting above a small threshold. The gcd is a primitive
//! Euclidean remainder sequence: every remainder is rescaled to coprime
//! integer coefficients, which keeps intermediate growth polynomial.

use std::fmt;

use num::{BigInt, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_bits, Rat};

/// Schoolbook multiplication below this operand length, Karatsuba above.
const KARATSUBA_THRESHOLD: usize = 32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    /// Coefficients, index i = coefficient of t^i; no trailing zeros.
    c: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The variable t itself.
    pub fn t() -> Self {
        Poly {
            c: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn constant(r: Rat) -> Self {
        Poly::from_coeffs(vec![r])
    }

    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Poly::from_coeffs(v.iter().map(|&n| Rat::from_integer(BigInt::from(n))).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    /// Coefficient of t^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lc(&self) -> Option<&Rat> {
        self.c.last()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, v)| v * Rat::from_integer(BigInt::from(i)))
            .collect();
        Poly::from_coeffs(c)
    }

    pub fn mul_rat(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    /// Multiply by t^j (exact coefficient shift).
    pub fn mul_tpow(&self, j: usize) -> Poly {
        if self.is_zero() || j == 0 {
            return self.clone();
        }
        let mut c = vec![Rat::zero(); j];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Order of vanishing at t = 0; None for the zero polynomial.
    pub fn ord0(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    /// Split off the t-power: (p / t^ord, ord). Zero polynomial passes through.
    pub fn strip_tpow(&self) -> (Poly, usize) {
        match self.ord0() {
            None => (Poly::zero(), 0),
            Some(j) => (Poly { c: self.c[j..].to_vec() }, j),
        }
    }

    /// Multiplicity of the root c (0 when p(c) ≠ 0). Errors on the zero
    /// polynomial, where the order is undefined.
    pub fn ord_at(&self, at: &Rat) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::domain("ord_at of the zero polynomial"));
        }
        if at.is_zero() {
            return Ok(self.ord0().unwrap());
        }
        let mut p = self.c.clone();
        let mut ord = 0usize;
        loop {
            // Synthetic division by (t - at): quotient in place, remainder out.
            let mut acc = Rat::zero();
            for v in p.iter().rev() {
                acc = acc * at + v;
            }
            if !acc.is_zero() {
                return Ok(ord);
            }
            let mut q = Vec::with_capacity(p.len() - 1);
            let mut carry = Rat::zero();
            for v in p.iter().rev() {
                carry = carry * at + v;
                q.push(carry.clone());
            }
            q.pop(); // drops the remainder slot
            q.reverse();
            p = q;
            ord += 1;
            if p.is_empty() {
                return Ok(ord);
            }
        }
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.deg().ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        if self.deg().map_or(true, |n| n < dd) {
            return Ok((Poly::zero(), self.clone()));
        }
        let n = self.deg().unwrap();
        let lc = d.lc().unwrap().clone();
        let mut r = self.c.clone();
        let mut q = vec![Rat::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let lead = std::mem::replace(&mut r[k + dd], Rat::zero());
            if lead.is_zero() {
                continue;
            }
            let f = lead / &lc;
            for (i, dc) in d.c[..dd].iter().enumerate() {
                if !dc.is_zero() {
                    let prod = dc * &f;
                    r[k + i] -= prod;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    /// Division known to be exact; a nonzero remainder is a caller bug.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::internal("inexact polynomial division"));
        }
        Ok(q)
    }

    /// Positive rational content (gcd of numerators over lcm of denominators);
    /// zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for v in &self.c {
            num = num.gcd(v.numer());
            den = den.lcm(v.denom());
        }
        if num.is_zero() {
            Rat::zero()
        } else {
            Rat::new(num, den)
        }
    }

    /// Divide out the positive content: coprime integer coefficients, sign kept.
    pub fn primitive(&self) -> Poly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        let inv = c.recip();
        self.mul_rat(&inv)
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.clone().recip();
                self.mul_rat(&inv)
            }
        }
    }

    /// Monic gcd. gcd(p, 0) := p monic, so images with one identically-zero
    /// coordinate still normalize to a well-defined point.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            if r.is_zero() {
                return b.monic();
            }
            a = b;
            b = r.primitive();
        }
    }

    pub fn pow(&self, mut k: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Taylor shift t ↦ t + t0 via Horner recomposition.
    pub fn shift_var(&self, t0: &Rat) -> Poly {
        let mut acc = Poly::zero();
        for v in self.c.iter().rev() {
            // acc = acc·(t + t0) + v
            let shifted = acc.mul_tpow(1) + acc.mul_rat(t0);
            acc = shifted + Poly::constant(v.clone());
        }
        acc
    }

    /// s^e · p(1/s): coefficient reversal padded to formal degree e.
    /// Requires deg p ≤ e.
    pub fn reversed_to(&self, e: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let d = self.deg().unwrap();
        assert!(d <= e, "reversal target below degree");
        let mut c = vec![Rat::zero(); e + 1];
        for (i, v) in self.c.iter().enumerate() {
            c[e - i] = v.clone();
        }
        Poly::from_coeffs(c)
    }

    /// Product truncated to degree < prec (power-series mode).
    pub fn mul_trunc(&self, other: &Poly, prec: usize) -> Poly {
        if self.is_zero() || other.is_zero() || prec == 0 {
            return Poly::zero();
        }
        let la = self.c.len().min(prec);
        let lb = other.c.len().min(prec);
        let out_len = (la + lb - 1).min(prec);
        let mut out = vec![Rat::zero(); out_len];
        for i in 0..la {
            if self.c[i].is_zero() {
                continue;
            }
            let jmax = lb.min(out_len - i);
            for j in 0..jmax {
                if !other.c[j].is_zero() {
                    out[i + j] += &self.c[i] * &other.c[j];
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn truncated(&self, prec: usize) -> Poly {
        Poly::from_coeffs(self.c.iter().take(prec).cloned().collect())
    }

    /// Number of stored coefficients (the budget unit for orbit growth).
    pub fn coeff_count(&self) -> usize {
        self.c.len()
    }

    /// Largest single-coefficient bit size (numerator + denominator).
    pub fn max_coeff_bits(&self) -> u64 {
        self.c.iter().map(rat_bits).max().unwrap_or(0)
    }
}

/// Integer coefficients and positive rational content with coeffs·content
/// equal to the input slice. All divisions are exact BigInt divisions.
fn int_parts(c: &[Rat]) -> (Vec<BigInt>, Rat) {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for v in c {
        g = g.gcd(v.numer());
        l = l.lcm(v.denom());
    }
    let ints = c
        .iter()
        .map(|v| v.numer() * (&l / v.denom()) / &g)
        .collect();
    (ints, Rat::new(g, l))
}

fn int_add_assign(dst: &mut Vec<BigInt>, src: &[BigInt], offset: usize) {
    if dst.len() < offset + src.len() {
        dst.resize(offset + src.len(), BigInt::zero());
    }
    for (i, v) in src.iter().enumerate() {
        dst[offset + i] += v;
    }
}

fn int_slice_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

fn int_mul_school(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn int_mul_kara(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return int_mul_school(a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = int_mul_kara(a0, b0);
    let z2 = if a1.is_empty() || b1.is_empty() {
        Vec::new()
    } else {
        int_mul_kara(a1, b1)
    };
    let asum = int_slice_add(a0, a1);
    let bsum = int_slice_add(b0, b1);
    let mut z1 = int_mul_kara(&asum, &bsum);
    for (i, v) in z0.iter().enumerate() {
        z1[i] -= v;
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] -= v;
    }
    let mut out = z0;
    int_add_assign(&mut out, &z1, m);
    int_add_assign(&mut out, &z2, 2 * m);
    out
}

fn slice_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::from_coeffs(slice_add(&self.c, &rhs.c))
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut c = self.c.clone();
        if c.len() < rhs.c.len() {
            c.resize(rhs.c.len(), Rat::zero());
        }
        for (i, v) in rhs.c.iter().enumerate() {
            c[i] -= v;
        }
        Poly::from_coeffs(c)
    }
}

impl std::ops::Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.iter().map(|v| -v).collect(),
        }
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // Convolve the primitive integer parts — BigInt terms accumulate
        // without the per-operation gcd BigRational arithmetic pays — and
        // restore the joint content with one normalization per coefficient.
        let (ia, ca) = int_parts(&self.c);
        let (ib, cb) = int_parts(&rhs.c);
        let scale = ca * cb;
        let c = int_mul_kara(&ia, &ib)
            .into_iter()
            .map(|z| Rat::new(z * scale.numer(), scale.denom().clone()))
            .collect();
        Poly::from_coeffs(c)
    }
}

impl std::ops::Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let term = term_string(v, i);
            if first {
                write!(f, "{term}")?;
                first = false;
            } else if let Some(stripped) = term.strip_prefix('-') {
                write!(f, " - {stripped}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn term_string(v: &Rat, power: usize) -> String {
    let coeff = crate::rational::fmt_rat(v);
    match power {
        0 => coeff,
        _ => {
            let var = if power == 1 {
                "t".to_string()
            } else {
                format!("t^{power}")
            };
            if v.is_one() {
                var
            } else if (-v).is_one() {
                format!("-{var}")
            } else {
                format!("{coeff}*{var}")
            }
        }
    }
}

/// Monic greatest common divisor; errors when both inputs are zero.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::domain("gcd of two zero polynomials"));
    }
    Ok(p.gcd(q))
}

/// Yun's algorithm: pairwise-coprime squarefree factors with multiplicities;
/// the product of factor^mult equals p up to a constant.
pub fn squarefree_factorization(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    if p.is_zero() {
        return Err(Error::domain("squarefree factorization of the zero polynomial"));
    }
    let f = p.monic();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let g = f.gcd(&df);
    let mut c = f.div_exact(&g)?;
    let mut d = &df.div_exact(&g)? - &c.derivative();
    let mut out = Vec::new();
    let mut mult = 1usize;
    while !c.is_constant() {
        let p_i = c.gcd(&d);
        c = c.div_exact(&p_i)?;
        d = &d.div_exact(&p_i)? - &c.derivative();
        if !p_i.is_constant() {
            out.push((p_i, mult));
        }
        mult += 1;
    }
    Ok(out)
}
