//! Exact rationals: the coefficient field of everything algebraic.
//!
//! `Rat` is a reduced big-integer fraction with positive denominator. The
//! helpers here cover what the rest of the crate needs beyond plain
//! arithmetic: overflow-proof conversion to f64, canonical "p/q" printing,
//! and reconstruction of a rational from a float via continued fractions
//! (used to recognize exact roots of resultants).

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical text form: plain integer when the denominator is 1, else "p/q".
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// 2^k as f64 for any integer k, saturating to 0 / ±inf outside the exponent
/// range. Split in two factors so subnormals round through gracefully.
fn pow2(k: i64) -> f64 {
    if k >= 1024 {
        return f64::INFINITY;
    }
    if k <= -1200 {
        return 0.0;
    }
    let half = k / 2;
    let rest = k - half;
    f64::from_bits(((1023 + half) as u64) << 52) * f64::from_bits(((1023 + rest) as u64) << 52)
}

fn bigint_top_f64(x: &BigInt) -> (f64, i64) {
    // |x| = mantissa * 2^shift with mantissa < 2^63 held exactly in f64 range.
    let bits = x.bits() as i64;
    let shift = (bits - 63).max(0);
    let top: BigInt = x >> (shift as usize);
    let (sign, digits) = top.to_u64_digits();
    let mut m = digits.first().copied().unwrap_or(0) as f64;
    if sign == Sign::Minus {
        m = -m;
    }
    (m, shift)
}

/// Correct-magnitude f64 conversion that cannot produce inf/inf = NaN no
/// matter how large numerator and denominator are.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (nm, ns) = bigint_top_f64(r.numer());
    let (dm, ds) = bigint_top_f64(r.denom());
    (nm / dm) * pow2(ns - ds)
}

/// log2 |r| to within one bit; 0 input yields -inf. Cheap on huge operands.
pub fn rat_log2_abs(r: &Rat) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (nm, ns) = bigint_top_f64(r.numer());
    let (dm, ds) = bigint_top_f64(r.denom());
    (nm.abs().log2() + ns as f64) - (dm.abs().log2() + ds as f64)
}

/// Continued-fraction reconstruction: the best rational approximation to `x`
/// with denominator ≤ `max_den`, or None for non-finite input.
pub fn rat_from_f64_cf(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut v = x.abs();
    // Convergents p/q of the continued fraction of v.
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let limit = BigInt::from(max_den);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > limit {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1.is_zero() {
        return None;
    }
    let mut out = Rat::new(p1, q1);
    if negative {
        out = -out;
    }
    Some(out)
}

/// Total bit size of the reduced fraction, the unit of the orbit size guard.
pub fn rat_bits(r: &Rat) -> u64 {
    r.numer().bits() + r.denom().bits()
}

/// Nonnegative gcd on ℚ: gcd of numerators over lcm of denominators, the
/// content convention extended from ℤ. rat_gcd(0, b) = |b|.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    use num::Integer;
    if a.is_zero() {
        return b.clone().abs();
    }
    if b.is_zero() {
        return a.clone().abs();
    }
    Rat::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}
