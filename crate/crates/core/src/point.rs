//! Points of ℙ¹ over ℚ(t) as canonically normalized coprime pairs.
//!
//! The normalization (coprime, leading coefficient 1 on the coordinate of
//! maximal degree, ties broken toward the second coordinate) makes equality
//! of values in ℙ¹(k) the same as structural equality, so orbit-repeat
//! detection can hash points directly.

use std::fmt;

use num::One;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPointK {
    a1: Poly,
    a2: Poly,
}

impl ProjPointK {
    pub fn a1(&self) -> &Poly {
        &self.a1
    }

    pub fn a2(&self) -> &Poly {
        &self.a2
    }

    pub fn infinity() -> Self {
        ProjPointK {
            a1: Poly::one(),
            a2: Poly::zero(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        ProjPointK {
            a1: Poly::constant(r),
            a2: Poly::one(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.a2.is_zero()
    }

    /// max(deg a1, deg a2); a zero coordinate is ignored.
    pub fn degree(&self) -> usize {
        self.a1.deg().max(self.a2.deg()).unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// The value as a rational number when the point is a finite constant.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() && !self.is_infinity() {
            Some(self.a1.coeff(0) / self.a2.coeff(0))
        } else {
            None
        }
    }

    /// Internal constructor for pairs already known coprime; applies only the
    /// leading-coefficient scaling.
    pub(crate) fn from_coprime(b1: Poly, b2: Poly) -> Self {
        let lead = if b1.deg() > b2.deg() {
            b1.lc().cloned()
        } else {
            b2.lc().cloned()
        };
        let lead = lead.expect("coprime pair cannot be (0,0)");
        if lead.is_one() {
            return ProjPointK { a1: b1, a2: b2 };
        }
        let inv = lead.recip();
        ProjPointK {
            a1: b1.mul_rat(&inv),
            a2: b2.mul_rat(&inv),
        }
    }

    pub fn coeff_count(&self) -> usize {
        self.a1.coeff_count() + self.a2.coeff_count()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.a1.max_coeff_bits().max(self.a2.max_coeff_bits())
    }
}

impl fmt::Display for ProjPointK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.a1, self.a2)
    }
}

impl fmt::Debug for ProjPointK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPointK{self}")
    }
}

/// Cancel the gcd and scale per the canonical-form rule.
pub fn proj_normalize(a1: Poly, a2: Poly) -> Result<ProjPointK> {
    if a1.is_zero() && a2.is_zero() {
        return Err(Error::domain("projective point (0, 0)"));
    }
    let g = a1.gcd(&a2);
    let b1 = a1.div_exact(&g)?;
    let b2 = a2.div_exact(&g)?;
    Ok(ProjPointK::from_coprime(b1, b2))
}
