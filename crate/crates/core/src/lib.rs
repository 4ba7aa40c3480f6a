//! heightlab — exact and numeric tools for one-parameter families of
//! rational maps f_t : ℙ¹ → ℙ¹ with coefficients in ℚ(t).
//!
//! The exact layer (big-rational polynomials, resultants, orbits) certifies
//! algebraic statements: canonical-height enclosures with proved error
//! radii, preperiodicity via exact cycle detection, locations and orders of
//! degenerate parameters. The numeric layer (f64 escape rates, parameter
//! grids, root finding) drives the analytic experiments: degeneration
//! diagnostics near a bad fiber and activity/density pictures in parameter
//! space. Nothing numeric ever feeds an exact verdict; candidate roots are
//! re-verified with rational arithmetic before they are reported as such.

pub mod bifurcation;
pub mod biform;
pub mod cli;
pub mod degeneration;
pub mod dynamics;
pub mod error;
pub mod family;
pub mod numeric;
pub mod output;
pub mod parse;
pub mod point;
pub mod poly;
pub mod rational;
pub mod roots;

pub use bifurcation::{
    activity_map, density_experiment, preperiodic_equation, preperiodic_parameters, ActivityMap,
    DensityEntry, DensityReport, ParamGrid, PreperiodicEquation, RootSet, VerifiedRoot,
};
pub use biform::{resultant_forms, BiForm};
pub use degeneration::{
    escape_grid, homogeneous_escape_rate, lemma_bound_check, order_sequence,
    order_sequence_restarted, slow_growth_diagnostic, EscapeGrid, GridSpec, MarkedLift,
    OrderSequence,
};
pub use dynamics::{
    canonical_height, classify, constant_tail_certificate, degree_sequence, orbit, Classification,
    HeightEnclosure, IsotrivialityCertificate, Orbit,
};
pub use error::{Error, Result};
pub use family::{
    apply, degenerate_places, flip, make_family, projectively_equal, shift, Place, PlaceReport,
    PlaceValue, RationalMapFamily,
};
pub use parse::{parse_family, parse_point, print_family, print_point};
pub use point::{proj_normalize, ProjPointK};
pub use poly::{poly_gcd, squarefree_factorization, Poly};
pub use rational::{rat, rat_int, Rat};
pub use roots::{complex_roots, RootList};

#[cfg(test)]
pub(crate) mod testkit {
    //! Fixtures shared across unit tests.

    use crate::biform::BiForm;
    use crate::family::{make_family, RationalMapFamily};
    use crate::point::{proj_normalize, ProjPointK};
    use crate::poly::Poly;
    use crate::rational::rat;

    /// Lift of z² + t: (x² + t·y², y²).
    pub fn quadratic() -> RationalMapFamily {
        let c = |n: i64| Poly::from_ints(&[n]);
        let pf = BiForm::new(2, vec![c(1), c(0), Poly::from_ints(&[0, 1])]).unwrap();
        let qf = BiForm::new(2, vec![c(0), c(0), c(1)]).unwrap();
        make_family(pf, qf).unwrap()
    }

    /// Lattès lift of (z² − t)²/(4z(z−1)(z−t)).
    pub fn lattes() -> RationalMapFamily {
        let p = |v: &[i64]| Poly::from_ints(v);
        let pf = BiForm::new(
            4,
            vec![p(&[1]), p(&[0]), p(&[0, -2]), p(&[0]), p(&[0, 0, 1])],
        )
        .unwrap();
        let qf = BiForm::new(
            4,
            vec![p(&[0]), p(&[4]), p(&[-4, -4]), p(&[0, 4]), p(&[0])],
        )
        .unwrap();
        make_family(pf, qf).unwrap()
    }

    /// Constant family z²: (x², y²).
    pub fn squaring() -> RationalMapFamily {
        let c = |n: i64| Poly::from_ints(&[n]);
        let pf = BiForm::new(2, vec![c(1), c(0), c(0)]).unwrap();
        let qf = BiForm::new(2, vec![c(0), c(0), c(1)]).unwrap();
        make_family(pf, qf).unwrap()
    }

    /// Point (a1 : a2) from ascending integer coefficients.
    pub fn pt(a1: &[i64], a2: &[i64]) -> ProjPointK {
        proj_normalize(Poly::from_ints(a1), Poly::from_ints(a2)).unwrap()
    }

    /// Constant point n/d.
    pub fn pt_rat(n: i64, d: i64) -> ProjPointK {
        ProjPointK::from_rat(rat(n, d))
    }
}
