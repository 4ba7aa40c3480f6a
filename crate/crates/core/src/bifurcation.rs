//! Parameter-space structure of a marked point: activity maps, exact
//! preperiodic-parameter equations, verified root sets, density experiments.
//!
//! Activity — growth of the orbit's parameter derivative — is the numeric
//! surrogate for normality failure. Everything algebraic is exact: the (n, m)
//! collision equation is a cross product of exact orbit lifts, and every
//! numeric root must re-enact its collision dynamically before it is reported
//! as verified.
//!
//! Root finding runs on exact coefficients up to [`DIRECT_DEG_LIMIT`]. Beyond
//! that the coefficient basis is numerically hopeless (the exact integer
//! coefficients span thousands of bits), so the Newton ratio E/E′ is instead
//! evaluated through the renormalized variational orbit recurrence, which is
//! forward-stable and scale-free: the per-step renormalization multiplies all
//! four state components by one scalar, which cancels in the ratio. For
//! cancellation-free families (constant resultant) the iterated lift is the
//! exact equation up to a constant; otherwise extra cancellation roots may
//! appear, and the verification gate sorts them out.

use num::complex::Complex64;
use num::Signed;
use rayon::prelude::*;

use crate::dynamics::orbit;
use crate::error::{Error, Result};
use crate::family::RationalMapFamily;
use crate::numeric::{chordal, PreparedFamily, PreparedPoint, VarState};
use crate::point::ProjPointK;
use crate::poly::Poly;
use crate::roots::{aberth_with, complex_roots, newton_polygon_init};

/// Largest equation degree solved directly from coefficients. The exact
/// squarefree factorization makes the direct path rigorous about
/// multiplicities, but its forward accuracy decays with coefficient growth
/// (measured on the quadratic family: every root verifies at degree 16,
/// several true roots already miss the collision tolerance at degree 32),
/// while the recurrence path stays at machine backward error through degree
/// 128 and beyond.
const DIRECT_DEG_LIMIT: usize = 16;
/// Residual tolerance for direct coefficient root finding.
const DIRECT_ROOT_TOL: f64 = 1e-9;
/// Cluster radius merging nearby iterates into one multiple root.
const CLUSTER_TOL: f64 = 1e-8;
/// Aberth sweep cap for the recurrence-evaluated path.
const ABERTH_SWEEPS: usize = 2000;
/// Default spherical collision tolerance for root verification.
pub const COLLISION_TOL: f64 = 1e-6;
/// Default activity iteration cap.
pub const DEFAULT_ACTIVITY_CAP: usize = 256;
/// Default chart-derivative threshold declaring a pixel active.
pub const DEFAULT_ACTIVITY_THRESHOLD: f64 = 1e12;

/// Axis-aligned parameter rectangle sampled at pixel centers, row-major from
/// the top-left corner (row 0 carries the highest imaginary part).
#[derive(Clone, Debug)]
pub struct ParamGrid {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
    pub width: usize,
    pub height: usize,
}

impl ParamGrid {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64, width: usize, height: usize) -> Result<ParamGrid> {
        if ![x0, y0, x1, y1].iter().all(|v| v.is_finite()) {
            return Err(Error::domain("grid corners must be finite"));
        }
        if !(x0 < x1 && y0 < y1) {
            return Err(Error::domain("grid rectangle is degenerate"));
        }
        if width == 0 || height == 0 {
            return Err(Error::domain("grid resolution must be positive"));
        }
        Ok(ParamGrid { x0, y0, x1, y1, width, height })
    }

    pub fn cells(&self) -> usize {
        self.width * self.height
    }

    pub fn center(&self, row: usize, col: usize) -> Complex64 {
        let re = self.x0 + (self.x1 - self.x0) * (col as f64 + 0.5) / self.width as f64;
        let im = self.y1 - (self.y1 - self.y0) * (row as f64 + 0.5) / self.height as f64;
        Complex64::new(re, im)
    }

    pub fn center_of(&self, idx: usize) -> Complex64 {
        self.center(idx / self.width, idx % self.width)
    }

    pub fn contains(&self, t: Complex64) -> bool {
        self.x0 <= t.re && t.re <= self.x1 && self.y0 <= t.im && t.im <= self.y1
    }
}

#[derive(Clone, Debug)]
pub struct ActivityMap {
    pub grid: ParamGrid,
    /// First iterate whose chart derivative exceeded the threshold; 0 = never.
    pub values: Vec<u32>,
    pub cap: usize,
    pub threshold: f64,
    /// Cells whose iteration produced NaN, row-major ascending.
    pub nan_cells: Vec<usize>,
}

impl ActivityMap {
    pub fn active_count(&self) -> usize {
        self.values.iter().filter(|&&v| v > 0).count()
    }
}

/// Per-pixel first-activity index of the marked point's orbit derivative.
pub fn activity_map(
    f: &RationalMapFamily,
    a: &ProjPointK,
    grid: &ParamGrid,
    cap: usize,
    threshold: f64,
) -> ActivityMap {
    let pf = PreparedFamily::new(f);
    let pp = PreparedPoint::new(a);
    let results: Vec<(u32, bool)> = (0..grid.cells())
        .into_par_iter()
        .map(|idx| {
            let t = grid.center_of(idx);
            let sd = pf.specialize_with_derivative(t);
            let mut vs = pp.var_state(t);
            for i in 1..=cap {
                vs = sd.step(&vs);
                let u = vs.chart_derivative();
                if u.is_nan() {
                    return (0u32, true);
                }
                if u > threshold {
                    return (i as u32, false);
                }
            }
            (0u32, false)
        })
        .collect();
    let mut values = Vec::with_capacity(results.len());
    let mut nan_cells = Vec::new();
    for (idx, (v, bad)) in results.into_iter().enumerate() {
        values.push(v);
        if bad {
            nan_cells.push(idx);
        }
    }
    ActivityMap {
        grid: grid.clone(),
        values,
        cap,
        threshold,
        nan_cells,
    }
}

/// The exact equation whose roots are the parameters where the marked orbit
/// satisfies g_n(t) = g_m(t).
#[derive(Clone, Debug)]
pub struct PreperiodicEquation {
    pub n: usize,
    pub m: usize,
    /// Primitive integer coefficients, positive leading coefficient; zero
    /// exactly when the pair is identically preperiodic with this (n, m).
    pub e: Poly,
    pub identically_zero: bool,
    /// The exact orbit lifts the cross product came from.
    pub gn: ProjPointK,
    pub gm: ProjPointK,
}

pub fn preperiodic_equation(
    f: &RationalMapFamily,
    a: &ProjPointK,
    n: usize,
    m: usize,
) -> Result<PreperiodicEquation> {
    if n <= m {
        return Err(Error::domain("collision equation needs n > m ≥ 0"));
    }
    let orb = orbit(f, a, n)?;
    let missing = || Error::internal("orbit shorter than requested without a cycle");
    let gn = orb.point_at(n).ok_or_else(missing)?.clone();
    let gm = orb.point_at(m).ok_or_else(missing)?.clone();
    let raw = &(gn.a1() * gm.a2()) - &(gm.a1() * gn.a2());
    let identically_zero = raw.is_zero();
    let e = if identically_zero {
        Poly::zero()
    } else {
        let p = raw.primitive();
        if p.lc().is_some_and(Signed::is_negative) {
            -&p
        } else {
            p
        }
    };
    Ok(PreperiodicEquation {
        n,
        m,
        e,
        identically_zero,
        gn,
        gm,
    })
}

/// One parameter where the collision was sought, with the spherical distance
/// its forward orbit actually achieved.
#[derive(Clone, Copy, Debug)]
pub struct VerifiedRoot {
    pub t: Complex64,
    pub multiplicity: usize,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub n: usize,
    pub m: usize,
    /// Collision tolerance the verification gate used.
    pub tol: f64,
    pub equation_degree: usize,
    /// Roots whose forward orbit realizes the (n, m) collision within tol.
    pub verified: Vec<VerifiedRoot>,
    /// Roots the dynamic check could not confirm, with their residuals.
    pub unverified: Vec<VerifiedRoot>,
}

/// Numeric roots of the (n, m) collision equation, each verified by forward
/// iteration at the root in the spherical metric.
pub fn preperiodic_parameters(
    f: &RationalMapFamily,
    a: &ProjPointK,
    n: usize,
    m: usize,
    tol: f64,
) -> Result<RootSet> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::domain("verification tolerance must be positive"));
    }
    let eq = preperiodic_equation(f, a, n, m)?;
    if eq.identically_zero {
        return Err(Error::domain(
            "collision equation vanishes identically: the pair is preperiodic",
        ));
    }
    root_set(f, a, &eq, tol)
}

fn root_set(
    f: &RationalMapFamily,
    a: &ProjPointK,
    eq: &PreperiodicEquation,
    tol: f64,
) -> Result<RootSet> {
    let deg = eq.e.deg().unwrap_or(0);
    let pf = PreparedFamily::new(f);
    let pp = PreparedPoint::new(a);
    let candidates: Vec<(Complex64, usize)> = if deg == 0 {
        Vec::new()
    } else if deg <= DIRECT_DEG_LIMIT {
        complex_roots(&eq.e, DIRECT_ROOT_TOL)?.roots
    } else {
        recurrence_roots(&pf, &pp, &eq.e, eq.n, eq.m)
    };
    let mut verified = Vec::new();
    let mut unverified = Vec::new();
    for (t, multiplicity) in candidates {
        let residual = collision_residual(&pf, &pp, t, eq.n, eq.m);
        let root = VerifiedRoot { t, multiplicity, residual };
        if residual.is_finite() && residual <= tol {
            verified.push(root);
        } else {
            unverified.push(root);
        }
    }
    Ok(RootSet {
        n: eq.n,
        m: eq.m,
        tol,
        equation_degree: deg,
        verified,
        unverified,
    })
}

/// Spherical distance between the n-th and m-th orbit iterates of a(t) at t.
fn collision_residual(
    pf: &PreparedFamily,
    pp: &PreparedPoint,
    t: Complex64,
    n: usize,
    m: usize,
) -> f64 {
    let sm = pf.specialize(t);
    let (x0, y0) = pp.pair(t);
    let s = x0.norm().max(y0.norm());
    let (mut x, mut y) = (x0 / s, y0 / s);
    let (mut xm, mut ym) = (x, y);
    for i in 1..=n {
        let (nx, ny, _) = sm.step(x, y);
        x = nx;
        y = ny;
        if i == m {
            xm = x;
            ym = y;
        }
    }
    chordal((x, y), (xm, ym))
}

/// Aberth–Ehrlich where p/p′ is evaluated through the variational orbit
/// recurrence rather than from coefficients. Multiplicities come from
/// clustering the converged iterates.
fn recurrence_roots(
    pf: &PreparedFamily,
    pp: &PreparedPoint,
    e: &Poly,
    n: usize,
    m: usize,
) -> Vec<(Complex64, usize)> {
    let ratio = |z: Complex64| -> Option<Complex64> {
        let sd = pf.specialize_with_derivative(z);
        let mut vs = pp.var_state(z);
        let mut at_m: VarState = vs;
        for i in 1..=n {
            vs = sd.step(&vs);
            if i == m {
                at_m = vs;
            }
        }
        let ev = vs.x * at_m.y - at_m.x * vs.y;
        let dv = vs.dx * at_m.y + vs.x * at_m.dy - at_m.dx * vs.y - at_m.x * vs.dy;
        let r = ev / dv;
        if r.re.is_finite() && r.im.is_finite() {
            Some(r)
        } else {
            None
        }
    };
    let out = aberth_with(newton_polygon_init(e), ratio, ABERTH_SWEEPS);
    cluster(out.roots)
}

/// Greedy sorted clustering; each cluster's size is the multiplicity.
fn cluster(mut roots: Vec<Complex64>) -> Vec<(Complex64, usize)> {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for z in roots {
        match out.last_mut() {
            Some((c, k)) if (z - *c).norm() <= CLUSTER_TOL => {
                // Running mean keeps the representative centered.
                *c = (*c * *k as f64 + z) / (*k as f64 + 1.0);
                *k += 1;
            }
            _ => out.push((z, 1)),
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct DensityEntry {
    pub n: usize,
    pub m: usize,
    /// E ≡ 0: identically preperiodic, density trivial.
    pub identically_preperiodic: bool,
    pub verified_roots: usize,
    pub roots_in_rect: usize,
    /// Fraction of verified roots inside the grid rectangle (NaN when none).
    pub fraction_in_rect: f64,
    /// Median over active pixels of the distance to the nearest verified root
    /// (NaN when there are no active pixels or no verified roots).
    pub median_active_distance: f64,
}

#[derive(Clone, Debug)]
pub struct DensityReport {
    pub active_pixels: usize,
    pub entries: Vec<DensityEntry>,
    /// Medians nonincreasing across consecutive entries with finite medians.
    pub median_nonincreasing: bool,
}

/// For each (n, m) pair: verified roots, their presence in the rectangle, and
/// the median distance from active pixels to the nearest root.
pub fn density_experiment(
    f: &RationalMapFamily,
    a: &ProjPointK,
    grid: &ParamGrid,
    pairs: &[(usize, usize)],
) -> Result<DensityReport> {
    let act = activity_map(f, a, grid, DEFAULT_ACTIVITY_CAP, DEFAULT_ACTIVITY_THRESHOLD);
    let centers: Vec<Complex64> = act
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(idx, _)| grid.center_of(idx))
        .collect();
    let mut entries = Vec::with_capacity(pairs.len());
    for &(n, m) in pairs {
        let eq = preperiodic_equation(f, a, n, m)?;
        if eq.identically_zero {
            entries.push(DensityEntry {
                n,
                m,
                identically_preperiodic: true,
                verified_roots: 0,
                roots_in_rect: 0,
                fraction_in_rect: f64::NAN,
                median_active_distance: f64::NAN,
            });
            continue;
        }
        let rs = root_set(f, a, &eq, COLLISION_TOL)?;
        let roots: Vec<Complex64> = rs.verified.iter().map(|v| v.t).collect();
        let roots_in_rect = roots.iter().filter(|&&t| grid.contains(t)).count();
        let fraction_in_rect = if roots.is_empty() {
            f64::NAN
        } else {
            roots_in_rect as f64 / roots.len() as f64
        };
        entries.push(DensityEntry {
            n,
            m,
            identically_preperiodic: false,
            verified_roots: roots.len(),
            roots_in_rect,
            fraction_in_rect,
            median_active_distance: median_min_distance(&centers, &roots),
        });
    }
    let medians: Vec<f64> = entries
        .iter()
        .filter(|e| !e.identically_preperiodic && e.median_active_distance.is_finite())
        .map(|e| e.median_active_distance)
        .collect();
    let median_nonincreasing = medians.windows(2).all(|w| w[1] <= w[0]);
    Ok(DensityReport {
        active_pixels: centers.len(),
        entries,
        median_nonincreasing,
    })
}

fn median_min_distance(centers: &[Complex64], roots: &[Complex64]) -> f64 {
    if centers.is_empty() || roots.is_empty() {
        return f64::NAN;
    }
    let mut d: Vec<f64> = centers
        .par_iter()
        .map(|c| {
            roots
                .iter()
                .map(|r| (c - r).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    d.sort_by(f64::total_cmp);
    let k = d.len();
    if k % 2 == 1 {
        d[k / 2]
    } else {
        0.5 * (d[k / 2 - 1] + d[k / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{classify, Classification};
    use crate::testkit::{lattes, pt, pt_rat, quadratic, squaring};

    fn unit_grid_at(re: f64, im: f64) -> ParamGrid {
        ParamGrid::new(re - 0.5, im - 0.5, re + 0.5, im + 0.5, 1, 1).unwrap()
    }

    #[test]
    fn grid_centers_and_orientation() {
        let g = ParamGrid::new(-1.0, -1.0, 1.0, 1.0, 4, 2).unwrap();
        assert_eq!(g.center(0, 0), Complex64::new(-0.75, 0.5));
        assert_eq!(g.center(1, 3), Complex64::new(0.75, -0.5));
        assert_eq!(g.center_of(7), g.center(1, 3));
        assert!(g.contains(Complex64::new(0.0, 0.0)));
        assert!(!g.contains(Complex64::new(1.5, 0.0)));
        assert!(ParamGrid::new(0.0, 0.0, 0.0, 1.0, 4, 4).is_err());
        assert!(ParamGrid::new(0.0, 0.0, 1.0, 1.0, 0, 4).is_err());
    }

    #[test]
    fn activity_oracle_pixels() {
        let f = quadratic();
        let a = pt_rat(0, 1);
        let inside = activity_map(&f, &a, &unit_grid_at(0.0, 0.0), 64, 1e12);
        assert_eq!(inside.values, vec![0]);
        assert!(inside.nan_cells.is_empty());

        let outside = activity_map(&f, &a, &unit_grid_at(1.0, 0.0), 64, 1e12);
        assert!(outside.values[0] >= 1 && outside.values[0] <= 12, "{:?}", outside.values);
    }

    #[test]
    fn constant_family_is_everywhere_inactive() {
        let f = squaring();
        let a = pt_rat(2, 1);
        let g = ParamGrid::new(-1.0, -1.0, 1.0, 1.0, 4, 4).unwrap();
        let m = activity_map(&f, &a, &g, 32, 1e12);
        assert!(m.values.iter().all(|&v| v == 0));
        assert!(m.nan_cells.is_empty());
    }

    #[test]
    fn refinement_is_monotone_in_cap() {
        let f = quadratic();
        let a = pt_rat(0, 1);
        let g = ParamGrid::new(-2.0, -1.0, 1.0, 1.0, 8, 6).unwrap();
        let lo = activity_map(&f, &a, &g, 20, 1e12);
        let hi = activity_map(&f, &a, &g, 60, 1e12);
        for (l, h) in lo.values.iter().zip(&hi.values) {
            if *l > 0 {
                assert_eq!(l, h);
            }
        }
        assert!(hi.active_count() >= lo.active_count());
    }

    #[test]
    fn equation_oracles() {
        let f = quadratic();
        let a = pt_rat(0, 1);
        let e1 = preperiodic_equation(&f, &a, 1, 0).unwrap();
        assert_eq!(e1.e, Poly::from_ints(&[0, 1]));
        let e2 = preperiodic_equation(&f, &a, 2, 0).unwrap();
        assert_eq!(e2.e, Poly::from_ints(&[0, 1, 1]));
        let e3 = preperiodic_equation(&f, &a, 3, 0).unwrap();
        assert_eq!(e3.e, Poly::from_ints(&[0, 1, 1, 2, 1]));
        assert!(!e3.identically_zero);
        assert!(preperiodic_equation(&f, &a, 1, 1).is_err());
    }

    #[test]
    fn identically_zero_matches_classify() {
        // The Lattès orbit of t terminates: t → ∞ → ∞.
        let f = lattes();
        let a = pt(&[0, 1], &[1]);
        match classify(&f, &a, 16).unwrap() {
            Classification::Preperiodic { preperiod, period } => {
                let eq = preperiodic_equation(&f, &a, preperiod + period, preperiod).unwrap();
                assert!(eq.identically_zero);
                assert!(eq.e.is_zero());
            }
            other => panic!("expected Preperiodic, got {other:?}"),
        }
    }

    #[test]
    fn quadratic_small_parameters_verified() {
        let f = quadratic();
        let a = pt_rat(0, 1);
        let rs = preperiodic_parameters(&f, &a, 2, 0, 1e-6).unwrap();
        assert_eq!(rs.equation_degree, 2);
        assert!(rs.unverified.is_empty());
        let mut roots: Vec<f64> = rs.verified.iter().map(|v| v.t.re).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 1.0).abs() < 1e-9);
        assert!(roots[1].abs() < 1e-9);
        assert!(rs.verified.iter().all(|v| v.t.im.abs() < 1e-9));
        assert!(rs.verified.iter().all(|v| v.residual <= 1e-6));
    }

    #[test]
    fn lattes_fixed_parameters_avoid_degenerate_places() {
        // f_t(2) = 2 ⟺ t² + 8t − 16 = 0: t = −4 ± 4√2.
        let f = lattes();
        let a = pt_rat(2, 1);
        let rs = preperiodic_parameters(&f, &a, 1, 0, 1e-6).unwrap();
        assert_eq!(rs.equation_degree, 2);
        assert_eq!(rs.verified.len(), 2);
        let target = 32.0f64.sqrt();
        for v in &rs.verified {
            assert!(((v.t.re + 4.0).abs() - target).abs() < 1e-9);
            assert!(v.t.im.abs() < 1e-9);
            assert!((v.t - Complex64::new(0.0, 0.0)).norm() > 0.5);
            assert!((v.t - Complex64::new(1.0, 0.0)).norm() > 0.5);
        }
    }

    #[test]
    fn recurrence_path_cross_validates_against_coefficients() {
        // (5, 0) has degree 16, small enough that the coefficient basis is
        // still forward-accurate; the recurrence path must reproduce all of
        // its roots. At (7, 0) the coefficient basis degrades — only roots
        // that still re-enact their collision take part in the comparison —
        // while the recurrence path verifies every one of the 64.
        let f = quadratic();
        let a = pt_rat(0, 1);
        let pf = PreparedFamily::new(&f);
        let pp = PreparedPoint::new(&a);
        for (n, floor) in [(5usize, 16usize), (7, 20)] {
            let eq = preperiodic_equation(&f, &a, n, 0).unwrap();
            let deg = eq.e.deg().unwrap();
            let rec = recurrence_roots(&pf, &pp, &eq.e, n, 0);
            assert_eq!(rec.iter().map(|(_, k)| k).sum::<usize>(), deg);
            let rec_verified = rec
                .iter()
                .filter(|(z, _)| collision_residual(&pf, &pp, *z, n, 0) <= 1e-6)
                .count();
            assert_eq!(rec_verified, deg, "recurrence path lost roots at n={n}");
            let direct = complex_roots(&eq.e, DIRECT_ROOT_TOL).unwrap();
            let trusted: Vec<Complex64> = direct
                .roots
                .iter()
                .map(|(z, _)| *z)
                .filter(|&z| collision_residual(&pf, &pp, z, n, 0) <= 1e-6)
                .collect();
            assert!(trusted.len() >= floor, "only {} direct roots verified at n={n}", trusted.len());
            for z in &trusted {
                let nearest = rec
                    .iter()
                    .map(|(w, _)| (w - z).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(nearest < 1e-5, "no recurrence root near {z} at n={n}");
            }
        }
    }

    #[test]
    fn density_medians_shrink() {
        let f = quadratic();
        let a = pt_rat(0, 1);
        let g = ParamGrid::new(-2.5, -1.5, 1.0, 1.5, 32, 32).unwrap();
        let rep = density_experiment(&f, &a, &g, &[(2, 0), (4, 0)]).unwrap();
        assert!(rep.active_pixels > 0);
        assert_eq!(rep.entries.len(), 2);
        assert!(rep.entries[0].median_active_distance.is_finite());
        assert!(rep.entries[1].median_active_distance <= rep.entries[0].median_active_distance);
        assert!(rep.median_nonincreasing);
        assert!(rep.entries[1].verified_roots > rep.entries[0].verified_roots);
    }

    #[test]
    fn density_flags_identically_preperiodic_pair() {
        let f = lattes();
        let a = pt(&[0, 1], &[1]);
        let g = ParamGrid::new(-1.0, -1.0, 1.0, 1.0, 8, 8).unwrap();
        let rep = density_experiment(&f, &a, &g, &[(2, 1)]).unwrap();
        assert!(rep.entries[0].identically_preperiodic);
        assert!(rep.entries[0].median_active_distance.is_nan());
        assert!(rep.median_nonincreasing);
    }

    #[test]
    fn density_inside_inactive_region() {
        // A rectangle deep inside the inactive region: no active pixels, and
        // the only (1,0) root t = 0 sits in the rectangle.
        let f = quadratic();
        let a = pt_rat(0, 1);
        let g = ParamGrid::new(-0.2, -0.2, 0.2, 0.2, 8, 8).unwrap();
        let rep = density_experiment(&f, &a, &g, &[(1, 0)]).unwrap();
        assert_eq!(rep.active_pixels, 0);
        assert_eq!(rep.entries[0].verified_roots, 1);
        assert_eq!(rep.entries[0].roots_in_rect, 1);
        assert!(rep.entries[0].median_active_distance.is_nan());
    }
}

