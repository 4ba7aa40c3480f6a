//! Exact dynamics in ℙ¹(ℚ(t)): orbits, degree sequences, canonical-height
//! enclosures, and the preperiodic / positive-height classification.
//!
//! The height enclosure at step i is [deg g_i/d^i ± D/(d^i(d−1))] with
//! D = deg(res) + q_∞; successive intervals are intersected, so the result
//! tightens monotonically. The per-step degree bound |deg g_{i+1} − d·deg g_i|
//! ≤ D is asserted on every step: a violation falsifies the bound the whole
//! enclosure rests on and aborts loudly rather than clamp.

use std::collections::HashMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::family::{apply, RationalMapFamily};
use crate::point::ProjPointK;
use crate::rational::{rat_int, Rat};

/// Stored-coefficient budget across one orbit computation.
pub const COEFF_BUDGET: usize = 100_000;
/// Per-coefficient size guard (numerator + denominator bits). Catches
/// constant families whose coefficient heights double every step while the
/// coefficient count stays flat.
pub const COEFF_BIT_GUARD: u64 = 1 << 20;
/// Default preperiodicity search cap.
pub const DEFAULT_NMAX: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct OrbitLimits {
    pub coeff_budget: usize,
    pub bit_guard: u64,
}

impl Default for OrbitLimits {
    fn default() -> Self {
        OrbitLimits {
            coeff_budget: COEFF_BUDGET,
            bit_guard: COEFF_BIT_GUARD,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Orbit {
    /// g_0 = a, g_1, … — canonically normalized.
    pub points: Vec<ProjPointK>,
    /// Degree of the cancelled factor per step; drops[i] is the step g_i → g_{i+1}.
    pub drops: Vec<usize>,
    /// (preperiod m, period p): points[m] = points[m+p], everything before distinct.
    pub cycle: Option<(usize, usize)>,
    /// Max observed |deg g_{i+1} − d·deg g_i| (always ≤ D_total, see module docs).
    pub max_step_deviation: usize,
}

impl Orbit {
    /// g_n for arbitrary n, riding the cycle when one was found.
    pub fn point_at(&self, n: usize) -> Option<&ProjPointK> {
        if n < self.points.len() {
            return Some(&self.points[n]);
        }
        let (m, p) = self.cycle?;
        Some(&self.points[m + (n - m) % p])
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.points.iter().map(ProjPointK::degree).collect()
    }
}

#[derive(Clone, Debug)]
pub struct HeightEnclosure {
    pub lo: Rat,
    pub hi: Rat,
    pub n_used: usize,
    pub degree_sequence: Vec<usize>,
    pub max_step_deviation: usize,
}

impl HeightEnclosure {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }
}

#[derive(Clone, Debug)]
pub enum Classification {
    Preperiodic { preperiod: usize, period: usize },
    PositiveHeight(HeightEnclosure),
    Undetermined { enclosure: HeightEnclosure, cap: usize },
}

#[derive(Clone, Debug)]
pub struct IsotrivialityCertificate {
    /// Index of the first orbit point in the constant run.
    pub start: usize,
    /// 2d+1 consecutive, pairwise distinct constant points.
    pub points: Vec<ProjPointK>,
}

/// Incremental orbit computation shared by orbit / height / classify.
struct Stepper<'a> {
    f: &'a RationalMapFamily,
    limits: OrbitLimits,
    points: Vec<ProjPointK>,
    drops: Vec<usize>,
    seen: HashMap<ProjPointK, usize>,
    total_coeffs: usize,
    max_dev: usize,
    cycle: Option<(usize, usize)>,
}

impl<'a> Stepper<'a> {
    fn new(f: &'a RationalMapFamily, a: &ProjPointK, limits: OrbitLimits) -> Result<Self> {
        if a.max_coeff_bits() > limits.bit_guard {
            return Err(Error::resource(0, "marked point exceeds the coefficient size guard"));
        }
        let mut seen = HashMap::new();
        seen.insert(a.clone(), 0);
        Ok(Stepper {
            f,
            limits,
            points: vec![a.clone()],
            drops: Vec::new(),
            seen,
            total_coeffs: a.coeff_count(),
            max_dev: 0,
            cycle: None,
        })
    }

    /// Extend by one point. Returns the cycle when the new point closes one.
    fn step(&mut self) -> Result<Option<(usize, usize)>> {
        if self.cycle.is_some() {
            return Ok(self.cycle);
        }
        let n = self.points.len(); // index of the point being produced
        let prev = self.points.last().unwrap();
        let prev_deg = prev.degree();
        // Budget-check *before* paying for the multiplication: the next point
        // stores at most d·(deg-bound) + D_total + 2 coefficients, and a step
        // that would cross the budget is exactly the step we must not take.
        let estimate = self.f.d() * prev.coeff_count() + 2 * self.f.d_total() + 2;
        if self.total_coeffs + estimate > self.limits.coeff_budget {
            return Err(Error::resource(
                n,
                format!("coefficient budget {} would be exceeded", self.limits.coeff_budget),
            ));
        }
        let (img, cancelled) = apply(self.f, prev)?;
        let dev = (img.degree() as i64 - self.f.d() as i64 * prev_deg as i64).unsigned_abs() as usize;
        if dev > self.f.d_total() {
            return Err(Error::internal(format!(
                "per-step degree bound violated at n = {n}: |{} - {}*{}| = {dev} > D_total = {}",
                img.degree(),
                self.f.d(),
                prev_deg,
                self.f.d_total()
            )));
        }
        self.max_dev = self.max_dev.max(dev);
        self.total_coeffs += img.coeff_count();
        if img.max_coeff_bits() > self.limits.bit_guard {
            return Err(Error::resource(
                n,
                format!("coefficient size guard {} bits exceeded", self.limits.bit_guard),
            ));
        }
        self.drops.push(cancelled.deg().unwrap_or(0));
        if let Some(&m) = self.seen.get(&img) {
            self.points.push(img);
            self.cycle = Some((m, n - m));
            return Ok(self.cycle);
        }
        self.seen.insert(img.clone(), n);
        self.points.push(img);
        Ok(None)
    }

    fn into_orbit(self) -> Orbit {
        Orbit {
            points: self.points,
            drops: self.drops,
            cycle: self.cycle,
            max_step_deviation: self.max_dev,
        }
    }
}

/// Running intersection of the per-step height intervals, clamped to ĥ ≥ 0.
struct EnclosureTracker {
    lo: Rat,
    hi: Rat,
    dpow: Rat,
    rad0: Rat,
    d: Rat,
}

impl EnclosureTracker {
    fn new(f: &RationalMapFamily, deg_a: usize) -> Self {
        let d = rat_int(f.d() as i64);
        let rad0 = rat_int(f.d_total() as i64) / (&d - rat_int(1));
        let c0 = rat_int(deg_a as i64);
        let lo = (&c0 - &rad0).max(Rat::zero());
        let hi = c0 + &rad0;
        EnclosureTracker {
            lo,
            hi,
            dpow: rat_int(1),
            rad0,
            d,
        }
    }

    fn push(&mut self, n: usize, deg_n: usize) -> Result<()> {
        self.dpow *= &self.d;
        let c = rat_int(deg_n as i64) / &self.dpow;
        let r = &self.rad0 / &self.dpow;
        self.lo = self.lo.clone().max((&c - &r).max(Rat::zero()));
        self.hi = self.hi.clone().min(c + r);
        if self.lo > self.hi {
            return Err(Error::internal(format!(
                "height-interval intersection empty at n = {n}: degree-change bound violated"
            )));
        }
        Ok(())
    }
}

/// Iterate until an exact repeat or nmax points past the start.
pub fn orbit(f: &RationalMapFamily, a: &ProjPointK, nmax: usize) -> Result<Orbit> {
    orbit_with_limits(f, a, nmax, OrbitLimits::default())
}

/// [`orbit`] with caller-chosen resource limits.
pub fn orbit_with_limits(
    f: &RationalMapFamily,
    a: &ProjPointK,
    nmax: usize,
    limits: OrbitLimits,
) -> Result<Orbit> {
    if nmax < 1 {
        return Err(Error::domain("nmax must be at least 1"));
    }
    let mut st = Stepper::new(f, a, limits)?;
    for _ in 1..=nmax {
        if st.step()?.is_some() {
            break;
        }
    }
    Ok(st.into_orbit())
}

/// deg g_i for i = 0..n, continued through the cycle when one terminates the
/// orbit early.
pub fn degree_sequence(f: &RationalMapFamily, a: &ProjPointK, n: usize) -> Result<Vec<usize>> {
    let orb = orbit(f, a, n.max(1))?;
    (0..=n)
        .map(|i| {
            orb.point_at(i)
                .map(ProjPointK::degree)
                .ok_or_else(|| Error::internal("orbit shorter than requested without a cycle"))
        })
        .collect()
}

/// Rigorous enclosure of the canonical height from n iterates; an exact cycle
/// short-circuits to [0, 0].
pub fn canonical_height(f: &RationalMapFamily, a: &ProjPointK, n: usize) -> Result<HeightEnclosure> {
    if n < 1 {
        return Err(Error::domain("canonical_height needs n >= 1"));
    }
    let mut st = Stepper::new(f, a, OrbitLimits::default())?;
    let mut tracker = EnclosureTracker::new(f, a.degree());
    for i in 1..=n {
        if st.step()?.is_some() {
            return Ok(HeightEnclosure {
                lo: Rat::zero(),
                hi: Rat::zero(),
                n_used: i,
                degree_sequence: st.points.iter().map(ProjPointK::degree).collect(),
                max_step_deviation: st.max_dev,
            });
        }
        tracker.push(i, st.points[i].degree())?;
    }
    Ok(HeightEnclosure {
        lo: tracker.lo,
        hi: tracker.hi,
        n_used: n,
        degree_sequence: st.points.iter().map(ProjPointK::degree).collect(),
        max_step_deviation: st.max_dev,
    })
}

/// Trichotomy: exact cycle ⇒ Preperiodic; enclosure lower bound > 0 ⇒
/// PositiveHeight; otherwise Undetermined. Budget exhaustion is reported as
/// Undetermined with the cap that was reached — an honest non-answer.
pub fn classify(f: &RationalMapFamily, a: &ProjPointK, nmax: usize) -> Result<Classification> {
    if nmax < 1 {
        return Err(Error::domain("nmax must be at least 1"));
    }
    let mut st = Stepper::new(f, a, OrbitLimits::default())?;
    let mut tracker = EnclosureTracker::new(f, a.degree());
    let snapshot = |st: &Stepper, tr: &EnclosureTracker, n: usize| HeightEnclosure {
        lo: tr.lo.clone(),
        hi: tr.hi.clone(),
        n_used: n,
        degree_sequence: st.points.iter().map(ProjPointK::degree).collect(),
        max_step_deviation: st.max_dev,
    };
    for n in 1..=nmax {
        match st.step() {
            Err(Error::Resource { .. }) => {
                return Ok(Classification::Undetermined {
                    enclosure: snapshot(&st, &tracker, n - 1),
                    cap: n,
                });
            }
            Err(e) => return Err(e),
            Ok(Some((m, p))) => {
                return Ok(Classification::Preperiodic {
                    preperiod: m,
                    period: p,
                });
            }
            Ok(None) => {
                tracker.push(n, st.points[n].degree())?;
                if tracker.lo > Rat::zero() {
                    return Ok(Classification::PositiveHeight(snapshot(&st, &tracker, n)));
                }
            }
        }
    }
    Ok(Classification::Undetermined {
        enclosure: snapshot(&st, &tracker, nmax),
        cap: nmax,
    })
}

/// Sampling certificate: 2d+1 consecutive constant, pairwise distinct orbit
/// points force the specializations to agree on 2d+1 points, so the orbit
/// segment behaves like a constant family there.
pub fn constant_tail_certificate(orb: &Orbit, d: usize) -> Option<IsotrivialityCertificate> {
    let need = 2 * d + 1;
    let pts = &orb.points;
    if pts.len() < need {
        return None;
    }
    'windows: for start in 0..=pts.len() - need {
        let window = &pts[start..start + need];
        if window.iter().any(|p| !p.is_constant()) {
            continue;
        }
        for i in 0..need {
            for j in i + 1..need {
                if window[i] == window[j] {
                    continue 'windows;
                }
            }
        }
        return Some(IsotrivialityCertificate {
            start,
            points: window.to_vec(),
        });
    }
    None
}
