//! Floating-point root finding for exact polynomials.
//!
//! Multiplicities come from the exact squarefree factorization; each
//! squarefree factor is solved by Aberth–Ehrlich simultaneous iteration.
//! Coefficients are rescaled by a power of two (exact on rationals) before
//! conversion to doubles, and evaluation switches to the reversed polynomial
//! at 1/z outside the unit disk, so arbitrarily large coefficients and root
//! moduli stay inside f64 range.

use num::complex::Complex64;
use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::poly::{squarefree_factorization, Poly};
use crate::rational::{rat_log2_abs, rat_to_f64, Rat};

const STEP_TOL: f64 = 5e-14;
const MAX_SWEEPS: usize = 400;
/// Relative step size below which stagnation detection engages.
const STAGNATION_SCOPE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct RootList {
    /// (root, multiplicity) pairs, sorted by (re, im).
    pub roots: Vec<(Complex64, usize)>,
    /// Largest backward relative error over the roots.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct AberthOutcome {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

/// All complex roots with multiplicities; the relative residual must come out
/// ≤ tol or the call fails carrying the best-effort roots.
pub fn complex_roots(p: &Poly, tol: f64) -> Result<RootList> {
    if p.deg().map_or(true, |d| d < 1) {
        return Err(Error::domain("root finding needs degree at least 1"));
    }
    let factors = squarefree_factorization(p)?;
    let mut roots: Vec<(Complex64, usize)> = Vec::new();
    let mut iterations = 0;
    for (f, mult) in &factors {
        let out = roots_squarefree(f);
        iterations = iterations.max(out.iterations);
        for r in out.roots {
            roots.push((r, *mult));
        }
    }
    roots.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("finite roots")
    });
    // The backward error is the quality gate: step sizes stall at the
    // conditioning noise floor long before they reach the step tolerance,
    // while a small backward error certifies the roots regardless.
    let scaled = scaled_f64_coeffs(p);
    let residual = roots
        .iter()
        .map(|(r, _)| backward_error(&scaled, *r))
        .fold(0.0f64, f64::max);
    if !residual.is_finite() || residual > tol {
        return Err(Error::RootsNonconverged {
            roots,
            residual,
            iterations,
        });
    }
    Ok(RootList { roots, residual })
}

/// Fujiwara-style root radius 2·max_j |a_{n−j}/a_n|^{1/j}, computed from
/// coefficient bit lengths so huge integers never touch f64.
pub fn fujiwara_radius(p: &Poly) -> f64 {
    let n = p.deg().unwrap_or(0);
    if n == 0 {
        return 1.0;
    }
    let llead = rat_log2_abs(p.lc().unwrap());
    let mut max_log = f64::NEG_INFINITY;
    for j in 1..=n {
        let c = p.coeff(n - j);
        if c.is_zero() {
            continue;
        }
        max_log = max_log.max((rat_log2_abs(&c) - llead) / j as f64);
    }
    if max_log == f64::NEG_INFINITY {
        return 1.0; // monomial: only root is 0
    }
    (2.0f64).powf(1.0 + max_log.min(200.0)).max(1e-3)
}

/// Evenly spread starting points on a circle, angle-offset to break conjugate
/// symmetry.
pub fn circle_init(n: usize, radius: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64 + 0.45;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

/// Starting points on the Newton-polygon rings: each segment of the upper
/// convex hull of (k, log₂|a_k|) with horizontal span m contributes a ring of
/// m points at radius 2^{−slope}, the polygon's estimate of the moduli of the
/// roots it accounts for. One far-out circle makes Aberth drift inward for
/// dozens of sweeps when coefficients span many scales; these rings start
/// every point near its own target ring.
pub fn newton_polygon_init(p: &Poly) -> Vec<Complex64> {
    let n = p.deg().expect("nonzero polynomial");
    let pts: Vec<(usize, f64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, rat_log2_abs(c)))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &(k, h) in &pts {
        while hull.len() >= 2 {
            let (ka, ha) = hull[hull.len() - 2];
            let (kb, hb) = hull[hull.len() - 1];
            // Drop b when it lies on or below the chord a→(k, h).
            if (hb - ha) * ((k - ka) as f64) <= (h - ha) * ((kb - ka) as f64) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((k, h));
    }
    let mut z = Vec::with_capacity(n);
    let ring = |z: &mut Vec<Complex64>, count: usize, radius: f64, seed: usize| {
        for j in 0..count {
            let theta = std::f64::consts::TAU * (j as f64 + 0.5) / count as f64
                + 0.45
                + seed as f64;
            z.push(Complex64::from_polar(radius, theta));
        }
    };
    let seg_radius = |a: (usize, f64), b: (usize, f64)| -> f64 {
        ((a.1 - b.1) / (b.0 - a.0) as f64).exp2().clamp(1e-12, 1e12)
    };
    // Vanishing low-order coefficients start the hull at k0 > 0: those k0
    // roots sit at the origin and get an inner ring well below the first
    // polygon radius.
    let k0 = hull[0].0;
    if k0 > 0 {
        let first = if hull.len() >= 2 {
            seg_radius(hull[0], hull[1])
        } else {
            1.0
        };
        ring(&mut z, k0, (first * 1e-3).clamp(1e-12, 1e12), 0);
    }
    for seg in hull.windows(2) {
        ring(&mut z, seg[1].0 - seg[0].0, seg_radius(seg[0], seg[1]), seg[0].0);
    }
    z
}

/// Aberth–Ehrlich driver over an arbitrary Newton-ratio oracle p(z)/p′(z).
/// Gauss–Seidel sweeps in a fixed order keep the result deterministic.
pub fn aberth_with<R>(mut z: Vec<Complex64>, mut ratio: R, max_sweeps: usize) -> AberthOutcome
where
    R: FnMut(Complex64) -> Option<Complex64>,
{
    let n = z.len();
    if n == 0 {
        return AberthOutcome {
            roots: z,
            iterations: 0,
            converged: true,
        };
    }
    let mut best = f64::INFINITY;
    let mut stale = 0usize;
    // A candidate whose step falls under the tolerance is held: it stops
    // being re-evaluated but keeps repelling the others, so late sweeps pay
    // only for the stragglers still in transit from the initial rings.
    let mut held = vec![false; n];
    for sweep in 1..=max_sweeps {
        let mut settled = true;
        let mut max_step = 0.0f64;
        for i in 0..n {
            if held[i] {
                continue;
            }
            let zi = z[i];
            let Some(w) = ratio(zi) else {
                // Evaluation broke down (p′ = 0 or overflow); nudge and retry.
                z[i] = zi * Complex64::new(1.0 + 1e-6, 1e-6);
                settled = false;
                max_step = f64::INFINITY;
                continue;
            };
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    s += (zi - zj).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let delta = if denom.norm_sqr() > 1e-60 { w / denom } else { w };
            if !delta.re.is_finite() || !delta.im.is_finite() {
                z[i] = zi * Complex64::new(1.0 + 1e-6, 1e-6);
                settled = false;
                max_step = f64::INFINITY;
                continue;
            }
            z[i] = zi - delta;
            let rel = delta.norm() / (1.0 + z[i].norm());
            max_step = max_step.max(rel);
            if rel > STEP_TOL {
                settled = false;
            } else {
                held[i] = true;
            }
        }
        if settled {
            return AberthOutcome {
                roots: z,
                iterations: sweep,
                converged: true,
            };
        }
        // Stop once steps stall at the attainable accuracy; the caller judges
        // the outcome by residual, not by reaching the step tolerance. Steps
        // above the noise scope are steady macroscopic progress — an initial
        // circle far from the roots drifts inward at roughly constant speed —
        // and must not count as stagnation.
        if max_step >= STAGNATION_SCOPE || max_step < 0.9 * best {
            best = max_step;
            stale = 0;
        } else {
            stale += 1;
            if stale >= 25 {
                return AberthOutcome {
                    roots: z,
                    iterations: sweep,
                    converged: false,
                };
            }
        }
    }
    AberthOutcome {
        roots: z,
        iterations: max_sweeps,
        converged: false,
    }
}

fn roots_squarefree(f: &Poly) -> AberthOutcome {
    let n = f.deg().expect("nonzero factor");
    if n == 0 {
        return AberthOutcome {
            roots: Vec::new(),
            iterations: 0,
            converged: true,
        };
    }
    if n == 1 {
        let root = -f.coeff(0) / f.lc().unwrap();
        return AberthOutcome {
            roots: vec![Complex64::new(rat_to_f64(&root), 0.0)],
            iterations: 0,
            converged: true,
        };
    }
    let coeffs = scaled_f64_coeffs(f);
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect();
    // Reversed forms evaluated at 1/z keep |z| > 1 overflow-free:
    // p(z) = z^n·q(1/z), p′(z) = z^{n−1}·s(1/z).
    let rev: Vec<f64> = coeffs.iter().rev().cloned().collect();
    let srev: Vec<f64> = (0..=n).map(|k| (n - k) as f64 * coeffs[n - k]).collect();
    let ratio = move |z: Complex64| -> Option<Complex64> {
        let r = if z.norm_sqr() <= 1.0 {
            let pv = horner(&coeffs, z);
            let dv = horner(&deriv, z);
            if dv.norm_sqr() == 0.0 {
                return None;
            }
            pv / dv
        } else {
            let u = z.finv();
            let qv = horner(&rev, u);
            let sv = horner(&srev, u);
            if sv.norm_sqr() == 0.0 {
                return None;
            }
            z * qv / sv
        };
        if r.re.is_finite() && r.im.is_finite() {
            Some(r)
        } else {
            None
        }
    };
    aberth_with(newton_polygon_init(f), ratio, MAX_SWEEPS)
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &v in c.iter().rev() {
        acc = acc * z + v;
    }
    acc
}

/// p divided by 2^⌈log2 max|coeff|⌉ (exact), then converted to doubles.
pub(crate) fn scaled_f64_coeffs(p: &Poly) -> Vec<f64> {
    let k = p
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| rat_log2_abs(c))
        .fold(f64::NEG_INFINITY, f64::max)
        .ceil() as i64;
    let scale = if k >= 0 {
        Rat::new(BigInt::one(), BigInt::one() << k as usize)
    } else {
        Rat::from_integer(BigInt::one() << (-k) as usize)
    };
    p.coeffs().iter().map(|c| rat_to_f64(&(c * &scale))).collect()
}

/// Backward relative error of an approximate root: |p(z)| / Σ_k |a_k||z|^k.
/// At most η means z is an exact root of a polynomial whose coefficients are
/// each relatively perturbed by at most η — scale-free at every root modulus,
/// unlike |p(z)| normalized by a single coefficient, which a distant second
/// root amplifies arbitrarily.
fn backward_error(scaled: &[f64], z: Complex64) -> f64 {
    let (val, mag) = if z.norm_sqr() <= 1.0 {
        (horner(scaled, z), horner_abs(scaled, z.norm()))
    } else {
        // In the reversed frame p(z) = z^n·q(1/z) the z^n cancels from the
        // ratio, so distant roots never overflow.
        let rev: Vec<f64> = scaled.iter().rev().cloned().collect();
        let u = z.finv();
        (horner(&rev, u), horner_abs(&rev, u.norm()))
    };
    let num = val.norm();
    if num == 0.0 {
        0.0
    } else {
        num / mag
    }
}

fn horner_abs(c: &[f64], x: f64) -> f64 {
    let mut acc = 0.0f64;
    for &v in c.iter().rev() {
        acc = acc * x + v.abs();
    }
    acc
}
