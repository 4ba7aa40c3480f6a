//! Behavior at a degenerate parameter t = 0: exact order-of-vanishing
//! sequences, normalized escape-rate grids on annuli, and numeric witnesses
//! for the local bounds.
//!
//! The order sequence iterates the stripped lift F_{n+1} = t^{−k}·F(F_n),
//! k = ord_{t=0} F(F_n), so a_{n+1} = d·a_n + k_{n+1} and every increment
//! obeys 0 ≤ k ≤ q = ord_{t=0} res. Because stripping costs exactly k ≤ q
//! known low-order terms per step, a window of q·N + q + 1 terms keeps every
//! k-detection exact through step N; the truncated mode runs on that window
//! and agrees with full polynomial iteration wherever both are feasible
//! (tested). A windowed iterate that reads ≡ 0 means the true increment
//! exceeds q — the bound the whole section rests on — and aborts loudly.
//!
//! Escape grids iterate per cell in f64 with max-norm renormalization,
//! subtracting a_n·log|t| in log space: G_n = (ℓ_n − a_n log|t|)/dⁿ + log c,
//! where c is the rational content factored out of the lift. Stripping t^j
//! happens before any arithmetic, so G is bitwise invariant under A ↦ t^j·A
//! and shifts by exactly log|λ| (to double rounding) under A ↦ λ·A.

use num::complex::Complex64;
use num::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::RationalMapFamily;
use crate::numeric::{horner_c, poly_to_f64, PreparedFamily};
use crate::point::ProjPointK;
use crate::poly::Poly;
use crate::rational::{rat_gcd, rat_log2_abs, Rat};
use crate::roots::scaled_f64_coeffs;

/// Stored-coefficient budget for exact lift iteration.
const LIFT_COEFF_BUDGET: usize = 100_000;
/// Per-coefficient bit guard for exact lift iteration.
const LIFT_BIT_GUARD: u64 = 1 << 20;
/// Above this estimated coefficient-product count, Auto mode windows.
const EXACT_COST_LIMIT: usize = 4_000_000;
/// Samples per circle in the slow-growth diagnostic.
const CIRCLE_SAMPLES: usize = 64;
/// Monotonicity slack for the slow-growth diagnostic (10%).
const SLOW_GROWTH_SLACK: f64 = 1.1;
/// Relative tolerance deciding "numerically degenerate" in escape rates.
const RES_REL_TOL: f64 = 1e-12;

/// A lift A: 𝔻 → ℂ² of a marked point, normalized so that (A1(0), A2(0)) ≠
/// (0, 0) and the joint rational content is factored out. The stripped power
/// j and the content c are retained: orders transport as a_n ↦ a_n + j·dⁿ
/// and escape rates as G ↦ G + log c, both applied exactly.
#[derive(Clone, Debug)]
pub struct MarkedLift {
    b1: Poly,
    b2: Poly,
    stripped: usize,
    content: Rat,
}

impl MarkedLift {
    pub fn new(a1: Poly, a2: Poly) -> Result<MarkedLift> {
        if a1.is_zero() && a2.is_zero() {
            return Err(Error::domain("lift must be nonzero"));
        }
        let j = match (a1.ord0(), a2.ord0()) {
            (Some(u), Some(v)) => u.min(v),
            (Some(u), None) => u,
            (None, Some(v)) => v,
            (None, None) => unreachable!(),
        };
        let b1 = shift_down(&a1, j);
        let b2 = shift_down(&a2, j);
        let c = rat_gcd(&b1.content(), &b2.content());
        Ok(MarkedLift {
            b1: b1.mul_rat(&c.recip()),
            b2: b2.mul_rat(&c.recip()),
            stripped: j,
            content: c,
        })
    }

    pub fn from_point(a: &ProjPointK) -> MarkedLift {
        // Normalized points are coprime, hence already free of common t^j.
        MarkedLift::new(a.a1().clone(), a.a2().clone()).unwrap()
    }

    pub fn b1(&self) -> &Poly {
        &self.b1
    }

    pub fn b2(&self) -> &Poly {
        &self.b2
    }

    pub fn stripped(&self) -> usize {
        self.stripped
    }

    pub fn content(&self) -> &Rat {
        &self.content
    }

    fn ln_content(&self) -> f64 {
        rat_log2_abs(&self.content) * std::f64::consts::LN_2
    }
}

fn shift_down(p: &Poly, k: usize) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    Poly::from_coeffs(p.coeffs()[k..].to_vec())
}

#[derive(Clone, Debug)]
pub struct OrderSequence {
    /// q = ord_{t=0} res — the proved ceiling for every increment.
    pub q: usize,
    /// a_0..a_N.
    pub a: Vec<usize>,
    /// k_1..k_N (k_n = a_n − d·a_{n−1}).
    pub k: Vec<usize>,
    /// Set when this sequence was restarted from the exact iterate F_{n0}.
    pub restart_index: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderMode {
    /// Exact when the degree estimate is affordable, windowed otherwise.
    Auto,
    Exact,
    Truncated,
}

pub fn order_sequence(
    f: &RationalMapFamily,
    lift: &MarkedLift,
    n: usize,
    lenient: bool,
) -> Result<OrderSequence> {
    order_sequence_with_mode(f, lift, n, lenient, OrderMode::Auto)
}

pub fn order_sequence_with_mode(
    f: &RationalMapFamily,
    lift: &MarkedLift,
    n: usize,
    lenient: bool,
    mode: OrderMode,
) -> Result<OrderSequence> {
    let (seq, _) = run_orders(f, lift, n, lenient, mode)?;
    Ok(seq)
}

/// The proof-style restart: compute F_{n0} by exact iteration, re-mark it as
/// a fresh lift, and measure orders relative to it. The restarted a_i relate
/// to the original by a_{n0+i} = d^i·a_{n0} + a_i^{restarted}.
pub fn order_sequence_restarted(
    f: &RationalMapFamily,
    lift: &MarkedLift,
    n0: usize,
    n: usize,
    lenient: bool,
) -> Result<OrderSequence> {
    if n0 == 0 || n0 >= n {
        return Err(Error::domain("restart index must satisfy 0 < n0 < n"));
    }
    let (_, pair) = run_orders(f, lift, n0, lenient, OrderMode::Exact)?;
    let restarted = MarkedLift::new(pair.0, pair.1)?;
    debug_assert_eq!(restarted.stripped, 0);
    let (mut seq, _) = run_orders(f, &restarted, n - n0, lenient, OrderMode::Auto)?;
    seq.restart_index = Some(n0);
    Ok(seq)
}

fn run_orders(
    f: &RationalMapFamily,
    lift: &MarkedLift,
    n: usize,
    lenient: bool,
    mode: OrderMode,
) -> Result<(OrderSequence, (Poly, Poly))> {
    let q = f.res().ord_at(&Rat::zero())?;
    if q == 0 && !lenient {
        return Err(Error::domain(
            "family is not degenerate at t = 0 (q = 0); rerun in lenient mode",
        ));
    }
    let window = match mode {
        OrderMode::Exact => None,
        OrderMode::Truncated => Some(q * n + q + 1),
        OrderMode::Auto => {
            let d = f.d();
            let lift_deg = lift.b1.deg().unwrap_or(0).max(lift.b2.deg().unwrap_or(0));
            // Exact-mode work is dominated by composing onto degree-deg F^i(A)
            // iterates, ~ d·deg² coefficient products per step with
            // deg F^i(A) ≤ d^i·deg A + e·(d^i − 1)/(d − 1).
            let mut cost = 0usize;
            let mut dpow = 1usize;
            for _ in 0..n {
                dpow = dpow.saturating_mul(d);
                let di = dpow.saturating_mul(lift_deg)
                    + f.coeff_degree() * (dpow.saturating_sub(1)) / (d - 1);
                cost = cost.saturating_add(d.saturating_mul(di.saturating_mul(di)));
            }
            if cost <= EXACT_COST_LIMIT {
                None
            } else {
                Some(q * n + q + 1)
            }
        }
    };
    let mut b1 = lift.b1.clone();
    let mut b2 = lift.b2.clone();
    let mut win = window.unwrap_or(usize::MAX);
    if window.is_some() {
        b1 = b1.truncated(win);
        b2 = b2.truncated(win);
    }
    let mut a = vec![0usize];
    let mut k = Vec::with_capacity(n);
    let mut total_coeffs = b1.coeff_count() + b2.coeff_count();
    for step in 1..=n {
        let (c1, c2) = if window.is_some() {
            (
                f.p().eval_poly_trunc(&b1, &b2, win),
                f.q().eval_poly_trunc(&b1, &b2, win),
            )
        } else {
            // Check the budget before paying for the composition.
            let cur = b1.coeff_count().max(b2.coeff_count());
            let next = f.d().saturating_mul(cur) + f.coeff_degree() + 1;
            if total_coeffs + 2 * next > LIFT_COEFF_BUDGET {
                return Err(Error::resource(
                    step,
                    format!("lift coefficient budget {LIFT_COEFF_BUDGET} would be exceeded"),
                ));
            }
            (f.p().eval_poly(&b1, &b2), f.q().eval_poly(&b1, &b2))
        };
        let kk = match (c1.ord0(), c2.ord0()) {
            (Some(u), Some(v)) => u.min(v),
            (Some(u), None) => u,
            (None, Some(v)) => v,
            (None, None) => {
                return Err(Error::internal(format!(
                    "iterate vanished mod t^{win} at step {step}: order increment exceeds q = {q}"
                )));
            }
        };
        if kk > q {
            return Err(Error::internal(format!(
                "order increment k_{step} = {kk} exceeds q = {q}"
            )));
        }
        b1 = shift_down(&c1, kk);
        b2 = shift_down(&c2, kk);
        if window.is_some() {
            win -= kk;
            b1 = b1.truncated(win);
            b2 = b2.truncated(win);
        }
        let c = rat_gcd(&b1.content(), &b2.content());
        b1 = b1.mul_rat(&c.recip());
        b2 = b2.mul_rat(&c.recip());
        total_coeffs += b1.coeff_count() + b2.coeff_count();
        if total_coeffs > LIFT_COEFF_BUDGET {
            return Err(Error::resource(
                step,
                format!("lift coefficient budget {LIFT_COEFF_BUDGET} exceeded"),
            ));
        }
        if b1.max_coeff_bits().max(b2.max_coeff_bits()) > LIFT_BIT_GUARD {
            return Err(Error::resource(
                step,
                format!("lift coefficient size guard {LIFT_BIT_GUARD} bits exceeded"),
            ));
        }
        a.push(f.d() * a[step - 1] + kk);
        k.push(kk);
    }
    Ok((
        OrderSequence {
            q,
            a,
            k,
            restart_index: None,
        },
        (b1, b2),
    ))
}

#[derive(Clone, Debug)]
pub struct GridSpec {
    pub r_in: f64,
    pub r_out: f64,
    pub n_theta: usize,
    pub n_r: usize,
}

impl GridSpec {
    /// Radius of a row: geometric steps from r_in toward r_out.
    pub fn radius(&self, row: usize) -> f64 {
        self.r_in * (self.r_out / self.r_in).powf((row as f64 + 0.5) / self.n_r as f64)
    }

    /// Sample point of (row, col): geometric radius steps, uniform angles.
    pub fn center(&self, row: usize, col: usize) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * col as f64 / self.n_theta as f64;
        Complex64::from_polar(self.radius(row), theta)
    }
}

#[derive(Clone, Debug)]
pub struct EscapeGrid {
    pub spec: GridSpec,
    pub q: usize,
    /// The exact order sequence the log-space normalization used.
    pub a: Vec<usize>,
    /// values[n][row·n_theta + col]: G_n; rows = radii inner→outer.
    pub values: Vec<Vec<f64>>,
    /// Cells with any nonfinite G_n, row-major ascending.
    pub nan_cells: Vec<usize>,
}

impl EscapeGrid {
    /// sup over the grid of |G_{n+1} − G_n|, skipping flagged cells.
    pub fn sup_diff(&self, n: usize) -> f64 {
        let mut sup = 0.0f64;
        for (i, (u, v)) in self.values[n + 1].iter().zip(&self.values[n]).enumerate() {
            if self.nan_cells.binary_search(&i).is_err() {
                sup = sup.max((u - v).abs());
            }
        }
        sup
    }
}

pub fn escape_grid(
    f: &RationalMapFamily,
    lift: &MarkedLift,
    spec: &GridSpec,
    n: usize,
    lenient: bool,
) -> Result<EscapeGrid> {
    if !(spec.r_in > 0.0 && spec.r_in < spec.r_out) {
        return Err(Error::domain("annulus requires 0 < r_in < r_out"));
    }
    if spec.n_theta == 0 || spec.n_r == 0 || n == 0 {
        return Err(Error::domain("grid resolution and iterate count must be positive"));
    }
    let ord = order_sequence_with_mode(f, lift, n, lenient, OrderMode::Truncated)?;
    let pf = PreparedFamily::new(f);
    let b1 = poly_to_f64(&lift.b1);
    let b2 = poly_to_f64(&lift.b2);
    let ln_c = lift.ln_content();
    let cells = spec.n_r * spec.n_theta;
    let per_cell: Vec<Vec<f64>> = (0..cells)
        .into_par_iter()
        .map(|idx| {
            let row = idx / spec.n_theta;
            let t = spec.center(row, idx % spec.n_theta);
            cell_g(&pf, &b1, &b2, t, spec.radius(row).ln(), &ord.a, ln_c, n)
        })
        .collect();
    let mut values = vec![vec![0.0f64; cells]; n + 1];
    let mut nan_cells = Vec::new();
    for (idx, cell) in per_cell.iter().enumerate() {
        let mut bad = false;
        for (i, &g) in cell.iter().enumerate() {
            values[i][idx] = g;
            bad |= !g.is_finite();
        }
        if bad {
            nan_cells.push(idx);
        }
    }
    Ok(EscapeGrid {
        spec: spec.clone(),
        q: ord.q,
        a: ord.a,
        values,
        nan_cells,
    })
}

fn cell_g(
    pf: &PreparedFamily,
    b1: &[f64],
    b2: &[f64],
    t: Complex64,
    ln_r: f64,
    a: &[usize],
    ln_c: f64,
    n: usize,
) -> Vec<f64> {
    let sm = pf.specialize(t);
    let d = pf.d() as f64;
    let x0 = horner_c(b1, t);
    let y0 = horner_c(b2, t);
    let s0 = x0.norm().max(y0.norm());
    let (mut wx, mut wy) = (x0 / s0, y0 / s0);
    let mut ell = s0.ln();
    let mut dpow = 1.0f64;
    let mut out = Vec::with_capacity(n + 1);
    out.push(ell + ln_c); // a_0 = 0 for a stripped lift
    for i in 1..=n {
        let (nx, ny, dl) = sm.step(wx, wy);
        wx = nx;
        wy = ny;
        ell = d * ell + dl;
        dpow *= d;
        out.push((ell - a[i] as f64 * ln_r) / dpow + ln_c);
    }
    out
}

#[derive(Clone, Debug)]
pub struct SlowGrowthReport {
    pub radii: Vec<f64>,
    /// m(r) = max over the circle |t| = r of |G_N(t)|/|log r|.
    pub m: Vec<f64>,
    /// Nonincreasing within 10% slack.
    pub nonincreasing: bool,
    pub nonfinite_samples: usize,
}

pub fn slow_growth_diagnostic(
    f: &RationalMapFamily,
    lift: &MarkedLift,
    radii: &[f64],
    n: usize,
    lenient: bool,
) -> Result<SlowGrowthReport> {
    if radii.is_empty() || radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("radii must be strictly decreasing"));
    }
    if radii.iter().any(|&r| !(0.0 < r && r < 1.0)) {
        return Err(Error::domain("radii must lie in (0, 1)"));
    }
    let ord = order_sequence_with_mode(f, lift, n, lenient, OrderMode::Truncated)?;
    let pf = PreparedFamily::new(f);
    let b1 = poly_to_f64(&lift.b1);
    let b2 = poly_to_f64(&lift.b2);
    let ln_c = lift.ln_content();
    let mut m = Vec::with_capacity(radii.len());
    let mut nonfinite = 0usize;
    for &r in radii {
        let mut worst = 0.0f64;
        for j in 0..CIRCLE_SAMPLES {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / CIRCLE_SAMPLES as f64;
            let t = Complex64::from_polar(r, theta);
            let g = cell_g(&pf, &b1, &b2, t, r.ln(), &ord.a, ln_c, n)[n];
            if g.is_finite() {
                worst = worst.max(g.abs() / r.ln().abs());
            } else {
                nonfinite += 1;
            }
        }
        m.push(worst);
    }
    let nonincreasing = m.windows(2).all(|w| w[1] <= SLOW_GROWTH_SLACK * w[0]);
    Ok(SlowGrowthReport {
        radii: radii.to_vec(),
        m,
        nonincreasing,
        nonfinite_samples: nonfinite,
    })
}

#[derive(Clone, Debug)]
pub struct LemmaBoundReport {
    pub q: usize,
    /// min over samples of ‖F_t(w)‖ / |t|^q, ‖w‖ = 1.
    pub alpha_hat: f64,
    /// max over samples of ‖F_t(w)‖, ‖w‖ = 1.
    pub beta_hat: f64,
    pub violations: usize,
}

/// Empirical witnesses for the two-sided degenerate-fiber bound
/// α·|t|^q ≤ ‖F_t(z)‖/‖z‖^d ≤ β on max-norm-1 samples.
pub fn lemma_bound_check(
    f: &RationalMapFamily,
    t_samples: &[Complex64],
    z_samples: &[(Complex64, Complex64)],
) -> Result<LemmaBoundReport> {
    let q = f.res().ord_at(&Rat::zero())?;
    let pf = PreparedFamily::new(f);
    let mut alpha = f64::INFINITY;
    let mut beta = 0.0f64;
    let mut violations = 0usize;
    for &t in t_samples {
        if t.norm() == 0.0 {
            return Err(Error::domain("t samples must avoid t = 0"));
        }
        let sm = pf.specialize(t);
        let tq = t.norm().powi(q as i32);
        for &(z1, z2) in z_samples {
            let s = z1.norm().max(z2.norm());
            let (fx, fy) = sm.eval(z1 / s, z2 / s);
            let ratio = fx.norm().max(fy.norm());
            if ratio.is_finite() && ratio > 0.0 {
                beta = beta.max(ratio);
                alpha = alpha.min(ratio / tq);
            } else {
                violations += 1;
            }
        }
    }
    Ok(LemmaBoundReport {
        q,
        alpha_hat: alpha,
        beta_hat: beta,
        violations,
    })
}

/// G_N(z) = d^{−N} log‖F_t^N(z)‖ for one nondegenerate parameter.
pub fn homogeneous_escape_rate(
    f: &RationalMapFamily,
    t: Complex64,
    z: (Complex64, Complex64),
    n: usize,
) -> Result<f64> {
    let res_scaled = scaled_f64_coeffs(f.res());
    let value = horner_c(&res_scaled, t).norm();
    let bound: f64 = res_scaled
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs() * t.norm().powi(i as i32))
        .sum();
    if value <= RES_REL_TOL * bound {
        return Err(Error::domain(
            "parameter is numerically degenerate (|res(t)| below tolerance)",
        ));
    }
    let s = z.0.norm().max(z.1.norm());
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::domain("z must be a finite nonzero pair"));
    }
    let sm = PreparedFamily::new(f).specialize(t);
    let (mut wx, mut wy) = (z.0 / s, z.1 / s);
    let mut ell = s.ln();
    let d = f.d() as f64;
    for _ in 0..n {
        let (nx, ny, dl) = sm.step(wx, wy);
        wx = nx;
        wy = ny;
        ell = d * ell + dl;
    }
    Ok(ell / d.powi(n as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::testkit::{lattes, quadratic};

    fn lift_ints(a1: &[i64], a2: &[i64]) -> MarkedLift {
        MarkedLift::new(Poly::from_ints(a1), Poly::from_ints(a2)).unwrap()
    }

    #[test]
    fn marked_lift_normalization() {
        // (2t³ + 2t², 4t²) → strip t², content 2 → (t + 1, 2)
        let l = lift_ints(&[0, 0, 2, 2], &[0, 0, 4]);
        assert_eq!(l.stripped(), 2);
        assert_eq!(l.content(), &rat_int(2));
        assert_eq!(l.b1(), &Poly::from_ints(&[1, 1]));
        assert_eq!(l.b2(), &Poly::from_ints(&[2]));
        assert!(MarkedLift::new(Poly::zero(), Poly::zero()).is_err());
    }

    #[test]
    fn lattes_zero_lift_orders() {
        let f = lattes();
        let seq = order_sequence(&f, &lift_ints(&[0], &[1]), 5, false).unwrap();
        assert_eq!(seq.a[1], 2); // F(0,1) = (t², 0)
        assert!(seq.k[1..].iter().all(|&k| k == 0)); // rides the fixed point ∞
        assert_eq!(seq.a, vec![0, 2, 8, 32, 128, 512]);
        assert_eq!(seq.q, f.res().ord_at(&Rat::zero()).unwrap());
        assert!(seq.q >= 2);
    }

    #[test]
    fn lattes_generic_lift_respects_bounds() {
        let f = lattes();
        let seq = order_sequence(&f, &lift_ints(&[2], &[1]), 6, false).unwrap();
        assert_eq!(seq.a[0], 0);
        assert_eq!(seq.k.len(), 6);
        for (i, &k) in seq.k.iter().enumerate() {
            assert!(k <= seq.q, "k_{} = {k} > q = {}", i + 1, seq.q);
            assert_eq!(seq.a[i + 1], 4 * seq.a[i] + k);
        }
    }

    #[test]
    fn orders_match_direct_substitution() {
        // Independent oracle: iterate the raw forms without stripping and
        // read ord_0 of each full iterate directly.
        let f = lattes();
        let mut b1 = Poly::from_ints(&[3]);
        let mut b2 = Poly::from_ints(&[1]);
        let mut oracle = vec![0usize];
        for _ in 0..3 {
            let c1 = f.p().eval_poly(&b1, &b2);
            let c2 = f.q().eval_poly(&b1, &b2);
            let o1 = c1.ord0().unwrap_or(usize::MAX);
            let o2 = c2.ord0().unwrap_or(usize::MAX);
            oracle.push(o1.min(o2));
            b1 = c1;
            b2 = c2;
        }
        let seq = order_sequence(&f, &lift_ints(&[3], &[1]), 3, false).unwrap();
        assert_eq!(seq.a, oracle);
    }

    #[test]
    fn quadratic_needs_lenient() {
        let f = quadratic();
        let l = lift_ints(&[5], &[1]);
        assert!(order_sequence(&f, &l, 4, false).is_err());
        let seq = order_sequence(&f, &l, 4, true).unwrap();
        assert_eq!(seq.q, 0);
        assert!(seq.a.iter().all(|&a| a == 0));
        assert!(seq.k.iter().all(|&k| k == 0));
    }

    #[test]
    fn truncated_matches_exact() {
        let f = lattes();
        for lift in [lift_ints(&[2], &[1]), lift_ints(&[0], &[1]), lift_ints(&[0, 1], &[1])] {
            let e = order_sequence_with_mode(&f, &lift, 4, false, OrderMode::Exact).unwrap();
            let w = order_sequence_with_mode(&f, &lift, 4, false, OrderMode::Truncated).unwrap();
            assert_eq!(e.a, w.a);
            assert_eq!(e.k, w.k);
        }
        let flipped = crate::family::flip(&quadratic()).unwrap();
        let e = order_sequence_with_mode(&flipped, &lift_ints(&[2], &[1]), 8, false, OrderMode::Exact)
            .unwrap();
        let w = order_sequence_with_mode(
            &flipped,
            &lift_ints(&[2], &[1]),
            8,
            false,
            OrderMode::Truncated,
        )
        .unwrap();
        assert_eq!(e.a, w.a);
    }

    #[test]
    fn restart_stitches_exactly() {
        let f = lattes();
        let lift = lift_ints(&[2], &[1]);
        let full = order_sequence(&f, &lift, 6, false).unwrap();
        for n0 in [1usize, 2, 3] {
            let re = order_sequence_restarted(&f, &lift, n0, 6, false).unwrap();
            assert_eq!(re.restart_index, Some(n0));
            assert!(re.k.iter().all(|&k| k <= re.q));
            let mut dpow = 1usize;
            for i in 0..=6 - n0 {
                assert_eq!(full.a[n0 + i], dpow * full.a[n0] + re.a[i]);
                dpow *= 4;
            }
        }
    }

    #[test]
    fn escape_grid_gauges() {
        let f = lattes();
        let spec = GridSpec {
            r_in: 0.1,
            r_out: 0.5,
            n_theta: 8,
            n_r: 4,
        };
        let base = escape_grid(&f, &lift_ints(&[2], &[1]), &spec, 6, false).unwrap();
        assert!(base.nan_cells.is_empty());

        // t³·A: bitwise identical.
        let shifted = escape_grid(&f, &lift_ints(&[0, 0, 0, 2], &[0, 0, 0, 1]), &spec, 6, false)
            .unwrap();
        for n in 0..=6 {
            assert_eq!(base.values[n], shifted.values[n]);
        }

        // (3/2)·A: every value moves by exactly ln(3/2) up to double rounding.
        let lam_lift =
            MarkedLift::new(Poly::from_ints(&[3]), Poly::from_coeffs(vec![rat(3, 2)])).unwrap();
        assert_eq!(lam_lift.b1(), &Poly::from_ints(&[2]));
        assert_eq!(lam_lift.content(), &rat(3, 2));
        let lam = escape_grid(&f, &lam_lift, &spec, 6, false).unwrap();
        let shift = 1.5f64.ln();
        for n in 0..=6 {
            for (u, v) in lam.values[n].iter().zip(&base.values[n]) {
                assert!(((u - v) - shift).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn escape_grid_converges() {
        // Generic lift: the orbit of 3 never rides the fixed point ∞, so the
        // increments show the plain geometric d^{−n} decay from the start.
        let f = lattes();
        let spec = GridSpec {
            r_in: 0.1,
            r_out: 0.5,
            n_theta: 16,
            n_r: 8,
        };
        let g = escape_grid(&f, &lift_ints(&[3], &[1]), &spec, 6, false).unwrap();
        for n in 0..=5 {
            println!("sup_diff({n}) = {:e}", g.sup_diff(n));
        }
        assert!(g.sup_diff(5) < g.sup_diff(2));
        assert!(g.sup_diff(5) < 0.01);
    }

    #[test]
    fn slow_growth_trend() {
        let f = lattes();
        let radii = [1e-1, 1e-2, 1e-3, 1e-4];
        let rep =
            slow_growth_diagnostic(&f, &lift_ints(&[2], &[1]), &radii, 6, false).unwrap();
        assert_eq!(rep.nonfinite_samples, 0);
        assert!(rep.nonincreasing, "m = {:?}", rep.m);
        assert!(rep.m[3] < rep.m[0]);

        let q = quadratic();
        let rep = slow_growth_diagnostic(&q, &lift_ints(&[5], &[1]), &radii, 6, true).unwrap();
        assert!(rep.nonincreasing);
        assert!(rep.m[3] < 0.5);
    }

    #[test]
    fn lemma_bounds_witnessed() {
        let f = lattes();
        let mut ts = Vec::new();
        let mut zs = Vec::new();
        for i in 0..20 {
            let ang = 0.37 * i as f64;
            ts.push(Complex64::from_polar(0.001 + 0.004 * i as f64, ang));
            zs.push((
                Complex64::from_polar(1.0, 1.3 * ang),
                Complex64::from_polar(0.3 + 0.03 * i as f64, -0.7 * ang),
            ));
        }
        let rep = lemma_bound_check(&f, &ts, &zs).unwrap();
        assert_eq!(rep.violations, 0);
        assert!(rep.alpha_hat > 0.0);
        assert!(rep.beta_hat.is_finite());
        assert!(rep.q >= 2);
    }

    #[test]
    fn lemma_ratio_scale_invariant() {
        // Doubling z leaves ‖F_t(z)‖/‖z‖^d bitwise unchanged: power-of-two
        // scaling is exact in IEEE 754 and commutes with rounding.
        let f = quadratic();
        let pf = PreparedFamily::new(&f);
        let sm = pf.specialize(Complex64::new(0.3, -0.2));
        let z = (Complex64::new(0.6, 0.1), Complex64::new(-0.4, 0.9));
        let ratio = |z: (Complex64, Complex64)| {
            let s = z.0.norm().max(z.1.norm());
            let (a, b) = sm.eval(z.0 / s, z.1 / s);
            a.norm().max(b.norm())
        };
        assert_eq!(ratio(z), ratio((z.0 * 2.0, z.1 * 2.0)));
    }

    #[test]
    fn escape_rate_functional_equation() {
        let f = lattes();
        let pf = PreparedFamily::new(&f);
        let t = Complex64::new(0.4, 0.1);
        let sm = pf.specialize(t);
        for seed in 0..5 {
            let z = (
                Complex64::from_polar(1.0, 0.9 * seed as f64),
                Complex64::from_polar(0.7, -1.1 * seed as f64),
            );
            let g = homogeneous_escape_rate(&f, t, z, 30).unwrap();
            let fz = sm.eval(z.0, z.1);
            let gf = homogeneous_escape_rate(&f, t, fz, 30).unwrap();
            assert!((gf - 4.0 * g).abs() < 1e-6, "seed {seed}: {gf} vs {}", 4.0 * g);
            let a = Complex64::new(0.37, 1.1);
            let ga = homogeneous_escape_rate(&f, t, (z.0 * a, z.1 * a), 30).unwrap();
            assert!((ga - g - a.norm().ln()).abs() < 1e-6);
            let g20 = homogeneous_escape_rate(&f, t, z, 20).unwrap();
            assert!((g20 - g).abs() < 1e-4);
        }
    }

    #[test]
    fn escape_rate_rejects_degenerate_parameter() {
        let f = lattes();
        let z = (Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0));
        assert!(homogeneous_escape_rate(&f, Complex64::new(0.0, 0.0), z, 10).is_err());
        assert!(homogeneous_escape_rate(&f, Complex64::new(1.0, 0.0), z, 10).is_err());
    }
}
