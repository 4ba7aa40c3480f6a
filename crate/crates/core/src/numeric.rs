//! Floating-point layer: families specialized at complex parameters,
//! renormalized projective iteration, variational (derivative) iteration,
//! and the chordal metric on ℙ¹(ℂ).
//!
//! Every step renormalizes by the max-norm, so coordinates stay in the unit
//! bidisk and growth is carried through accumulated logarithms instead of raw
//! magnitudes. The variational step scales the point and its t-derivative by
//! one common factor; both diagnostics built on it (the activity indicator
//! |x′y − xy′|/|y|² and the ratio E/E′ of a preperiodic-parameter equation)
//! are invariant under exactly that scaling. Nothing here produces an exact
//! verdict — candidates go back through the rational layer for that.

use num::complex::Complex64;

use crate::family::RationalMapFamily;
use crate::point::ProjPointK;
use crate::poly::Poly;
use crate::rational::rat_to_f64;

pub fn poly_to_f64(p: &Poly) -> Vec<f64> {
    p.coeffs().iter().map(rat_to_f64).collect()
}

pub fn horner_c(coeffs: &[f64], t: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        acc = acc * t + a;
    }
    acc
}

fn powers(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(Complex64::new(1.0, 0.0));
    for i in 1..=n {
        v.push(v[i - 1] * z);
    }
    v
}

/// Scale a pair to max-norm 1.
pub fn normalized(x: Complex64, y: Complex64) -> (Complex64, Complex64) {
    let s = x.norm().max(y.norm());
    (x / s, y / s)
}

/// Chordal distance |z₁w₂ − z₂w₁| / (‖(z₁,w₁)‖₂‖(z₂,w₂)‖₂) on ℙ¹(ℂ).
pub fn chordal(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    let num = (a.0 * b.1 - a.1 * b.0).norm();
    let na = (a.0.norm_sqr() + a.1.norm_sqr()).sqrt();
    let nb = (b.0.norm_sqr() + b.1.norm_sqr()).sqrt();
    num / (na * nb)
}

/// Family with its coefficient polynomials (and their t-derivatives) lowered
/// to f64, ready to specialize at many parameters cheaply.
#[derive(Clone, Debug)]
pub struct PreparedFamily {
    d: usize,
    p: Vec<Vec<f64>>,
    q: Vec<Vec<f64>>,
    dp: Vec<Vec<f64>>,
    dq: Vec<Vec<f64>>,
}

impl PreparedFamily {
    pub fn new(f: &RationalMapFamily) -> PreparedFamily {
        let lower = |polys: &[Poly]| -> Vec<Vec<f64>> { polys.iter().map(poly_to_f64).collect() };
        let lower_d = |polys: &[Poly]| -> Vec<Vec<f64>> {
            polys.iter().map(|p| poly_to_f64(&p.derivative())).collect()
        };
        PreparedFamily {
            d: f.d(),
            p: lower(f.p().coeffs()),
            q: lower(f.q().coeffs()),
            dp: lower_d(f.p().coeffs()),
            dq: lower_d(f.q().coeffs()),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn specialize(&self, t: Complex64) -> SpecializedMap {
        SpecializedMap {
            d: self.d,
            p: self.p.iter().map(|c| horner_c(c, t)).collect(),
            q: self.q.iter().map(|c| horner_c(c, t)).collect(),
        }
    }

    pub fn specialize_with_derivative(&self, t: Complex64) -> SpecializedDeriv {
        SpecializedDeriv {
            d: self.d,
            p: self.p.iter().map(|c| horner_c(c, t)).collect(),
            q: self.q.iter().map(|c| horner_c(c, t)).collect(),
            dp: self.dp.iter().map(|c| horner_c(c, t)).collect(),
            dq: self.dq.iter().map(|c| horner_c(c, t)).collect(),
        }
    }
}

/// f_t for one fixed t: coefficient lists of the two forms.
#[derive(Clone, Debug)]
pub struct SpecializedMap {
    d: usize,
    p: Vec<Complex64>,
    q: Vec<Complex64>,
}

impl SpecializedMap {
    pub fn eval(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let xp = powers(x, self.d);
        let yp = powers(y, self.d);
        let mut nx = Complex64::new(0.0, 0.0);
        let mut ny = Complex64::new(0.0, 0.0);
        for j in 0..=self.d {
            let mono = xp[self.d - j] * yp[j];
            nx += self.p[j] * mono;
            ny += self.q[j] * mono;
        }
        (nx, ny)
    }

    /// One renormalized step; also returns ln of the factor divided out.
    pub fn step(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64, f64) {
        let (nx, ny) = self.eval(x, y);
        let s = nx.norm().max(ny.norm());
        (nx / s, ny / s, s.ln())
    }

    /// Renormalized forward orbit (n+1 pairs, max-norm 1 each).
    pub fn orbit(&self, x: Complex64, y: Complex64, n: usize) -> Vec<(Complex64, Complex64)> {
        let (mut cx, mut cy) = normalized(x, y);
        let mut out = Vec::with_capacity(n + 1);
        out.push((cx, cy));
        for _ in 0..n {
            let (a, b, _) = self.step(cx, cy);
            cx = a;
            cy = b;
            out.push((cx, cy));
        }
        out
    }
}

/// A point of ℙ¹(ℂ) together with its t-derivative, renormalized jointly.
#[derive(Clone, Copy, Debug)]
pub struct VarState {
    pub x: Complex64,
    pub y: Complex64,
    pub dx: Complex64,
    pub dy: Complex64,
}

impl VarState {
    /// |(x/y)′| = |x′y − xy′|/|y|², the derivative magnitude in the affine
    /// chart. An exactly zero numerator short-circuits to 0 so that constant
    /// orbits (and fixed ∞) read as inactive even when y = 0.
    pub fn chart_derivative(&self) -> f64 {
        let num = (self.dx * self.y - self.x * self.dy).norm();
        if num == 0.0 {
            return 0.0;
        }
        num / self.y.norm_sqr()
    }
}

/// f_t plus ∂f_t/∂t for one fixed t: drives the variational recurrence.
#[derive(Clone, Debug)]
pub struct SpecializedDeriv {
    d: usize,
    p: Vec<Complex64>,
    q: Vec<Complex64>,
    dp: Vec<Complex64>,
    dq: Vec<Complex64>,
}

impl SpecializedDeriv {
    /// (x, y, x′, y′) ↦ (P(x,y), Q(x,y), d/dt P, d/dt Q), renormalized by one
    /// common factor. Every monomial on the right is degree d in the state,
    /// so a state that is σ·(truth) steps to σ^d/s·(truth) — proportionality
    /// is preserved and the two scale-invariant diagnostics are unaffected.
    pub fn step(&self, s: &VarState) -> VarState {
        let d = self.d;
        let xp = powers(s.x, d);
        let yp = powers(s.y, d);
        let zero = Complex64::new(0.0, 0.0);
        let (mut nx, mut ny, mut ndx, mut ndy) = (zero, zero, zero, zero);
        for j in 0..=d {
            let mono = xp[d - j] * yp[j];
            nx += self.p[j] * mono;
            ny += self.q[j] * mono;
            ndx += self.dp[j] * mono;
            ndy += self.dq[j] * mono;
            if j < d {
                let m = xp[d - j - 1] * yp[j] * s.dx * (d - j) as f64;
                ndx += self.p[j] * m;
                ndy += self.q[j] * m;
            }
            if j > 0 {
                let m = xp[d - j] * yp[j - 1] * s.dy * j as f64;
                ndx += self.p[j] * m;
                ndy += self.q[j] * m;
            }
        }
        let sc = nx
            .norm()
            .max(ny.norm())
            .max(ndx.norm())
            .max(ndy.norm());
        VarState {
            x: nx / sc,
            y: ny / sc,
            dx: ndx / sc,
            dy: ndy / sc,
        }
    }
}

/// Marked point lowered to f64 along with its t-derivative.
#[derive(Clone, Debug)]
pub struct PreparedPoint {
    a1: Vec<f64>,
    a2: Vec<f64>,
    da1: Vec<f64>,
    da2: Vec<f64>,
}

impl PreparedPoint {
    pub fn new(a: &ProjPointK) -> PreparedPoint {
        PreparedPoint {
            a1: poly_to_f64(a.a1()),
            a2: poly_to_f64(a.a2()),
            da1: poly_to_f64(&a.a1().derivative()),
            da2: poly_to_f64(&a.a2().derivative()),
        }
    }

    pub fn pair(&self, t: Complex64) -> (Complex64, Complex64) {
        (horner_c(&self.a1, t), horner_c(&self.a2, t))
    }

    /// Initial variational state (a(t), a′(t)), scaled so the point part has
    /// max-norm 1. Coprimality of (a1, a2) keeps the scale nonzero.
    pub fn var_state(&self, t: Complex64) -> VarState {
        let x = horner_c(&self.a1, t);
        let y = horner_c(&self.a2, t);
        let dx = horner_c(&self.da1, t);
        let dy = horner_c(&self.da2, t);
        let sc = x.norm().max(y.norm());
        VarState {
            x: x / sc,
            y: y / sc,
            dx: dx / sc,
            dy: dy / sc,
        }
    }
}
