//! Deterministic serialization of every result type.
//!
//! Three formats, all byte-exact across runs:
//!
//! * **Text document** — one `key: value` line per entry, keys emitted in
//!   lexicographic order, list values bracketed in computation order, exact
//!   rationals printed as `p/q`.
//! * **CSV** — header row, `,` separator, floats with 17 significant digits
//!   (lossless double round-trip).
//! * **PGM** — binary `P5`, maxval 255, rows top to bottom, pixel value
//!   `min(255, round(255·i/cap))` for first-activity index `i`.

use std::fmt::{Display, Write as _};

use num::complex::Complex64;

use crate::bifurcation::{ActivityMap, DensityReport, RootSet, VerifiedRoot};
use crate::degeneration::{EscapeGrid, OrderSequence};
use crate::dynamics::{Classification, HeightEnclosure, Orbit};
use crate::family::{PlaceReport, PlaceValue, RationalMapFamily};
use crate::parse::print_point;

/// A `key: value` document rendered with sorted keys.
#[derive(Default)]
pub struct Doc {
    entries: Vec<(String, String)>,
}

impl Doc {
    pub fn new() -> Doc {
        Doc::default()
    }

    pub fn put(&mut self, key: &str, value: impl Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn put_list<T: Display>(&mut self, key: &str, items: impl IntoIterator<Item = T>) {
        let body = items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
        self.put(key, format!("[{body}]"));
    }

    pub fn render(&self) -> String {
        let mut sorted: Vec<&(String, String)> = self.entries.iter().collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = String::new();
        for (k, v) in sorted {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }
}

/// Shortest string that round-trips; exponent form outside [1e-4, 1e16).
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    if (1e-4..1e16).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// CSV float: 17 significant digits, enough for an exact double round-trip.
pub fn csv_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() && !z.im.is_nan() {
        format!("{}-{}i", fmt_f64(z.re), fmt_f64(-z.im))
    } else {
        format!("{}+{}i", fmt_f64(z.re), fmt_f64(z.im))
    }
}

fn enclosure_into(d: &mut Doc, prefix: &str, h: &HeightEnclosure) {
    d.put(&format!("{prefix}lo"), &h.lo);
    d.put(&format!("{prefix}hi"), &h.hi);
    d.put(&format!("{prefix}width"), h.width());
    d.put(&format!("{prefix}n_used"), h.n_used);
    d.put_list(&format!("{prefix}degree_sequence"), &h.degree_sequence);
    d.put(&format!("{prefix}max_step_deviation"), h.max_step_deviation);
}

pub fn height_doc(h: &HeightEnclosure) -> String {
    let mut d = Doc::new();
    enclosure_into(&mut d, "", h);
    d.render()
}

pub fn orbit_doc(o: &Orbit) -> String {
    let mut d = Doc::new();
    d.put_list("points", o.points.iter().map(print_point));
    d.put_list("degrees", o.degrees());
    d.put_list("drops", &o.drops);
    match o.cycle {
        Some((m, p)) => d.put("cycle", format!("({m}, {p})")),
        None => d.put("cycle", "none"),
    }
    d.put("max_step_deviation", o.max_step_deviation);
    d.render()
}

pub fn classification_doc(c: &Classification) -> String {
    let mut d = Doc::new();
    match c {
        Classification::Preperiodic { preperiod, period } => {
            d.put("kind", "preperiodic");
            d.put("preperiod", preperiod);
            d.put("period", period);
        }
        Classification::PositiveHeight(h) => {
            d.put("kind", "positive-height");
            enclosure_into(&mut d, "enclosure.", h);
        }
        Classification::Undetermined { enclosure, cap } => {
            d.put("kind", "undetermined");
            d.put("cap", cap);
            enclosure_into(&mut d, "enclosure.", enclosure);
        }
    }
    d.render()
}

pub fn places_doc(f: &RationalMapFamily, rep: &PlaceReport) -> String {
    let mut d = Doc::new();
    d.put("d", f.d());
    d.put("coeff_degree", f.coeff_degree());
    d.put("resultant", f.res());
    d.put_list(
        "finite_places",
        rep.finite_places.iter().map(|p| {
            let v = match &p.value {
                PlaceValue::Exact(r) => r.to_string(),
                PlaceValue::Numeric(z) => fmt_complex(*z),
            };
            format!("{v} (q = {})", p.q)
        }),
    );
    d.put("q_infinity", rep.q_infinity);
    d.put("d_total", rep.d_total);
    d.render()
}

pub fn orders_doc(o: &OrderSequence) -> String {
    let mut d = Doc::new();
    d.put("q", o.q);
    d.put_list("a", &o.a);
    d.put_list("k", &o.k);
    match o.restart_index {
        Some(i) => d.put("restart_index", i),
        None => d.put("restart_index", "none"),
    }
    d.render()
}

pub fn escape_doc(g: &EscapeGrid) -> String {
    let mut d = Doc::new();
    d.put("r_in", fmt_f64(g.spec.r_in));
    d.put("r_out", fmt_f64(g.spec.r_out));
    d.put("n_theta", g.spec.n_theta);
    d.put("n_r", g.spec.n_r);
    d.put("q", g.q);
    d.put_list("a", &g.a);
    d.put("levels", g.values.len());
    d.put("nan_cells", g.nan_cells.len());
    d.put_list(
        "sup_diff",
        (0..g.values.len().saturating_sub(1)).map(|n| fmt_f64(g.sup_diff(n))),
    );
    d.render()
}

fn root_item(r: &VerifiedRoot) -> String {
    format!("{} (mult {}, residual {})", fmt_complex(r.t), r.multiplicity, fmt_f64(r.residual))
}

pub fn rootset_doc(rs: &RootSet) -> String {
    let mut d = Doc::new();
    d.put("n", rs.n);
    d.put("m", rs.m);
    d.put("tol", fmt_f64(rs.tol));
    d.put("equation_degree", rs.equation_degree);
    d.put("verified_count", rs.verified.len());
    d.put("unverified_count", rs.unverified.len());
    d.put_list("verified", rs.verified.iter().map(root_item));
    d.put_list("unverified", rs.unverified.iter().map(root_item));
    d.render()
}

pub fn activity_doc(m: &ActivityMap) -> String {
    let mut d = Doc::new();
    d.put("x0", fmt_f64(m.grid.x0));
    d.put("y0", fmt_f64(m.grid.y0));
    d.put("x1", fmt_f64(m.grid.x1));
    d.put("y1", fmt_f64(m.grid.y1));
    d.put("width", m.grid.width);
    d.put("height", m.grid.height);
    d.put("cap", m.cap);
    d.put("threshold", fmt_f64(m.threshold));
    d.put("active_count", m.active_count());
    d.put("nan_cells", m.nan_cells.len());
    d.render()
}

pub fn density_doc(rep: &DensityReport) -> String {
    let mut d = Doc::new();
    d.put("active_pixels", rep.active_pixels);
    d.put("median_nonincreasing", rep.median_nonincreasing);
    d.put("pairs", rep.entries.len());
    for (i, e) in rep.entries.iter().enumerate() {
        let body = if e.identically_preperiodic {
            format!("(n = {}, m = {}) identically preperiodic", e.n, e.m)
        } else {
            format!(
                "(n = {}, m = {}) verified {}, in_rect {}, fraction {}, median_distance {}",
                e.n,
                e.m,
                e.verified_roots,
                e.roots_in_rect,
                fmt_f64(e.fraction_in_rect),
                fmt_f64(e.median_active_distance)
            )
        };
        d.put(&format!("pair_{i:04}"), body);
    }
    d.render()
}

pub fn activity_csv(m: &ActivityMap) -> String {
    let mut out = String::from("row,col,re,im,value\n");
    for row in 0..m.grid.height {
        for col in 0..m.grid.width {
            let t = m.grid.center(row, col);
            let v = m.values[row * m.grid.width + col];
            let _ = writeln!(out, "{row},{col},{},{},{v}", csv_f64(t.re), csv_f64(t.im));
        }
    }
    out
}

pub fn escape_csv(g: &EscapeGrid) -> String {
    let mut out = String::from("re_t,im_t,n,g_n\n");
    for (n, level) in g.values.iter().enumerate() {
        for (idx, v) in level.iter().enumerate() {
            let t = g.spec.center(idx / g.spec.n_theta, idx % g.spec.n_theta);
            let _ = writeln!(out, "{},{},{n},{}", csv_f64(t.re), csv_f64(t.im), csv_f64(*v));
        }
    }
    out
}

pub fn activity_pgm(m: &ActivityMap) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", m.grid.width, m.grid.height).into_bytes();
    for &v in &m.values {
        let shade = (255.0 * v as f64 / m.cap as f64).round().min(255.0);
        out.push(shade as u8);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bifurcation::{self, ParamGrid};
    use crate::degeneration::{self, GridSpec, MarkedLift};
    use crate::dynamics;
    use crate::point::ProjPointK;
    use crate::poly::Poly;
    use crate::testkit::{lattes, pt_rat, quadratic};

    fn tiny_map() -> ActivityMap {
        ActivityMap {
            grid: ParamGrid::new(-1.0, -1.0, 1.0, 1.0, 2, 2).unwrap(),
            values: vec![0, 1, 128, 256],
            cap: 256,
            threshold: 1e12,
            nan_cells: vec![],
        }
    }

    #[test]
    fn doc_sorts_keys_and_preserves_list_order() {
        let mut d = Doc::new();
        d.put("zeta", 1);
        d.put("alpha", "x");
        d.put_list("mid", [3, 1, 2]);
        assert_eq!(d.render(), "alpha: x\nmid: [3, 1, 2]\nzeta: 1\n");
    }

    #[test]
    fn float_formats() {
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(7.5e-13), "7.5e-13");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(csv_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(csv_f64(-0.5), "-5.0000000000000000e-1");
        assert_eq!(fmt_complex(Complex64::new(-4.0, 4.0)), "-4+4i");
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.5)), "0-1.5i");
    }

    #[test]
    fn height_doc_is_sorted_and_complete() {
        let h = dynamics::canonical_height(&quadratic(), &pt_rat(2, 1), 6).unwrap();
        let doc = height_doc(&h);
        let lines: Vec<&str> = doc.lines().collect();
        let mut sorted = lines.clone();
        sorted.sort_unstable();
        assert_eq!(lines, sorted);
        assert!(doc.contains(&format!("width: {}\n", h.width())));
        assert!(doc.contains("n_used: 6\n"));
    }

    #[test]
    fn orbit_and_classification_docs() {
        let f = quadratic();
        let orb = dynamics::orbit(&f, &ProjPointK::infinity(), 8).unwrap();
        let doc = orbit_doc(&orb);
        assert!(doc.starts_with("cycle: (0, 1)\n"));
        assert!(doc.contains("points: [inf, inf]\n"));

        let c = dynamics::classify(&f, &ProjPointK::infinity(), 8).unwrap();
        assert!(classification_doc(&c).contains("kind: preperiodic\n"));
        let c = dynamics::classify(&f, &pt_rat(2, 1), 8).unwrap();
        let doc = classification_doc(&c);
        assert!(doc.contains("kind: positive-height\n"));
        assert!(doc.contains("enclosure.lo: "));
    }

    #[test]
    fn places_and_orders_docs() {
        let f = lattes();
        let rep = crate::family::degenerate_places(&f).unwrap();
        let doc = places_doc(&f, &rep);
        assert!(doc.contains("d: 4\n"));
        assert!(doc.contains("finite_places: [0 (q = "));

        let o = OrderSequence { q: 2, a: vec![0, 1, 2], k: vec![1, 0], restart_index: None };
        assert_eq!(orders_doc(&o), "a: [0, 1, 2]\nk: [1, 0]\nq: 2\nrestart_index: none\n");
    }

    #[test]
    fn rootset_doc_counts() {
        let rs = bifurcation::preperiodic_parameters(&quadratic(), &pt_rat(0, 1), 2, 0, 1e-6)
            .unwrap();
        let doc = rootset_doc(&rs);
        assert!(doc.contains("equation_degree: 2\n"));
        assert!(doc.contains("verified_count: 2\n"));
        assert!(doc.contains("unverified_count: 0\n"));
    }

    #[test]
    fn pgm_layout() {
        let bytes = activity_pgm(&tiny_map());
        assert_eq!(&bytes[..11], b"P5\n2 2\n255\n");
        assert_eq!(&bytes[11..], &[0u8, 1, 128, 255]);
    }

    #[test]
    fn activity_csv_rows() {
        let csv = activity_csv(&tiny_map());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "row,col,re,im,value");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1], "0,0,-5.0000000000000000e-1,5.0000000000000000e-1,0");
        assert!(lines[4].starts_with("1,1,") && lines[4].ends_with(",256"));
    }

    #[test]
    fn escape_csv_covers_all_levels() {
        let lift = MarkedLift::new(Poly::from_ints(&[1]), Poly::from_ints(&[1])).unwrap();
        let spec = GridSpec { r_in: 0.1, r_out: 0.5, n_theta: 4, n_r: 2 };
        let g = degeneration::escape_grid(&quadratic(), &lift, &spec, 3, true).unwrap();
        let csv = escape_csv(&g);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "re_t,im_t,n,g_n");
        assert_eq!(lines.len(), 1 + g.values.len() * 8);
        assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 4));
        assert!(escape_doc(&g).contains("q: 0\n"));
    }

    #[test]
    fn density_doc_orders_pairs() {
        let grid = ParamGrid::new(-0.2, -0.2, 0.2, 0.2, 4, 4).unwrap();
        let rep =
            bifurcation::density_experiment(&quadratic(), &pt_rat(0, 1), &grid, &[(1, 0), (2, 0)])
                .unwrap();
        let doc = density_doc(&rep);
        assert!(doc.contains("pairs: 2\n"));
        assert!(doc.contains("pair_0000: (n = 1, m = 0)"));
        assert!(doc.contains("pair_0001: (n = 2, m = 0)"));
    }
}
