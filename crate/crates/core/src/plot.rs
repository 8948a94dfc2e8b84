//! Standalone SVG 1.1 figures.
//!
//! Curves are drawn in data coordinates inside a transformed group, so the
//! numbers in `points`, `cx`, `cy` and `r` are the plotted values themselves.
//! Strokes use `vector-effect="non-scaling-stroke"` to stay one pixel wide.

use crate::coeff::bound;
use crate::coeff::Coefficient;
use crate::error::{domain, Error, Result};
use crate::harmonic::{evaluate, harmonic_koebe, section};
use crate::numerics::SolverConfig;
use crate::oracle::guaranteed_radius;
use crate::radii::{radius_root, x_n_and_rl, Family, ReferenceCurve};
use num_complex::Complex64;
use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

/// Closed axis-aligned box in data coordinates.
#[derive(Debug, Clone, Copy)]
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn around(xs: impl IntoIterator<Item = f64>, ys: impl IntoIterator<Item = f64>) -> Self {
        let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
        for x in xs {
            x0 = x0.min(x);
            x1 = x1.max(x);
        }
        let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
        for y in ys {
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if x1 <= x0 {
            x1 = x0 + 1.0;
        }
        if y1 <= y0 {
            y1 = y0 + 1.0;
        }
        Frame { x0, x1, y0, y1 }
    }

    /// Maps data to pixels with the y axis pointing up.
    fn transform(&self, uniform: bool) -> String {
        let mut sx = (WIDTH - 2.0 * MARGIN) / (self.x1 - self.x0);
        let mut sy = (HEIGHT - 2.0 * MARGIN) / (self.y1 - self.y0);
        if uniform {
            sx = sx.min(sy);
            sy = sx;
        }
        let cx = WIDTH / 2.0 - sx * (self.x0 + self.x1) / 2.0;
        let cy = HEIGHT / 2.0 + sy * (self.y0 + self.y1) / 2.0;
        format!("matrix({sx} 0 0 {} {cx} {cy})", -sy)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(
        out,
        "<style>polyline,circle{{fill:none;stroke-width:1}} .bound{{stroke:#1f77b4}} \
         .envelope{{stroke:#d62728}} .sample{{fill:#1f77b4;stroke:none}} .overlay{{stroke:#d62728}} \
         .image{{stroke:#1f77b4}} .guaranteed{{stroke:#d62728;stroke-dasharray:4 3}} .axis{{stroke:#888}}</style>"
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
}

fn polyline(out: &mut String, class: &str, pts: &[(f64, f64)]) {
    let mut s = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x},{y}");
    }
    let _ = writeln!(
        out,
        r#"<polyline class="{class}" vector-effect="non-scaling-stroke" points="{s}"/>"#
    );
}

fn footer(out: &mut String) {
    out.push_str("</g>\n</svg>\n");
}

fn check_range(n_min: u64, n_max: u64, least: u64) -> Result<()> {
    if n_min < least || n_max < n_min {
        return Err(Error::Precondition(format!(
            "need {least} <= n_min <= n_max, got {n_min}..{n_max}"
        )));
    }
    Ok(())
}

/// `ln a_bound(n)` and the log envelope against `n`.
pub fn bounds_svg(n_min: u64, n_max: u64, family: Family) -> Result<String> {
    check_range(n_min, n_max, 3)?;
    let order = family.coefficient_order();
    let mut bound_pts = Vec::new();
    let mut env_pts = Vec::new();
    for n in n_min..=n_max {
        let b = bound(Coefficient::A, n, order)?;
        bound_pts.push((n as f64, b.bound.ln()));
        let env = b.envelope.ok_or_else(|| Error::Precondition("family has no envelope".into()))?;
        env_pts.push((n as f64, env.ln()));
    }
    let frame = Frame::around(
        bound_pts.iter().map(|p| p.0),
        bound_pts.iter().chain(&env_pts).map(|p| p.1),
    );
    let mut out = String::new();
    header(&mut out, &format!("ln a_n bound against envelope, {family}, n = {n_min}..{n_max}"));
    let _ = writeln!(out, r#"<g transform="{}">"#, frame.transform(false));
    polyline(&mut out, "envelope", &env_pts);
    polyline(&mut out, "bound", &bound_pts);
    footer(&mut out);
    Ok(out)
}

/// `r_{n,n}` as one marker per `n`, with the reference curve `1 − x_n/n` from
/// the first index where it is defined.
pub fn radius_curve_svg(n_min: u64, n_max: u64, family: Family, cfg: &SolverConfig) -> Result<String> {
    check_range(n_min, n_max, 1)?;
    let mut samples = Vec::new();
    for n in n_min..=n_max {
        let r = match radius_root(n, n, family, cfg) {
            Ok(res) => res.radius,
            Err(Error::NoRoot { saturated: Some(s), .. }) => s,
            Err(e) => return Err(e),
        };
        samples.push((n as f64, r));
    }
    let curve = ReferenceCurve::Conjectured;
    let overlay: Vec<(f64, f64)> = (n_min.max(curve.min_n())..=n_max)
        .map(|n| x_n_and_rl(n, curve).map(|(_, rl)| (n as f64, rl)))
        .collect::<Result<_>>()?;
    let frame = Frame::around(
        samples.iter().map(|p| p.0),
        samples.iter().chain(&overlay).map(|p| p.1).chain([0.0, 1.0]),
    );
    // Markers are drawn in pixel space so they stay round.
    let sx = (WIDTH - 2.0 * MARGIN) / (frame.x1 - frame.x0);
    let sy = (HEIGHT - 2.0 * MARGIN) / (frame.y1 - frame.y0);
    let px = |x: f64| MARGIN + sx * (x - frame.x0);
    let py = |y: f64| HEIGHT - MARGIN - sy * (y - frame.y0);

    let mut out = String::new();
    header(&mut out, &format!("r_(n,n) for {family}, n = {n_min}..{n_max}"));
    for &(n, r) in &samples {
        let _ = writeln!(
            out,
            r#"<circle class="sample" data-n="{n}" data-r="{r}" cx="{}" cy="{}" r="2"/>"#,
            px(n),
            py(r)
        );
    }
    let _ = writeln!(out, r#"<g transform="{}">"#, frame.transform(false));
    if overlay.len() >= 2 {
        polyline(&mut out, "overlay", &overlay);
    }
    footer(&mut out);
    Ok(out)
}

/// Images of `|z| = ρ` under `s_{n,n}` of the harmonic Koebe function, for
/// `ρ = k·r/4`, `k = 1..=circles`, where `r` is the guaranteed radius. The
/// guaranteed circle itself is drawn in the same coordinates.
pub fn disk_image_svg(
    n: u64,
    family: Family,
    circles: usize,
    points_per_circle: usize,
    cfg: &SolverConfig,
) -> Result<String> {
    if n < 2 {
        return domain(format!("disk image needs n >= 2, got {n}"));
    }
    if circles == 0 || points_per_circle < 3 {
        return Err(Error::Precondition("need at least one circle and three points".into()));
    }
    let radius = guaranteed_radius(n, family, cfg)?;
    let f = section(&harmonic_koebe(n as usize)?, n as usize, n as usize)?;
    let mut curves = Vec::new();
    for k in 1..=circles {
        let rho = (k as f64 * radius / 4.0).min(1.0 - 1e-9);
        let mut pts = Vec::with_capacity(points_per_circle + 1);
        for j in 0..=points_per_circle {
            let theta = std::f64::consts::TAU * j as f64 / points_per_circle as f64;
            let w = evaluate(&f, Complex64::from_polar(rho, theta))?;
            pts.push((w.re, w.im));
        }
        curves.push((rho, pts));
    }
    let all = curves.iter().flat_map(|c| c.1.iter().copied());
    let extent = all
        .map(|(x, y)| x.abs().max(y.abs()))
        .fold(radius, f64::max)
        * 1.05;
    let frame = Frame { x0: -extent, x1: extent, y0: -extent, y1: extent };

    let mut out = String::new();
    header(&mut out, &format!("images of circles under s_({n},{n}) of the harmonic Koebe function"));
    let _ = writeln!(out, r#"<g transform="{}">"#, frame.transform(true));
    polyline(&mut out, "axis", &[(-extent, 0.0), (extent, 0.0)]);
    polyline(&mut out, "axis", &[(0.0, -extent), (0.0, extent)]);
    for (rho, pts) in &curves {
        let _ = writeln!(out, r#"<!-- rho = {rho} -->"#);
        polyline(&mut out, "image", pts);
    }
    let _ = writeln!(
        out,
        r#"<circle class="guaranteed" vector-effect="non-scaling-stroke" cx="0" cy="0" r="{radius}"/>"#
    );
    footer(&mut out);
    Ok(out)
}
