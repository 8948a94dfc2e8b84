//! The explicit `S⁰_H` radius `r_{n,n}` and the threshold `N(r)` built on `U(r)`.

use super::{Family, RadiusResult};
use crate::error::{domain, Error, Result};
use crate::numerics::{bisect, log_factorial, SolverConfig};

/// Left end of the interval on which `U` is increasing.
pub const U_MONOTONE_FROM: f64 = 0.016155;

const N_CAP: u64 = 10_000_000;

fn check_unit(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        domain(format!("r must lie in (0, 1), got {r}"))
    }
}

/// `ln((1-r)/(1+r))`.
fn ln_u(r: f64) -> f64 {
    (-2.0 * r / (1.0 + r)).ln_1p()
}

/// `−ln(r |ln r|^19) − ln(u^17 − u^51)`.
pub fn u1(r: f64) -> Result<f64> {
    check_unit(r)?;
    let ln_r = r.ln();
    let lu = ln_u(r);
    Ok(-ln_r - 19.0 * (-ln_r).ln() - 17.0 * lu - (-(34.0 * lu).exp()).ln_1p())
}

/// `U(r) = (−28.5 + ln(r |ln r|^19) + ln(u^17 − u^51)) / ln r`.
pub fn u_function(r: f64) -> Result<f64> {
    Ok((-28.5 - u1(r)?) / r.ln())
}

/// `U₁′(r) = (1/r)(−1 − 19/ln r) + 34/(1−r²) · (1 − 2/(((1+r)/(1−r))^34 − 1))`.
pub fn u1_derivative(r: f64) -> Result<f64> {
    check_unit(r)?;
    let first = (-1.0 - 19.0 / r.ln()) / r;
    let blow = (-34.0 * ln_u(r)).exp_m1();
    Ok(first + 34.0 / (1.0 - r * r) * (1.0 - 2.0 / blow))
}

/// `ln(68 · 54.72e-7 · 18!)`, the aggregate the displayed `28.5` stands for.
pub fn u_constant_recomputed() -> f64 {
    (68.0f64 * 54.72e-7).ln() + log_factorial(18)
}

/// `g(r) = 18 ln n + (n − U(r)) ln r`; its largest zero is `r_{n,n}`.
pub fn theorem2_gap(n: u64, r: f64) -> Result<f64> {
    let nf = n as f64;
    Ok(18.0 * nf.ln() + (nf - u_function(r)?) * r.ln())
}

/// Largest root of [`theorem2_gap`] on `(0, 1)`.
///
/// The gap is not monotone, so every sign change on a `cfg.grid_points` grid
/// is bisected and the largest root kept.
pub fn r_nn_theorem2(n: u64, cfg: &SolverConfig) -> Result<RadiusResult> {
    if n < 2 {
        return domain(format!("n must be at least 2, got {n}"));
    }
    cfg.validate()?;
    let g = |r: f64| theorem2_gap(n, r).unwrap_or(f64::NAN);
    let pts = cfg.grid_points;
    let step = 1.0 / (pts as f64 + 1.0);
    let mut brackets = Vec::new();
    let mut prev = (step, g(step));
    for i in 2..=pts {
        let x = i as f64 * step;
        let v = g(x);
        if prev.1.signum() != v.signum() || v == 0.0 {
            brackets.push((prev.0, x));
        }
        prev = (x, v);
    }
    let mut best: Option<RadiusResult> = None;
    for (lo, hi) in brackets {
        let root = bisect(g, lo, hi, cfg)?;
        if best.map_or(true, |b| root.x > b.radius) {
            best = Some(RadiusResult {
                n,
                m: n,
                family: Family::Alpha17,
                radius: root.x,
                residual: root.fx,
                bracket: (root.lo, root.hi),
            });
        }
    }
    best.ok_or(Error::NoRoot { lo: step, hi: pts as f64 * step, saturated: None })
}

/// `N(r) = min{n ≥ U(r) : 18 ln n ≤ −(n − U(r)) ln r}` by upward scan.
pub fn n_threshold(r: f64) -> Result<u64> {
    if !(r > U_MONOTONE_FROM && r < 1.0) {
        return domain(format!("r must lie in ({U_MONOTONE_FROM}, 1), got {r}"));
    }
    let u = u_function(r)?;
    let ln_r = r.ln();
    let start = u.ceil().max(1.0) as u64;
    (start..=N_CAP)
        .find(|&n| {
            let nf = n as f64;
            18.0 * nf.ln() <= -(nf - u) * ln_r
        })
        .ok_or(Error::ThresholdNotFound(N_CAP))
}
