//! Brute-force univalence radius estimates for explicit harmonic polynomials.
//!
//! Shells `|z| = j · radius_step` are scanned outward. On each shell the
//! difference-quotient functional is sampled on a `(phi, t)` grid with
//! `t ∈ (0, π)` (which covers every pair of boundary points once), and the
//! sense-preserving margin is sampled between consecutive shells. A shell is
//! rejected when the margin drops to `1e-10`, when the functional is below
//! `1e-10` at a node, or when the functional winds around a grid cell.
//!
//! The test is one-sided: a rejection disproves univalence at that radius,
//! a clean shell is only evidence.

use crate::error::{Error, Result};
use crate::harmonic::{circle_margin, functional_terms, harmonic_koebe, section, sine_ratios,
    CoefficientSeries};
use crate::numerics::SolverConfig;
use crate::radii::{r_nn_theorem2, radius_root, Family};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Values at or below this count as zero.
pub const ZERO_THRESHOLD: f64 = 1e-10;

/// Slack allowed when comparing an estimate with a guaranteed radius.
pub const CONSISTENCY_SLACK: f64 = 1e-6;

const T_EDGE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub angular_samples: usize,
    pub radial_samples: usize,
    /// Points per quarter turn of `t`; the grid on `(0, π)` has `2 t_samples + 1` points.
    pub t_samples: usize,
    pub radius_step: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            angular_samples: 256,
            radial_samples: 64,
            t_samples: 128,
            radius_step: 1e-3,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("angular_samples", self.angular_samples),
            ("radial_samples", self.radial_samples),
            ("t_samples", self.t_samples),
        ] {
            if v < 8 {
                return Err(Error::Config(format!("{name} must be at least 8, got {v}")));
            }
        }
        if !(self.radius_step > 0.0 && self.radius_step < 1.0) {
            return Err(Error::Config(format!(
                "radius_step must lie in (0, 1), got {}",
                self.radius_step
            )));
        }
        Ok(())
    }

    /// Every sample count doubled.
    pub fn refined(&self) -> Self {
        Self {
            angular_samples: 2 * self.angular_samples,
            radial_samples: 2 * self.radial_samples,
            t_samples: 2 * self.t_samples,
            radius_step: self.radius_step,
        }
    }

    fn t_grid(&self) -> Vec<f64> {
        let n = self.t_samples;
        let mut ts = Vec::with_capacity(2 * n + 1);
        ts.push(T_EDGE);
        ts.extend((1..2 * n).map(|j| FRAC_PI_2 * j as f64 / n as f64));
        ts.push(PI - T_EDGE);
        ts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `|h'| − |g'|` at or below the zero threshold.
    SensePreserving,
    /// The functional is numerically zero at a grid node.
    Vanishing,
    /// The functional winds around a grid cell, so it vanishes inside it.
    Winding,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub rho: f64,
    pub phi: f64,
    /// `None` for sense-preserving failures.
    pub t: Option<f64>,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub map_id: String,
    /// Largest shell radius with no violation detected.
    pub estimated_radius: f64,
    pub first_violation: Option<Violation>,
    pub guaranteed_radius: Option<f64>,
    pub consistent: bool,
}

impl OracleVerdict {
    pub fn with_guarantee(mut self, radius: f64) -> Self {
        self.guaranteed_radius = Some(radius);
        self.consistent = self.estimated_radius >= radius - CONSISTENCY_SLACK;
        self
    }
}

/// Scans shells outward and reports the last one with no violation.
pub fn estimate_univalence_radius(
    f: &CoefficientSeries,
    cfg: &OracleConfig,
) -> Result<OracleVerdict> {
    estimate_named(f, cfg, "custom")
}

fn estimate_named(f: &CoefficientSeries, cfg: &OracleConfig, map_id: &str) -> Result<OracleVerdict> {
    cfg.validate()?;
    let ts = cfg.t_grid();
    let order = f.order();
    let mut ratios = Vec::with_capacity(ts.len());
    for &t in &ts {
        let mut row = Vec::with_capacity(order);
        sine_ratios(t, order, &mut row);
        ratios.push(row);
    }
    let shells = ((1.0 - 0.5 * cfg.radius_step) / cfg.radius_step).floor() as usize;
    let mut estimated = 0.0;
    let mut first_violation = None;
    for j in 1..=shells {
        let rho = j as f64 * cfg.radius_step;
        let found = margin_violation(f, cfg, j).or_else(|| shell_violation(f, cfg, rho, &ts, &ratios));
        if found.is_some() {
            first_violation = found;
            break;
        }
        estimated = rho;
    }
    Ok(OracleVerdict {
        map_id: map_id.to_string(),
        estimated_radius: estimated,
        first_violation,
        guaranteed_radius: None,
        consistent: true,
    })
}

/// Sense-preserving margin on the sub-radii of `((j−1)·step, j·step]`.
fn margin_violation(f: &CoefficientSeries, cfg: &OracleConfig, j: usize) -> Option<Violation> {
    let sub = cfg.radial_samples;
    let h = cfg.radius_step / sub as f64;
    let angles = cfg.angular_samples;
    ((j - 1) * sub + 1..=j * sub).find_map(|idx| {
        let r = idx as f64 * h;
        (circle_margin(f, r, angles) <= ZERO_THRESHOLD).then(|| {
            let step = TAU / angles as f64;
            let i = (0..angles)
                .find(|&i| {
                    let (dh, dg) = f.derivatives(Complex64::from_polar(r, i as f64 * step));
                    dh.norm() - dg.norm() <= ZERO_THRESHOLD
                })
                .unwrap_or(0);
            Violation {
                rho: r,
                phi: i as f64 * step,
                t: None,
                kind: ViolationKind::SensePreserving,
            }
        })
    })
}

fn wrapped(d: f64) -> f64 {
    let mut d = d % TAU;
    if d > PI {
        d -= TAU;
    } else if d < -PI {
        d += TAU;
    }
    d
}

fn shell_violation(
    f: &CoefficientSeries,
    cfg: &OracleConfig,
    rho: f64,
    ts: &[f64],
    ratios: &[Vec<f64>],
) -> Option<Violation> {
    let angles = cfg.angular_samples;
    let step = TAU / angles as f64;
    // rows indexed by phi, columns by t; values are F/z
    let rows: Vec<Vec<Complex64>> = (0..angles)
        .into_par_iter()
        .map(|i| {
            let z = Complex64::from_polar(rho, i as f64 * step);
            let mut terms = Vec::with_capacity(f.order());
            functional_terms(f, z, &mut terms);
            ratios
                .iter()
                .map(|u| terms.iter().zip(u).map(|(c, u)| c * u).sum::<Complex64>() / z)
                .collect()
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        if let Some(k) = row.iter().position(|v| v.norm() < ZERO_THRESHOLD) {
            return Some(Violation {
                rho,
                phi: i as f64 * step,
                t: Some(ts[k]),
                kind: ViolationKind::Vanishing,
            });
        }
    }
    let args: Vec<Vec<f64>> = rows.iter().map(|row| row.iter().map(|v| v.arg()).collect()).collect();
    for i in 0..angles {
        let next = (i + 1) % angles;
        for k in 0..ts.len() - 1 {
            let corners = [args[i][k], args[next][k], args[next][k + 1], args[i][k + 1]];
            let turn: f64 = (0..4).map(|c| wrapped(corners[(c + 1) % 4] - corners[c])).sum();
            if turn.abs() > PI {
                return Some(Violation {
                    rho,
                    phi: (i as f64 + 0.5) * step,
                    t: Some(0.5 * (ts[k] + ts[k + 1])),
                    kind: ViolationKind::Winding,
                });
            }
        }
    }
    None
}

/// Guaranteed radius for `s_{n,n}` in the given family.
///
/// For `alpha17` the larger of the root of `ψ(n,n,·)` and the explicit
/// `r_nn_theorem2` radius is used.
pub fn guaranteed_radius(n: u64, family: Family, solver: &SolverConfig) -> Result<f64> {
    let root = radius_root(n, n, family, solver)?.radius;
    match family {
        Family::Alpha52 => Ok(root),
        Family::Alpha17 => Ok(root.max(r_nn_theorem2(n, solver)?.radius)),
    }
}

/// Oracle estimate for `s_{n,n}` of the harmonic Koebe function.
pub fn koebe_section_estimate(n: u64, cfg: &OracleConfig) -> Result<OracleVerdict> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let k = harmonic_koebe(n as usize)?;
    let s = section(&k, n as usize, n as usize)?;
    estimate_named(&s, cfg, &format!("koebe-section-{n}"))
}

/// Runs the oracle on `s_{n,n}` of the harmonic Koebe function and compares
/// with the guaranteed radius of `family`.
pub fn cross_check(n: u64, family: Family, cfg: &OracleConfig) -> Result<OracleVerdict> {
    let verdict = koebe_section_estimate(n, cfg)?;
    Ok(verdict.with_guarantee(guaranteed_radius(n, family, &SolverConfig::default())?))
}
