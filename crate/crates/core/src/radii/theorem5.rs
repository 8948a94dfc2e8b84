//! Asymptotics of the order-5/2 radius: the lower curve `1 − x_n/n` and the
//! chain `t(x_n, n) = T₁ T₂ T₃` that keeps it below the true root.

use crate::error::{domain, Result};
use serde::{Deserialize, Serialize};

use super::tail_closed_form_p4;

/// Univalence radius of the sections of every univalent analytic map.
pub const SZEGO_RADIUS: f64 = 0.25;

/// Curves of the form `1 − (c₁ ln n − c₂ ln ln n)/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceCurve {
    /// `(8, 4)`, valid from `n = 20`.
    Conjectured,
    /// `(7, 4)`, valid from `n = 15`.
    PriorWork,
    /// `(4, 2)`, valid from `n = 7`.
    Convex,
}

impl ReferenceCurve {
    fn constants(self) -> (f64, f64, u64) {
        match self {
            ReferenceCurve::Conjectured => (8.0, 4.0, 20),
            ReferenceCurve::PriorWork => (7.0, 4.0, 15),
            ReferenceCurve::Convex => (4.0, 2.0, 7),
        }
    }

    pub fn min_n(self) -> u64 {
        self.constants().2
    }
}

/// `(x_n, 1 − x_n/n)` for the chosen curve.
pub fn x_n_and_rl(n: u64, curve: ReferenceCurve) -> Result<(f64, f64)> {
    let (c1, c2, min_n) = curve.constants();
    if n < min_n {
        return domain(format!("curve needs n >= {min_n}, got {n}"));
    }
    let l = (n as f64).ln();
    let x = c1 * l - c2 * l.ln();
    Ok((x, 1.0 - x / n as f64))
}

/// `φ(r) = (1−r)^3 (3 + 10r^2 + 3r^4) / (3(1+r)^9)`.
pub fn floor3_closed_form(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("r must lie in (0, 1), got {r}"));
    }
    let r2 = r * r;
    Ok((1.0 - r).powi(3) * (3.0 + 10.0 * r2 + 3.0 * r2 * r2) / (3.0 * (1.0 + r).powi(9)))
}

/// `k(n, r) = (R_{n,r} + T_{n,r}) / φ(r)`; `φ(n,n,r) >= 0` iff `k <= 1`.
pub fn k_ratio(n: u64, r: f64) -> Result<f64> {
    if n < 2 {
        return domain(format!("n must be at least 2, got {n}"));
    }
    Ok(tail_closed_form_p4(n, r)? / floor3_closed_form(r)?)
}

/// `φ₁′(r) = (1−r)^2 (−9 + 20r − 50r^2 + 12r^3 − 21r^4)`.
pub fn phi1_derivative(r: f64) -> f64 {
    (1.0 - r).powi(2) * (-9.0 + r * (20.0 + r * (-50.0 + r * (12.0 - 21.0 * r))))
}

/// `q(x, n) = n[n^3(24 + 24x + 12x^2 + 4x^3 + x^4) − 6n^2 x(6 + 4x + x^2) + 2n x^2(7 + 2x) − x^3]`.
pub fn q_poly(x: f64, n: f64) -> f64 {
    let x2 = x * x;
    let x3 = x2 * x;
    n * (n.powi(3) * (24.0 + 24.0 * x + 12.0 * x2 + 4.0 * x3 + x2 * x2)
        - 6.0 * n * n * x * (6.0 + 4.0 * x + x2)
        + 2.0 * n * x2 * (7.0 + 2.0 * x)
        - x3)
}

fn quartic_denominator(x: f64, n: f64) -> f64 {
    let x2 = x * x;
    16.0 * n.powi(4) - 32.0 * n.powi(3) * x + 28.0 * n * n * x2 - 12.0 * n * x2 * x
        + 3.0 * x2 * x2
}

/// `t(x, n) = 177 e^-x n^8 / (50 x^8) · (2 − x/n)^9 · q(x, n) / (16n^4 − 32n^3x + 28n^2x^2 − 12nx^3 + 3x^4)`.
pub fn t_function(x: f64, n: f64) -> Result<f64> {
    if !(x > 0.0 && x < n) {
        return domain(format!("need 0 < x < n, got x={x}, n={n}"));
    }
    let log_head = (177.0f64 / 50.0).ln() - x + 8.0 * (n / x).ln() + 9.0 * (2.0 - x / n).ln();
    Ok(log_head.exp() * q_poly(x, n) / quartic_denominator(x, n))
}

/// The factors of `t(x_n, n)` and their bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TChain {
    pub n: u64,
    pub x_n: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    /// `t(x_n, n)` evaluated directly.
    pub t: f64,
    /// `T₁` with its `(·)^9` factor dropped, at `n = 20`.
    pub t1_bound: f64,
    /// `S₂(n) = 24/L^4 + 192/L^3 + 2048/L + 4096`, `L = ln n`.
    pub s2: f64,
    /// `S₃(x_20/20)`.
    pub s3: f64,
}

fn t1_core(n: f64) -> f64 {
    let l = n.ln();
    177.0 / (50.0 * 128.0 * (2.0 - l.ln() / l).powi(8))
}

fn s3(y: f64) -> f64 {
    1.0 / (16.0 - 32.0 * y + 28.0 * y * y - 12.0 * y.powi(3) + 3.0 * y.powi(4))
}

pub fn t_bound_chain(n: u64) -> Result<TChain> {
    let (x, _) = x_n_and_rl(n, ReferenceCurve::Conjectured)?;
    let (x20, _) = x_n_and_rl(20, ReferenceCurve::Conjectured)?;
    let nf = n as f64;
    let l = nf.ln();
    let t1 = t1_core(nf) * (1.0 - x / (2.0 * nf)).powi(9);
    let t2 = q_poly(x, nf) / (nf * l).powi(4);
    let t3 = s3(x / nf);
    Ok(TChain {
        n,
        x_n: x,
        t1,
        t2,
        t3,
        t: t_function(x, nf)?,
        t1_bound: t1_core(20.0),
        s2: 24.0 / l.powi(4) + 192.0 / l.powi(3) + 2048.0 / l + 4096.0,
        s3: s3(x20 / 20.0),
    })
}
