//! Tails `c · Σ_{k >= start} k^p r^(k-1)` of the coefficient-bound series.

use crate::error::{domain, Error, Result};
use crate::numerics::log_factorial;

/// Hard cap on the number of summed terms.
pub const MAX_TERMS: u64 = 10_000_000;

/// Terms are dropped once they fall below this fraction of the running sum.
const RELATIVE_CUTOFF: f64 = 1e-30;

/// Re-anchor the multiplicative term recurrence this often.
const ANCHOR_EVERY: u64 = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSpec {
    pub power: u32,
    pub coeff: f64,
    /// First summed index, usually `n + 1`.
    pub start: u64,
}

impl TailSpec {
    pub fn new(power: u32, coeff: f64, start: u64) -> Result<Self> {
        if power < 1 {
            return domain("tail power must be at least 1");
        }
        if !(coeff > 0.0) || !coeff.is_finite() {
            return domain(format!("tail multiplier must be positive, got {coeff}"));
        }
        if start < 1 {
            return domain("tail must start at k >= 1");
        }
        Ok(Self { power, coeff, start })
    }
}

/// `c · Σ_{k >= start} k^p r^(k-1)` by direct summation.
///
/// Summation stops past the peak term once a term drops below `1e-30` of the
/// partial sum. Inputs whose peak lies beyond [`MAX_TERMS`] are rejected.
pub fn tail_sum(spec: &TailSpec, r: f64) -> Result<f64> {
    if r.is_nan() || r < 0.0 {
        return domain(format!("r must lie in [0, 1), got {r}"));
    }
    if r >= 1.0 {
        return Err(Error::Divergent(r));
    }
    if r == 0.0 {
        return Ok(if spec.start == 1 { spec.coeff } else { 0.0 });
    }
    let p = spec.power as f64;
    let ln_r = r.ln();
    let ln_c = spec.coeff.ln();
    // terms increase while k < peak
    let peak = p / -ln_r;
    if peak > MAX_TERMS as f64 {
        return Err(Error::SlowConvergence { r, terms: MAX_TERMS });
    }
    let log_term = |k: u64| ln_c + p * (k as f64).ln() + (k - 1) as f64 * ln_r;

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut term = 0.0f64;
    let mut k = spec.start;
    let mut count = 0u64;
    loop {
        term = if count % ANCHOR_EVERY == 0 {
            log_term(k).exp()
        } else {
            let ratio = 1.0 + 1.0 / (k - 1) as f64;
            term * r * ratio.powi(spec.power as i32)
        };
        // Neumaier summation
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        count += 1;
        if k as f64 > peak && term <= RELATIVE_CUTOFF * (sum + comp) {
            break;
        }
        if count >= MAX_TERMS {
            return Err(Error::SlowConvergence { r, terms: MAX_TERMS });
        }
        k += 1;
    }
    Ok(sum + comp)
}

/// Closed form of `(59/50) Σ_{k >= n+1} k^4 r^(k-1)`:
/// `59 r^n / (50 (1-r)^5) · {1 + 4n^3(1-r)^3 + n^4(1-r)^4 + 11r + 11r^2 + r^3
///  + 6n^2(1-r)^2(1+r) − 4n(r^3 + 3r^2 − 3r − 1)}`.
pub fn tail_closed_form_p4(n: u64, r: f64) -> Result<f64> {
    if n < 1 {
        return domain("n must be at least 1");
    }
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("r must lie in (0, 1), got {r}"));
    }
    let nf = n as f64;
    let s = 1.0 - r;
    let braces = 1.0
        + 4.0 * nf.powi(3) * s.powi(3)
        + nf.powi(4) * s.powi(4)
        + 11.0 * r
        + 11.0 * r * r
        + r.powi(3)
        + 6.0 * nf * nf * s * s * (1.0 + r)
        - 4.0 * nf * (r.powi(3) + 3.0 * r * r - 3.0 * r - 1.0);
    let prefactor = (nf * r.ln() + 59f64.ln() - 50f64.ln() - 5.0 * s.ln()).exp();
    Ok(prefactor * braces)
}

/// `18! · r^(n(a-1)/a − 2) / |ln r|^19`, the integral bound on the `k^18` tail.
///
/// Requires `−n ln r > 18 a ln n >= 18`.
pub fn tail_upper_bound_p18(n: u64, r: f64, a: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("r must lie in (0, 1), got {r}"));
    }
    if !(a > 1.0) {
        return domain(format!("a must exceed 1, got {a}"));
    }
    let nf = n as f64;
    let ln_r = r.ln();
    let lhs = -nf * ln_r;
    let mid = 18.0 * a * nf.ln();
    if !(lhs > mid && mid >= 18.0) {
        return Err(Error::Precondition(format!(
            "need -n ln r > 18 a ln n >= 18, got {lhs} vs {mid}"
        )));
    }
    let exponent = nf * (a - 1.0) / a - 2.0;
    Ok((log_factorial(18) + exponent * ln_r - 19.0 * (-ln_r).ln()).exp())
}
