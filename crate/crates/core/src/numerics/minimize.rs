use super::SolverConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
pub fn minimize_scalar<F>(f: F, lo: f64, hi: f64, cfg: &SolverConfig) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    let (x, iterations) = golden(|x, y| f(x) < f(y), lo, hi, cfg)?;
    Ok(Minimum { x, fx: f(x), iterations })
}

/// Golden-section search driven by `diff(x, y) = f(x) − f(y)` instead of `f`.
///
/// Near a flat minimum `f(x)` and `f(y)` agree to most of their digits; a
/// difference computed directly keeps the comparisons meaningful there.
pub fn minimize_by_difference<D>(diff: D, lo: f64, hi: f64, cfg: &SolverConfig) -> Result<(f64, usize)>
where
    D: Fn(f64, f64) -> f64,
{
    golden(|x, y| diff(x, y) < 0.0, lo, hi, cfg)
}

fn golden<L>(less: L, lo: f64, hi: f64, cfg: &SolverConfig) -> Result<(f64, usize)>
where
    L: Fn(f64, f64) -> bool,
{
    cfg.validate()?;
    if !(lo < hi) {
        return Err(Error::Precondition(format!(
            "minimization needs lo < hi, got [{lo}, {hi}]"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);

    for iterations in 1..=cfg.max_iter {
        if less(c, d) {
            b = d;
            d = c;
            c = b - INV_PHI * (b - a);
        } else {
            a = c;
            c = d;
            d = a + INV_PHI * (b - a);
        }
        if b - a < cfg.abs_tol_x || !(c < d) {
            let x = if less(c, d) { c } else { d };
            return Ok((x, iterations));
        }
    }
    Err(Error::NotConverged {
        iterations: cfg.max_iter,
        width: b - a,
    })
}
