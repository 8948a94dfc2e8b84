use super::SolverConfig;
use crate::error::{Error, Result};

/// A bracketed root returned by [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// Function value at `x`.
    pub fx: f64,
    pub lo: f64,
    pub hi: f64,
    pub evaluations: usize,
}

/// Bisection on `[lo, hi]`. Requires a strict sign change between the ends.
///
/// Stops once the bracket is narrower than `abs_tol_x` and `|f(x)| <= f_tol`,
/// or when the bracket has collapsed to adjacent doubles. At most
/// `max_iter + 2` evaluations are made.
pub fn bisect<F>(f: F, lo: f64, hi: f64, cfg: &SolverConfig) -> Result<Root>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(lo < hi) {
        return Err(Error::Precondition(format!("bisect needs lo < hi, got [{lo}, {hi}]")));
    }
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(lo);
    let fhi = f(hi);
    let mut evaluations = 2;
    if flo.is_nan() || fhi.is_nan() {
        return Err(Error::Domain("function is NaN at the bracket ends".into()));
    }
    if flo == 0.0 {
        return Ok(Root { x: lo, fx: flo, lo, hi, evaluations });
    }
    if fhi == 0.0 {
        return Ok(Root { x: hi, fx: fhi, lo, hi, evaluations });
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoRoot { lo, hi, saturated: None });
    }
    let lo_positive = flo > 0.0;

    for _ in 0..cfg.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            // adjacent doubles; pick the end with the smaller residual
            return Ok(best_end(&f, lo, hi, evaluations));
        }
        let fmid = f(mid);
        evaluations += 1;
        if fmid.is_nan() {
            return Err(Error::Domain(format!("function is NaN at {mid}")));
        }
        if fmid == 0.0 {
            return Ok(Root { x: mid, fx: fmid, lo, hi, evaluations });
        }
        if (fmid > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < cfg.abs_tol_x && fmid.abs() <= cfg.f_tol {
            return Ok(Root { x: mid, fx: fmid, lo, hi, evaluations });
        }
    }
    Err(Error::NotConverged {
        iterations: cfg.max_iter,
        width: hi - lo,
    })
}

fn best_end<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, evaluations: usize) -> Root {
    let (flo, fhi) = (f(lo), f(hi));
    let (x, fx) = if flo.abs() <= fhi.abs() { (lo, flo) } else { (hi, fhi) };
    Root { x, fx, lo, hi, evaluations: evaluations + 2 }
}
