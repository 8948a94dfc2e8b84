//! Univalence radii of sections `s_{n,m}(f)`.
//!
//! A section is univalent in `|z| < r` while the distortion floor of the full
//! map exceeds the tail the truncation throws away. For the `S⁰_H` regime the
//! tails use the `n^17` coefficient bounds (`k^18` after the `sin kt / sin t`
//! estimate); for the order-5/2 regime the `n^3` bounds give `k^4` tails.

mod tail;
mod theorem2;
mod theorem5;

pub use tail::{tail_closed_form_p4, tail_sum, tail_upper_bound_p18, TailSpec, MAX_TERMS};
pub use theorem2::{n_threshold, r_nn_theorem2, theorem2_gap, u1, u1_derivative, u_function,
    u_constant_recomputed, U_MONOTONE_FROM};
pub use theorem5::{
    floor3_closed_form, k_ratio, phi1_derivative, q_poly, t_bound_chain, t_function, x_n_and_rl,
    ReferenceCurve, TChain, SZEGO_RADIUS,
};

use crate::coeff::FamilyOrder;
use crate::error::{domain, Error, Result};
use crate::numerics::{bisect, SolverConfig};
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;

/// Which coefficient regime a radius is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `S⁰_H`: coefficient order 16.5, distortion order 17, `k^18` tails.
    Alpha17,
    /// Order-5/2 family: distortion order 3, `k^4` tails.
    Alpha52,
}

impl Family {
    pub fn coefficient_order(self) -> FamilyOrder {
        match self {
            Family::Alpha17 => FamilyOrder::S0H,
            Family::Alpha52 => FamilyOrder::CONJECTURED,
        }
    }

    /// Order used in the two-point distortion floor.
    pub fn distortion_order(self) -> f64 {
        match self {
            Family::Alpha17 => 17.0,
            Family::Alpha52 => 3.0,
        }
    }

    pub fn tail_power(self) -> u32 {
        match self {
            Family::Alpha17 => 18,
            Family::Alpha52 => 4,
        }
    }

    /// Multipliers of the `a_k` and `b_k` tails.
    pub fn tail_coefficients(self) -> (f64, f64) {
        match self {
            Family::Alpha17 => (5.24e-6, 2.32e-7),
            Family::Alpha52 => (0.75, 0.43),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Alpha17 => "alpha17",
            Family::Alpha52 => "alpha52",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "alpha17" => Ok(Family::Alpha17),
            "alpha52" => Ok(Family::Alpha52),
            other => domain(format!("unknown family '{other}' (expected alpha17 or alpha52)")),
        }
    }
}

/// `(1/(4 alpha r)) u^alpha (1 − u^(2 alpha))` with `u = (1−r)/(1+r)`.
pub fn distortion_floor(alpha: f64, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("r must lie in (0, 1), got {r}"));
    }
    if !(alpha >= 1.0) {
        return domain(format!("alpha must be at least 1, got {alpha}"));
    }
    let ln_u = (-r).ln_1p() - r.ln_1p();
    let head = (alpha * ln_u).exp();
    let gap = -(2.0 * alpha * ln_u).exp_m1();
    Ok(head * gap / (4.0 * alpha * r))
}

/// `ψ(n,m,r) = C_17(r) − R_{n,r} − T_{m,r}` with `k^18` tails.
pub fn psi_nmr(n: u64, m: u64, r: f64) -> Result<f64> {
    section_margin(Family::Alpha17, n, m, r)
}

/// `φ(n,m,r) = C_3(r) − R_{n,r} − T_{m,r}` with `k^4` tails.
pub fn phi_nmr(n: u64, m: u64, r: f64) -> Result<f64> {
    section_margin(Family::Alpha52, n, m, r)
}

/// Distortion floor minus both tails; positive means `s_{n,m}` is univalent in `|z| < r`.
pub fn section_margin(family: Family, n: u64, m: u64, r: f64) -> Result<f64> {
    if n < 1 || m < 1 {
        return domain("section indices must be at least 1");
    }
    let floor = distortion_floor(family.distortion_order(), r)?;
    let (ca, cb) = family.tail_coefficients();
    let p = family.tail_power();
    let ra = tail_sum(&TailSpec::new(p, ca, n + 1)?, r)?;
    let tb = tail_sum(&TailSpec::new(p, cb, m + 1)?, r)?;
    Ok(floor - ra - tb)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub n: u64,
    pub m: u64,
    pub family: Family,
    pub radius: f64,
    /// Function value at `radius`.
    pub residual: f64,
    pub bracket: (f64, f64),
}

/// Left end of the search interval and distance kept from 1.
pub const RADIUS_EPS: f64 = 1e-9;

/// Bisection on a function that fails softly: evaluation errors are kept and
/// returned instead of the bisection's own NaN diagnostic.
fn bisect_fallible<F>(f: F, lo: f64, hi: f64, cfg: &SolverConfig) -> Result<crate::numerics::Root>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure = RefCell::new(None);
    let root = bisect(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        cfg,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => root,
    }
}

/// The unique root of the decreasing margin `r ↦ section_margin(family, n, m, r)`.
///
/// A bracket is located on the points `1 − 2^-j` and refined by bisection. If
/// the margin stays positive all the way to `1 − 2^-29` the result is
/// [`Error::NoRoot`] with `saturated = Some(1 − RADIUS_EPS)`. The same error
/// is returned for `n = m = 1`: that section is the identity and univalent in
/// the whole disk, while the tail estimate would still produce a finite root.
pub fn radius_root(n: u64, m: u64, family: Family, cfg: &SolverConfig) -> Result<RadiusResult> {
    cfg.validate()?;
    if n == 1 && m == 1 {
        return Err(Error::NoRoot {
            lo: RADIUS_EPS,
            hi: 1.0 - RADIUS_EPS,
            saturated: Some(1.0 - RADIUS_EPS),
        });
    }
    let f = |r: f64| section_margin(family, n, m, r);
    let mut lo = RADIUS_EPS;
    if f(lo)? <= 0.0 {
        return Err(Error::NoRoot { lo, hi: lo, saturated: None });
    }
    let mut hi = None;
    for j in 1..30 {
        let x = 1.0 - 0.5f64.powi(j);
        if f(x)? <= 0.0 {
            hi = Some(x);
            break;
        }
        lo = x;
    }
    let Some(hi) = hi else {
        return Err(Error::NoRoot {
            lo: RADIUS_EPS,
            hi: 1.0 - RADIUS_EPS,
            saturated: Some(1.0 - RADIUS_EPS),
        });
    };
    let root = bisect_fallible(f, lo, hi, cfg)?;
    Ok(RadiusResult {
        n,
        m,
        family,
        radius: root.x,
        residual: root.fx,
        bracket: (root.lo, root.hi),
    })
}

/// Least `n` with `s_{n,n}` guaranteed univalent in `|z| < r`, i.e. the least
/// `n` with `section_margin(family, n, n, r) >= 0` (the margin decreases in
/// `r`, so this is the least `n` whose radius reaches `r`).
///
/// The margin increases with `n`; the search gallops and then bisects.
pub fn least_index_for_radius(r: f64, family: Family) -> Result<u64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("r must lie in (0, 1), got {r}"));
    }
    const CAP: u64 = 10_000_000;
    let ok = |n: u64| section_margin(family, n, n, r).map(|v| v >= 0.0);
    if ok(1)? {
        return Ok(1);
    }
    let mut bad = 1u64;
    let mut good = 2u64;
    while !ok(good)? {
        bad = good;
        good *= 2;
        if good > CAP {
            return Err(Error::ThresholdNotFound(CAP));
        }
    }
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if ok(mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

/// `(r, least n)` for `r ∈ {1/4, 1/2, 3/4}` in the order-5/2 regime.
pub fn corollary2_thresholds() -> Result<Vec<(f64, u64)>> {
    [0.25, 0.5, 0.75]
        .into_iter()
        .map(|r| least_index_for_radius(r, Family::Alpha52).map(|n| (r, n)))
        .collect()
}
