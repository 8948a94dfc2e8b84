//! Coefficient bounds for invariant families of order `alpha`.
//!
//! The Cauchy estimate with the derivative growth bound gives
//! `|a_n| <= psi_n(r) = (1+r)^(alpha-3/2) / (n r^(n-1) (1-r)^(alpha+3/2))` for every
//! `r in (0,1)`; minimizing over `r` yields the bound. The `b_n` analogue has
//! `r^(n-2)` in place of `r^(n-1)`.

use crate::error::{domain, Error, Result};
use rayon::prelude::*;

/// Order of a linear and affine invariant family.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FamilyOrder(f64);

impl FamilyOrder {
    /// The order used for `S⁰_H`: `|a_2| <= 16.5`, giving the exponents 15 and 18.
    pub const S0H: FamilyOrder = FamilyOrder(16.5);
    /// The conjectured order `5/2`.
    pub const CONJECTURED: FamilyOrder = FamilyOrder(2.5);

    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return domain(format!("family order must exceed 1, got {alpha}"));
        }
        Ok(FamilyOrder(alpha))
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    fn growth_exponents(self) -> (f64, f64) {
        (self.0 - 1.5, self.0 + 1.5)
    }
}

/// Which coefficient sequence a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficient {
    /// Analytic part, `a_n`.
    A,
    /// Co-analytic part, `b_n`.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub n: u64,
    pub bound: f64,
    /// `minimizer^-(n-1)` for `a_n`, `minimizer^-(n-2)` for `b_n`.
    pub factor_a: f64,
    /// The remaining `n`-independent-power factor.
    pub factor_b: f64,
    pub minimizer: f64,
    /// Closed-form envelope for the canonical orders, `None` otherwise.
    pub envelope: Option<f64>,
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("r must lie in (0, 1), got {r}"));
    }
    Ok(())
}

fn log_growth(r: f64, order: FamilyOrder) -> f64 {
    let (p, q) = order.growth_exponents();
    p * r.ln_1p() - q * (-r).ln_1p()
}

/// `ln psi_n(r)`.
pub fn log_psi(n: u64, r: f64, order: FamilyOrder) -> Result<f64> {
    check_r(r)?;
    if n < 1 {
        return domain("n must be positive");
    }
    Ok(-(n as f64).ln() - (n - 1) as f64 * r.ln() + log_growth(r, order))
}

/// `psi_n(r) = (1+r)^(alpha-3/2) / (n r^(n-1) (1-r)^(alpha+3/2))`.
pub fn psi(n: u64, r: f64, order: FamilyOrder) -> Result<f64> {
    log_psi(n, r, order).map(f64::exp)
}

/// `ln phi_n(r)`, the `b_n` growth function `(1+r)^(alpha-3/2) / (n r^(n-2) (1-r)^(alpha+3/2))`.
pub fn log_phi(n: u64, r: f64, order: FamilyOrder) -> Result<f64> {
    check_r(r)?;
    if n < 2 {
        return domain("n must be at least 2");
    }
    Ok(-(n as f64).ln() - (n - 2) as f64 * r.ln() + log_growth(r, order))
}

pub fn phi(n: u64, r: f64, order: FamilyOrder) -> Result<f64> {
    log_phi(n, r, order).map(f64::exp)
}

fn log_growth_difference(power: u64, x: f64, y: f64, order: FamilyOrder) -> Result<f64> {
    check_r(x)?;
    check_r(y)?;
    let (p, q) = order.growth_exponents();
    let d = x - y;
    Ok(-(power as f64) * (d / y).ln_1p() + p * (d / (1.0 + y)).ln_1p() - q * (-d / (1.0 - y)).ln_1p())
}

/// `ln psi_n(x) − ln psi_n(y)`, accurate when `x` and `y` are close.
pub fn log_psi_difference(n: u64, x: f64, y: f64, order: FamilyOrder) -> Result<f64> {
    if n < 1 {
        return domain("n must be positive");
    }
    log_growth_difference(n - 1, x, y, order)
}

/// `ln phi_n(x) − ln phi_n(y)`, accurate when `x` and `y` are close.
pub fn log_phi_difference(n: u64, x: f64, y: f64, order: FamilyOrder) -> Result<f64> {
    if n < 2 {
        return domain("n must be at least 2");
    }
    log_growth_difference(n - 2, x, y, order)
}

/// Positive root of `c2 r^2 + 2 alpha r - c0 = 0`, written without cancellation.
fn stationary_root(c2: f64, alpha: f64, c0: f64) -> f64 {
    2.0 * c0 / (2.0 * alpha + (4.0 * alpha * alpha + 4.0 * c2 * c0).sqrt())
}

/// Minimizer of `psi_n(·)`: the positive root of `(n+2) r^2 + 2 alpha r - (n-1) = 0`.
pub fn tau(n: u64, order: FamilyOrder) -> Result<f64> {
    if n < 2 {
        return domain(format!("tau needs n >= 2, got {n}"));
    }
    Ok(stationary_root((n + 2) as f64, order.alpha(), (n - 1) as f64))
}

/// Minimizer of `phi_n(·)`: the positive root of `(n+1) r^2 + 2 alpha r - (n-2) = 0`.
pub fn rho(n: u64, order: FamilyOrder) -> Result<f64> {
    if n < 3 {
        return domain(format!("rho needs n >= 3, got {n}"));
    }
    Ok(stationary_root((n + 1) as f64, order.alpha(), (n - 2) as f64))
}

fn envelope(coef: Coefficient, n: u64, order: FamilyOrder) -> Option<f64> {
    let n = n as f64;
    match (coef, order.alpha()) {
        (Coefficient::A, a) if a == 16.5 => Some(5.24e-6 * n.powi(17)),
        (Coefficient::B, a) if a == 16.5 => Some(2.32e-7 * n.powi(17)),
        (Coefficient::A, a) if a == 2.5 => Some(0.75 * n.powi(3)),
        (Coefficient::B, a) if a == 2.5 => Some(0.43 * n.powi(3)),
        _ => None,
    }
}

fn decomposed(
    coef: Coefficient,
    n: u64,
    minimizer: f64,
    order: FamilyOrder,
) -> Result<BoundResult> {
    let power = match coef {
        Coefficient::A => n - 1,
        Coefficient::B => n - 2,
    };
    let log_a = -(power as f64) * minimizer.ln();
    let log_b = -(n as f64).ln() + log_growth(minimizer, order);
    Ok(BoundResult {
        n,
        bound: (log_a + log_b).exp(),
        factor_a: log_a.exp(),
        factor_b: log_b.exp(),
        minimizer,
        envelope: envelope(coef, n, order),
    })
}

/// `min_r psi_n(r)`, attained at `tau(n)`.
pub fn a_bound(n: u64, order: FamilyOrder) -> Result<BoundResult> {
    if n < 3 {
        return domain(format!("coefficient bounds start at n = 3, got {n}"));
    }
    decomposed(Coefficient::A, n, tau(n, order)?, order)
}

/// `min_r phi_n(r)`, attained at `rho(n)`.
pub fn b_bound(n: u64, order: FamilyOrder) -> Result<BoundResult> {
    if n < 3 {
        return domain(format!("coefficient bounds start at n = 3, got {n}"));
    }
    decomposed(Coefficient::B, n, rho(n, order)?, order)
}

pub fn bound(coef: Coefficient, n: u64, order: FamilyOrder) -> Result<BoundResult> {
    match coef {
        Coefficient::A => a_bound(n, order),
        Coefficient::B => b_bound(n, order),
    }
}

/// The explicit order-5/2 bounds `(a, b)` for `n >= 3`, evaluated as displayed.
pub fn theorem4_closed_form(n: u64) -> Result<(f64, f64)> {
    if n < 3 {
        return domain(format!("closed forms need n >= 3, got {n}"));
    }
    let nf = n as f64;
    let s = (4.0 * nf * nf + 4.0 * nf + 17.0).sqrt();
    let a = 8.0 * (2.0 + nf).powi(3) * (s + 2.0 * nf - 1.0)
        / (nf * (s - 2.0 * nf - 9.0).powi(4))
        * ((s - 5.0) / (2.0 * (2.0 + nf))).powf(1.0 - nf);
    let s = (4.0 * nf * nf - 4.0 * nf + 17.0).sqrt();
    let b = 8.0 * (1.0 + nf).powi(3) * (s + 2.0 * nf - 3.0)
        / (nf * (s - 2.0 * nf - 7.0).powi(4))
        * ((s - 5.0) / (2.0 * (1.0 + nf))).powf(2.0 - nf);
    Ok((a, b))
}

/// `Psi(x) = 2(x+2) e^(-18/x) / (sqrt(4x^2+4x+1081) - 33)`, increasing to 1 on `[2, ∞)`.
pub fn capital_psi(x: f64) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return domain(format!("Psi is only considered for x >= 2, got {x}"));
    }
    let t = (4.0 * x * x + 4.0 * x + 1081.0).sqrt();
    // t - 33 rationalized: (t^2 - 1089) / (t + 33)
    let denom = (4.0 * x * x + 4.0 * x - 8.0) / (t + 33.0);
    Ok(2.0 * (x + 2.0) * (-18.0 / x).exp() / denom)
}

/// `q_1(x)^2 - q_2(x)^2` by the factored and the expanded route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QSign {
    pub factored: f64,
    pub expanded: f64,
}

impl QSign {
    pub fn relative_gap(&self) -> f64 {
        (self.factored - self.expanded).abs() / self.factored.abs().max(f64::MIN_POSITIVE)
    }
}

pub fn q_sign(x: f64) -> Result<QSign> {
    if !(x >= 2.0) || !x.is_finite() {
        return domain(format!("q is only considered for x >= 2, got {x}"));
    }
    let factored =
        24.0 * (x + 2.0).powi(2) * (((44.0 * x + 5381.0) * x + 6438.0) * x - 12972.0);
    let t = (4.0 * x * x + 4.0 * x + 1081.0).sqrt();
    let q1 = ((22.0 * x + 431.0) * x + 6534.0) * x + 12972.0;
    let q2 = t * ((11.0 * x + 198.0) * x + 396.0);
    Ok(QSign {
        factored,
        expanded: (q1 - q2) * (q1 + q2),
    })
}

/// Location and value of the largest `bound / scale(n)` over an index range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepMax {
    pub n: u64,
    pub ratio: f64,
}

/// Maximum of `bound(coef, n) / scale(n)` for `n` in `lo..=hi`.
///
/// Evaluated in parallel; the reduction runs over the ordered results so the
/// answer does not depend on the thread count.
pub fn max_scaled_bound<S>(
    coef: Coefficient,
    order: FamilyOrder,
    lo: u64,
    hi: u64,
    scale: S,
) -> Result<SweepMax>
where
    S: Fn(u64) -> f64 + Sync,
{
    if lo > hi {
        return Err(Error::Precondition(format!("empty range {lo}..={hi}")));
    }
    let ratios = (lo..=hi)
        .into_par_iter()
        .map(|n| bound(coef, n, order).map(|b| (n, b.bound / scale(n))))
        .collect::<Result<Vec<_>>>()?;
    let (n, ratio) = ratios
        .into_iter()
        .fold((lo, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    Ok(SweepMax { n, ratio })
}
