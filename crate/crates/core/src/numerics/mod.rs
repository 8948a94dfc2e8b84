//! Shared numerical kernels: bracketing root finder, golden-section minimizer
//! and log-domain arithmetic.

mod logval;
mod minimize;
mod root;

pub use logval::{log_factorial, Converted, LogValue, Sign};
pub use minimize::{minimize_by_difference, minimize_scalar, Minimum};
pub use root::{bisect, Root};

use crate::error::{Error, Result};

/// Tolerances and budgets shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Target width of the final bracket.
    pub abs_tol_x: f64,
    /// Target magnitude of the function value at a bisection root. Bisection
    /// keeps halving past `abs_tol_x` until this holds or the bracket can no
    /// longer be split in double precision.
    pub f_tol: f64,
    pub max_iter: usize,
    /// Points of the sign-change scan used where a function is not monotone.
    pub grid_points: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            abs_tol_x: 1e-12,
            f_tol: 1e-12,
            max_iter: 200,
            grid_points: 10_000,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol_x > 0.0) || !self.abs_tol_x.is_finite() {
            return Err(Error::Config(format!(
                "abs_tol_x must be positive, got {}",
                self.abs_tol_x
            )));
        }
        if !(self.f_tol >= 0.0) {
            return Err(Error::Config(format!("f_tol must be >= 0, got {}", self.f_tol)));
        }
        if self.max_iter < 1 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if self.grid_points < 2 {
            return Err(Error::Config("grid_points must be at least 2".into()));
        }
        Ok(())
    }
}
