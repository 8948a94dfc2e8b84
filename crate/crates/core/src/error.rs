use thiserror::Error;

/// Errors raised by the numerical kernels and the bound/radius machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no sign change on [{lo}, {hi}]")]
    NoRoot {
        lo: f64,
        hi: f64,
        /// Radius reported when the function stays positive up to the right end.
        saturated: Option<f64>,
    },

    #[error("not converged after {iterations} iterations (bracket width {width:e})")]
    NotConverged { iterations: usize, width: f64 },

    #[error("series diverges for r = {0}")]
    Divergent(f64),

    #[error("series converges too slowly at r = {r}: {terms} terms exceeded")]
    SlowConvergence { r: f64, terms: u64 },

    #[error("catastrophic cancellation in log-domain sum")]
    Cancellation,

    #[error("threshold not found below n = {0}")]
    ThresholdNotFound(u64),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
