//! Coefficient bounds and section univalence radii for normalized univalent
//! harmonic maps `f = h + conj(g)`, with a brute-force univalence oracle and a
//! claim-by-claim verification report.

pub mod coeff;
pub mod error;
pub mod harmonic;
pub mod numerics;
pub mod oracle;
pub mod plot;
pub mod radii;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
