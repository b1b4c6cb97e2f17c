//! The three concrete systems: parameters, structure constants, structure
//! functions, m-parameters and closed-form spectra as printed, plus the
//! values that follow from the general structure function for comparison.

mod kepler;
mod oscillator;
mod record;
mod ycm;

pub use kepler::*;
pub use oscillator::*;
pub use record::{Provenance, QuantumNumbers, SpectrumRecord, SystemId};
pub use ycm::*;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("invalid parameter {field} = {value}: {reason}")]
    InvalidParameter { field: &'static str, value: f64, reason: &'static str },
    #[error("m-parameter {which} is imaginary: radicand {radicand}")]
    ImaginaryM { which: u8, radicand: f64 },
}

pub(crate) fn require(cond: bool, field: &'static str, value: f64, reason: &'static str) -> Result<(), CatalogError> {
    if cond && value.is_finite() {
        Ok(())
    } else {
        Err(CatalogError::InvalidParameter { field, value, reason })
    }
}
