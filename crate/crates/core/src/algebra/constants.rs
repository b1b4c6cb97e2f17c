use super::AlgebraError;
use serde::Serialize;

/// Structure constants of the quadratic algebra at a fixed energy, together with
/// the value of the Casimir operator on that energy eigenspace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticAlgebraConstants {
    pub gamma: f64,
    pub epsilon: f64,
    pub zeta: f64,
    pub d: f64,
    pub z: f64,
    pub casimir: f64,
    pub hbar: f64,
}

impl QuadraticAlgebraConstants {
    pub fn new(
        gamma: f64,
        epsilon: f64,
        zeta: f64,
        d: f64,
        z: f64,
        casimir: f64,
        hbar: f64,
    ) -> Result<Self, AlgebraError> {
        if gamma == 0.0 || !gamma.is_finite() {
            return Err(AlgebraError::ZeroGamma);
        }
        Ok(Self { gamma, epsilon, zeta, d, z, casimir, hbar })
    }
}
