//! The bilinear map `R^8 -> R^5 x S^3` and the parameter duality it induces between
//! the 8D singular oscillator and the generalized Yang-Coulomb monopole.

mod duality;
mod map;

pub use duality::{
    duality_spectrum_check, map_parameters, CoulombSide, DualParams, DualitySpectrumCheck, OscillatorSide,
};
pub use map::{
    bilinear_norm_residual, euler_identity_residual, hurwitz_forward, hurwitz_image, FiberAngles, HurwitzImage, Point5Fiber,
    Point8, X0Convention,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HurwitzError {
    /// The fiber angles need `u0^2 + u1^2 > 0` and `u2^2 + u3^2 > 0`; `x` is still valid.
    #[error("fiber chart singular at this point (x = {x:?})")]
    FiberChartSingular { x: [f64; 5] },
    #[error("{field} = {value} has the wrong sign: {reason}")]
    SignError { field: &'static str, value: f64, reason: &'static str },
}
