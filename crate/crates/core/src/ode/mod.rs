//! Independent spectral oracle for the separated radial and parabolic equations.
//!
//! Every equation is brought to Sturm-Liouville form `-(P g')' + Q g = lambda W g`
//! after peeling off the indicial power `x^sigma`, discretized on a cell-centred
//! grid (zero flux at the origin, Dirichlet at the cutoff), symmetrized with the
//! diagonal weight, and solved as a symmetric tridiagonal eigenproblem.

mod grid;
mod kummer;
mod parabolic;
mod radial;

pub use grid::{richardson, EigenMethod, EigenResult, GridSettings, SturmLiouville};
pub use kummer::kummer;
pub use parabolic::{
    closed_form_residual, parabolic_eigensolve, solve_parabolic_pair, ExponentConvention,
    PairSolution, ParabolicChannelSpec,
};
pub use radial::{
    radial_coulomb_eigensolve, radial_oscillator_eigensolve, RadialCoulombSpec, RadialOscillatorSpec,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OdeError {
    #[error("Pochhammer symbol (b)_{k} vanishes for b = {b}")]
    PochhammerZero { b: f64, k: u32 },
    #[error("Richardson error estimate {error:e} above target {target:e} with {cells} cells")]
    GridTooCoarse { error: f64, target: f64, cells: usize },
    #[error("no sign change of v + v' for beta in [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },
    #[error("operator unbounded below: effective inverse-square coefficient {value} below the critical value {critical}")]
    UnboundedBelow { value: f64, critical: f64 },
    #[error("invalid input {field} = {value}: {reason}")]
    InvalidInput { field: &'static str, value: f64, reason: &'static str },
    #[error("eigensolver: {0}")]
    Eigen(#[from] crate::linalg::TridiagError),
}
