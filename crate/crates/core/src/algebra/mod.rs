//! Quadratic algebra with structure constants `gamma, epsilon, zeta, d, z`, its
//! deformed-oscillator realization and the finite-dimensional representations
//! obtained from the zeros of the structure function.
//!
//! Relations (with `alpha = a = delta = 0`):
//!
//! ```text
//! [A, B] = C
//! [A, C] = gamma {A, B} + epsilon B + zeta
//! [B, C] = -gamma B^2 + d A + z
//! ```

mod constants;
mod fock;
mod representation;
mod structure;

pub use constants::QuadraticAlgebraConstants;
pub use fock::{
    build_fock_realization, verify_casimir, verify_commutation, CasimirReport, CommutationReport,
    FockInvariants, FockRealization, PrintedRelation, Residual,
};
pub use representation::{
    CONSTRAINT_TOLERANCE,
    find_representation, find_representations, ClosedFormCheck, ClosedFormSpectrum,
    ConstantsFamily, RepresentationSearch, RepresentationSolution, StructureFamily,
};
pub use structure::{
    structure_function_general, structure_polynomial, OscillatorRealization, StructureFunction,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("gamma must be nonzero for this realization")]
    ZeroGamma,
    #[error("realization denominator vanishes at N = {n} (N + u = {x})")]
    DegenerateDenominator { n: usize, x: f64 },
    #[error("structure function is negative at n = {n}: {value}")]
    NegativePhi { n: usize, value: f64 },
    #[error("off-diagonal coupling squared is negative at n = {n}: {value}")]
    NegativeCoupling { n: usize, value: f64 },
    #[error("no finite-dimensional representation of dimension {dim}", dim = p + 1)]
    NoRepresentation { p: usize },
    #[error("Newton refinement of (u, E) did not converge for p = {p}")]
    NonConvergence { p: usize },
}
