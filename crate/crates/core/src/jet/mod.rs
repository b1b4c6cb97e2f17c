//! Exact operator identities by truncated multivariate Taylor arithmetic.
//!
//! A differential operator applied to a polynomial germ at a point only needs the
//! germ's Taylor coefficients up to the operator's total order, so composing
//! operators on jets of that degree and reading off the constant term is exact up
//! to rounding. Coefficient functions such as `1/r` or `1/(r (r + x0))` are
//! expanded to the same degree by jet division and square roots.

mod monopole;
mod operator;
mod oscillator;
mod series;
mod space;
mod spin;
mod suites;
mod verify;

pub use monopole::{
    build_kepler_operators, build_ycm_operators, field_strength, field_strength_matrix, gauge_diagnostics, gauge_potential,
    GaugeDiagnostics, MonopoleOperators,
};
pub use operator::{DiffOp, JetPoint, ScalarFn, SpinJet};
pub use oscillator::{build_osc8d_operators, GeneratorConvention, OscillatorOperators};
pub use series::{jet_seed_polynomial, Jet, MultiPoly};
pub use space::JetSpace;
pub use spin::{levi_civita, pauli, tau, SpinRep};
pub use suites::{
    kepler_dynamical_checks, kepler_integral_checks, osc8d_checks, so5_closure_checks, verify_quadratic_closure,
    ycm_checks, CheckKind, ClosureReport, ClosureSystem, NamedFit, OperatorCheck,
};
pub use verify::{
    commutator_residual, fit_relation, identity_residual, FittedCoefficient, IdentityReport, RelationFit,
    RelationTerm, SampleDomain, TrialSettings,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    #[error("divisor vanishes at the expansion point (|value| = {value:e})")]
    SingularPoint { value: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial degree {degree} exceeds jet degree {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("operator of order {order} needs jets of degree at least {order}, have {degree}")]
    DegreeTooLow { order: usize, degree: usize },
    #[error("spin must be a non-negative integer or half-integer, got {t}")]
    InvalidSpin { t: f64 },
    #[error("least-squares fit failed")]
    FitFailed,
}
