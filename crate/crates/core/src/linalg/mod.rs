//! Small dense and tridiagonal numerics shared by the algebra engine and the ODE oracle.

mod poly;
mod tridiag;

pub use poly::Polynomial;
pub use tridiag::{SymTridiagonal, TridiagError};
