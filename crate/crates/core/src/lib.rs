pub mod algebra;
pub mod catalog;
pub mod hurwitz;
pub mod jet;
pub mod linalg;
pub mod report;
pub mod ode;
pub mod cli;
