//! Dispersion symbols, nonlinearities, the two right-hand sides of the
//! evolution (direct and integrating-factor), and conserved functionals.

mod nonlin;
mod problem;
pub(crate) mod symbol;

pub use nonlin::{Nonlinearity, Regularity};
pub use problem::{ConservedQuantities, EvolutionProblem};
pub use symbol::DispersionSymbol;
