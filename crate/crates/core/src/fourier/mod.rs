//! Periodic grid, discrete Fourier representation, multiplier application,
//! and the exact unitary flow of the linear part.
//!
//! All values are immutable once constructed; every operation is a pure
//! function of its inputs and safe to use from multiple threads.

mod field;
mod grid;
mod ops;

pub use field::{RealField, SpectralField, HERMITIAN_TOL};
pub use grid::PeriodicGrid;
pub use ops::{derivative, semigroup};

pub(crate) use field::derivative_uniform;
