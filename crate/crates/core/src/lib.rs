//! Pseudospectral simulator and function-space toolkit for nonlocal
//! dispersive equations `u_t + (n(u))_x + L u_x = 0` on a periodic domain,
//! where `L` is a Fourier multiplier with a real, even symbol `m` of
//! temperate growth and `n` is a nonlinearity of possibly limited smoothness.
//!
//! The crate provides:
//!
//! - spectral grids, transforms, multiplier application, and the exact
//!   unitary flow of the linear part ([`fourier`]);
//! - builtin symbols (Whitham, KdV, BO, fractional) and nonlinearities
//!   (powers, signed powers, exponential) with the two equivalent
//!   right-hand-side formulations ([`model`]);
//! - fixed-step RK4 and integrating-factor RK4 integrators with dealiasing,
//!   blow-up and resolution monitoring ([`timestep`]);
//! - discrete Sobolev and Besov norms by the derivative-difference
//!   characterization, on the torus and on compactly supported line data
//!   ([`spaces`]);
//! - an experiment lab that checks composition and localizing inequalities,
//!   norm equivalence, continuous dependence, wave breaking, and
//!   convergence orders ([`lab`]).

pub mod error;
pub mod fourier;
pub mod lab;
pub mod model;
pub mod presets;
pub mod spaces;
pub mod timestep;

pub use error::{Error, Result};
pub use fourier::{PeriodicGrid, RealField, SpectralField};
pub use lab::{ExperimentReport, Outcome, RatioReport, ScalarFunction, Trend};
pub use model::{
    ConservedQuantities, DispersionSymbol, EvolutionProblem, Nonlinearity, Regularity,
};
pub use spaces::{
    besov_norm_line, besov_norm_torus, besov_norm_torus_restricted, sobolev_norm, BesovIndex,
    CutoffFunction, LineField,
};
pub use timestep::{
    dealias, evolve, DiagnosticsSeries, Method, SolverConfig, Termination, Trajectory,
};
