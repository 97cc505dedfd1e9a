//! Fixed-step time integrators: classical RK4 on `u` and an integrating-factor
//! RK4 on the transformed variable `v`, plus dealiasing, blow-up termination,
//! and a resolution monitor.
//!
//! Integrators are deliberately non-adaptive so that convergence studies and
//! cross-method comparisons see deterministic step sequences.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{RealField, SpectralField};
use crate::model::EvolutionProblem;
use crate::spaces::sobolev_norm;

/// Energy fraction in the upper third of the resolved band that marks a run
/// as under-resolved.
pub const RESOLUTION_TAIL_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Rk4Direct,
    Ifrk4Transformed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    Completed,
    BlowupDetected,
    ResolutionLost,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub method: Method,
    pub dt: f64,
    pub t_end: f64,
    pub dealias: bool,
    pub blowup_gradient_factor: f64,
    pub snapshot_stride: usize,
}

impl SolverConfig {
    pub fn new(method: Method, dt: f64, t_end: f64) -> Self {
        Self {
            method,
            dt,
            t_end,
            dealias: true,
            blowup_gradient_factor: 1e4,
            snapshot_stride: 1,
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.snapshot_stride = stride;
        self
    }

    pub fn with_dealias(mut self, dealias: bool) -> Self {
        self.dealias = dealias;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "t_end must be positive, got {}",
                self.t_end
            )));
        }
        if !(self.blowup_gradient_factor > 1.0) {
            return Err(Error::InvalidParameter(
                "blowup_gradient_factor must exceed 1".into(),
            ));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::InvalidParameter("snapshot_stride must be positive".into()));
        }
        Ok(())
    }
}

/// Per-snapshot diagnostics: `H^s` norm, the `H^{s-max(1,l+1)}` norm of the
/// direct right-hand side (the time-derivative class), the gradient sup-norm,
/// and the tracked functionals.
#[derive(Debug, Clone, Default, Serialize)]
pub struct DiagnosticsSeries {
    pub times: Vec<f64>,
    pub hs_norm: Vec<f64>,
    pub hs_minus_norm: Vec<f64>,
    pub sup_ux: Vec<f64>,
    pub mass: Vec<f64>,
    pub l2: Vec<f64>,
    pub hamiltonian: Vec<f64>,
}

impl DiagnosticsSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// The discrete solution map: snapshot times, states, diagnostics, and how
/// the run ended.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub snapshots: Vec<RealField>,
    pub diagnostics: DiagnosticsSeries,
    pub termination: Termination,
}

impl Trajectory {
    pub fn final_state(&self) -> &RealField {
        self.snapshots.last().expect("trajectory holds at least the initial state")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory holds at least the initial time")
    }
}

/// Two-thirds rule: zero every mode with `|k| > N/3`.
pub fn dealias(u: &SpectralField) -> SpectralField {
    let grid = u.grid().clone();
    let cut = grid.len() / 3;
    let coeffs = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            if grid.mode(j).unsigned_abs() as usize > cut {
                Complex64::new(0.0, 0.0)
            } else {
                c
            }
        })
        .collect();
    SpectralField::new(grid, coeffs).expect("same grid")
}

/// One classical four-stage Runge-Kutta step for `du/dt = rhs(u, t)`.
pub fn step_rk4<F>(u: &RealField, t: f64, dt: f64, rhs: F) -> Result<RealField>
where
    F: Fn(&RealField, f64) -> Result<RealField>,
{
    let k1 = rhs(u, t)?;
    let k2 = rhs(&u.add_scaled(0.5 * dt, &k1)?, t + 0.5 * dt)?;
    let k3 = rhs(&u.add_scaled(0.5 * dt, &k2)?, t + 0.5 * dt)?;
    let k4 = rhs(&u.add_scaled(dt, &k3)?, t + dt)?;
    let mut out = u.clone();
    for (o, (((a, b), c), d)) in out
        .samples_mut()
        .iter_mut()
        .zip(k1.samples().iter().zip(k2.samples()).zip(k3.samples()).zip(k4.samples()))
    {
        *o += dt / 6.0 * (a + 2.0 * b + 2.0 * c + d);
    }
    if !out.is_finite() {
        return Err(Error::Overflow { t });
    }
    Ok(out)
}

/// One integrating-factor (Lawson) RK4 step on the transformed variable `v`.
///
/// The stiff linear part is removed exactly by the unitary flow inside
/// [`EvolutionProblem::rhs_transformed`]; with `n = 0` the step is exact.
pub fn step_ifrk4(
    v: &RealField,
    t: f64,
    dt: f64,
    prob: &EvolutionProblem,
    dealias_products: bool,
) -> Result<RealField> {
    step_rk4(v, t, dt, |y, tau| prob.rhs_transformed(y, tau, dealias_products))
}

fn gradient_sup(u: &RealField) -> Result<f64> {
    Ok(u.forward()?.derivative().inverse()?.max_abs())
}

/// Boundary of the "upper third" of the resolved band. With dealiasing the
/// resolved band ends at `N/3`, without it at `N/2`.
fn resolution_boundary(n: usize, dealias: bool) -> usize {
    let resolved = if dealias { n / 3 } else { n / 2 };
    2 * resolved / 3
}

/// March the problem to `t_end`, recording diagnostics every
/// `snapshot_stride` steps. Abnormal endings are encoded in
/// [`Trajectory::termination`], never as errors: gradient growth beyond
/// `blowup_gradient_factor * sup|u0_x|` (or a non-finite state) terminates as
/// blow-up, and energy leaking into the upper third of the resolved band
/// terminates as resolution loss, after which no further diagnostics are
/// emitted.
pub fn evolve(prob: &EvolutionProblem, cfg: &SolverConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let u0 = prob.initial_data().clone();
    let grad0 = gradient_sup(&u0)?;
    let k_tail = resolution_boundary(prob.grid().len(), cfg.dealias);

    let mut times = Vec::new();
    let mut snapshots = Vec::new();
    let mut diag = DiagnosticsSeries::default();

    let mut record = |u: &RealField, t: f64| -> Result<()> {
        let inv = prob.invariants(u)?;
        diag.times.push(t);
        diag.hs_norm.push(sobolev_norm(u, prob.s_index())?);
        let ut = prob.rhs_direct(u, cfg.dealias)?;
        diag.hs_minus_norm.push(sobolev_norm(&ut, prob.s_minus())?);
        diag.sup_ux.push(gradient_sup(u)?);
        diag.mass.push(inv.mass);
        diag.l2.push(inv.l2);
        diag.hamiltonian.push(inv.hamiltonian);
        times.push(t);
        snapshots.push(u.clone());
        Ok(())
    };

    record(&u0, 0.0)?;

    let n_steps = (cfg.t_end / cfg.dt - 1e-9).ceil().max(1.0) as usize;
    // state: u itself for the direct method, the transformed v for ifrk4
    let mut state = u0;
    let mut termination = Termination::Completed;

    for step in 0..n_steps {
        let t = step as f64 * cfg.dt;
        let dt = cfg.dt.min(cfg.t_end - t);
        let stepped = match cfg.method {
            Method::Rk4Direct => {
                step_rk4(&state, t, dt, |y, _| prob.rhs_direct(y, cfg.dealias))
            }
            Method::Ifrk4Transformed => step_ifrk4(&state, t, dt, prob, cfg.dealias),
        };
        state = match stepped {
            Ok(s) => s,
            Err(Error::Overflow { .. }) => {
                termination = Termination::BlowupDetected;
                break;
            }
            Err(e) => return Err(e),
        };
        let t_next = if step + 1 == n_steps { cfg.t_end } else { (step + 1) as f64 * cfg.dt };

        let is_snapshot = (step + 1) % cfg.snapshot_stride == 0 || step + 1 == n_steps;
        if !is_snapshot {
            continue;
        }
        let u = match cfg.method {
            Method::Rk4Direct => state.clone(),
            Method::Ifrk4Transformed => {
                crate::fourier::semigroup(&state, prob.symbol(), t_next)?
            }
        };
        if !u.is_finite() {
            termination = Termination::BlowupDetected;
            break;
        }
        let grad = gradient_sup(&u)?;
        if grad > cfg.blowup_gradient_factor * grad0 {
            record(&u, t_next)?;
            termination = Termination::BlowupDetected;
            break;
        }
        let tail = u.forward()?.tail_energy_fraction(k_tail);
        if tail > RESOLUTION_TAIL_FRACTION {
            record(&u, t_next)?;
            termination = Termination::ResolutionLost;
            break;
        }
        record(&u, t_next)?;
    }

    Ok(Trajectory { times, snapshots, diagnostics: diag, termination })
}
