//! Initial-data presets shared by the CLI schema and the experiment suite.
//! The formulas are part of the public contract so that independent
//! implementations sample identical fields.

use std::f64::consts::PI;

use crate::fourier::{PeriodicGrid, RealField};

/// `a * exp(-kappa (x - pi P)^2)`: a Gaussian bump centered mid-domain.
pub fn gauss(grid: &PeriodicGrid, a: f64, kappa: f64) -> RealField {
    let center = PI * grid.period_multiplier() as f64;
    RealField::from_fn(grid, |x| a * (-kappa * (x - center).powi(2)).exp())
}

/// `a * sin(k x / P)`.
pub fn sine(grid: &PeriodicGrid, a: f64, k: u32) -> RealField {
    let p = grid.period_multiplier() as f64;
    RealField::from_fn(grid, |x| a * (k as f64 * x / p).sin())
}

/// `a1 * sin(k1 x / P) + a2 * cos(k2 x / P)`.
pub fn two_mode(grid: &PeriodicGrid, a1: f64, k1: u32, a2: f64, k2: u32) -> RealField {
    let p = grid.period_multiplier() as f64;
    RealField::from_fn(grid, |x| {
        a1 * (k1 as f64 * x / p).sin() + a2 * (k2 as f64 * x / p).cos()
    })
}

/// `sum_k c_k cos(k x / P)` for `k = 1..=len(c)`.
pub fn cosine_modes(grid: &PeriodicGrid, coefficients: &[f64]) -> RealField {
    let p = grid.period_multiplier() as f64;
    RealField::from_fn(grid, |x| {
        coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| c * ((i + 1) as f64 * x / p).cos())
            .sum()
    })
}

/// Amplitude of the smooth reference run, `gauss(0.3, 4)`.
pub const SMOOTH_AMPLITUDE: f64 = 0.3;
/// Width of the smooth reference run.
pub const SMOOTH_KAPPA: f64 = 4.0;

/// Amplitude of the wave-breaking run: large enough that nonlinear
/// steepening beats the weak Whitham dispersion.
pub const BREAKING_AMPLITUDE: f64 = 0.5;
/// Width of the wave-breaking run: a wide profile keeps the initial
/// gradient small, leaving room for the steepening ratio to develop
/// before the front outruns the grid.
pub const BREAKING_KAPPA: f64 = 0.25;
/// Horizon for the breaking contrast: past the Whitham breaking time
/// (about 2.5 with this datum) yet before KdV develops comparable
/// gradients (its ratio stays in single digits this far).
pub const BREAKING_HORIZON: f64 = 3.0;

/// The smooth small-amplitude reference datum.
pub fn smooth_preset(grid: &PeriodicGrid) -> RealField {
    gauss(grid, SMOOTH_AMPLITUDE, SMOOTH_KAPPA)
}

/// The steepening datum used for the wave-breaking contrast.
pub fn breaking_preset(grid: &PeriodicGrid) -> RealField {
    gauss(grid, BREAKING_AMPLITUDE, BREAKING_KAPPA)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_peaks_mid_domain() {
        let g = PeriodicGrid::new(128, 1).unwrap();
        let u = gauss(&g, 0.3, 4.0);
        let peak = u.samples()[64];
        assert!((peak - 0.3).abs() < 1e-10);
        assert!(u.max_abs() <= 0.3 + 1e-12);
    }

    #[test]
    fn sine_respects_period_multiplier() {
        let g = PeriodicGrid::new(64, 2).unwrap();
        let u = sine(&g, 1.0, 1);
        // one full oscillation over the doubled domain
        assert!((u.samples()[16] - (g.x(16) / 2.0).sin()).abs() < 1e-14);
    }
}
