use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform periodic grid on `[0, 2*pi*P)` with `N` sample points.
///
/// Frequencies are spaced `1/P` apart; the "line" case is approximated by a
/// large box (`P` up to 64) with compactly supported data.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicGrid {
    n: usize,
    period_multiplier: usize,
    dx: f64,
    wavenumbers: Vec<f64>,
}

impl PeriodicGrid {
    /// Build a grid with `n` points on `[0, 2*pi*p)`.
    ///
    /// `n` must be even and at least 8; `p` at least 1. The wavenumber layout
    /// is FFT-ordered: `k/p` for `k = 0, 1, ..., n/2-1, -n/2, ..., -1`.
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if n < 8 {
            return Err(Error::InvalidGrid(format!("N = {n} is below the minimum of 8")));
        }
        if n % 2 != 0 {
            return Err(Error::InvalidGrid(format!("N = {n} must be even")));
        }
        if p < 1 {
            return Err(Error::InvalidGrid("period multiplier P must be >= 1".into()));
        }
        let dx = 2.0 * PI * p as f64 / n as f64;
        let pf = p as f64;
        let wavenumbers = (0..n)
            .map(|j| {
                let k = if j < n / 2 { j as i64 } else { j as i64 - n as i64 };
                k as f64 / pf
            })
            .collect();
        Ok(Self { n, period_multiplier: p, dx, wavenumbers })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn period_multiplier(&self) -> usize {
        self.period_multiplier
    }

    /// Circumference of the torus, `2*pi*P`.
    pub fn circumference(&self) -> f64 {
        2.0 * PI * self.period_multiplier as f64
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Sample location `x_j = j * dx`.
    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx
    }

    /// Frequency `xi_k = k/P` of FFT-ordered coefficient slot `j`.
    pub fn xi(&self, j: usize) -> f64 {
        self.wavenumbers[j]
    }

    /// All frequencies in FFT order.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// Signed integer mode index `k` of FFT-ordered slot `j`.
    pub fn mode(&self, j: usize) -> i64 {
        if j < self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Slot of the unpaired Nyquist mode `k = -N/2`.
    pub fn nyquist_slot(&self) -> usize {
        self.n / 2
    }

    /// Evaluate a closure at every sample point.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        (0..self.n).map(|j| f(self.x(j))).collect()
    }
}
