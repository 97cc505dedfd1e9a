use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fourier::{PeriodicGrid, RealField, SpectralField};

/// A band-limited real function given by its positive-frequency coefficients,
/// independent of any particular grid. The same member can be synthesized at
/// several resolutions and evaluated pointwise for periodic extensions.
#[derive(Debug, Clone)]
pub struct ModeSet {
    mean: f64,
    coeffs: Vec<(i64, Complex64)>,
}

impl ModeSet {
    pub fn new(coeffs: Vec<(i64, Complex64)>) -> Result<Self> {
        Self::with_mean(0.0, coeffs)
    }

    pub fn with_mean(mean: f64, coeffs: Vec<(i64, Complex64)>) -> Result<Self> {
        if coeffs.iter().any(|(k, _)| *k < 1) {
            return Err(Error::InvalidParameter(
                "mode set must use positive frequencies only".into(),
            ));
        }
        Ok(Self { mean, coeffs })
    }

    pub fn constant(c: f64) -> Self {
        Self { mean: c, coeffs: Vec::new() }
    }

    pub fn max_mode(&self) -> i64 {
        self.coeffs.iter().map(|(k, _)| *k).max().unwrap_or(0)
    }

    /// Realize the function on a grid (requires all modes below Nyquist).
    pub fn synthesize(&self, grid: &PeriodicGrid) -> Result<RealField> {
        if self.max_mode() >= (grid.len() / 2) as i64 {
            return Err(Error::InvalidParameter(format!(
                "mode {} does not fit on an N = {} grid",
                self.max_mode(),
                grid.len()
            )));
        }
        let mut hat = SpectralField::zeros(grid);
        *hat.coeff_mut(0) = Complex64::new(self.mean, 0.0);
        for &(k, c) in &self.coeffs {
            *hat.coeff_mut(k) = c;
            *hat.coeff_mut(-k) = c.conj();
        }
        hat.inverse()
    }

    /// Evaluate the `2 pi`-periodic function at an arbitrary point; this is
    /// the exact periodic extension used when sampling onto line boxes.
    pub fn eval(&self, x: f64) -> f64 {
        self.mean
            + self
                .coeffs
                .iter()
                .map(|&(k, c)| {
                    let kx = k as f64 * x;
                    2.0 * (c.re * kx.cos() - c.im * kx.sin())
                })
                .sum::<f64>()
    }

    pub fn scale(&self, lambda: f64) -> Self {
        Self {
            mean: lambda * self.mean,
            coeffs: self.coeffs.iter().map(|&(k, c)| (k, c * lambda)).collect(),
        }
    }
}

/// Seeded family of random band-limited fields, modes `1..=k_max`, coefficient
/// components uniform in `[-1, 1)` damped by `(1+k)^-2` and scaled by
/// `amplitude`. Declared here so runs are reproducible from `(seed, count,
/// k_max, amplitude)` alone.
pub fn band_limited_family(seed: u64, count: usize, k_max: usize, amplitude: f64) -> Vec<ModeSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coeffs = (1..=k_max as i64)
                .map(|k| {
                    let damp = amplitude * (1.0 + k as f64).powi(-2);
                    let re: f64 = rng.gen_range(-1.0..1.0);
                    let im: f64 = rng.gen_range(-1.0..1.0);
                    (k, Complex64::new(re * damp, im * damp))
                })
                .collect();
            ModeSet { mean: 0.0, coeffs }
        })
        .collect()
}
