use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::fourier::grid::PeriodicGrid;

/// Relative Hermitian-symmetry defect tolerated by [`SpectralField::inverse`].
pub const HERMITIAN_TOL: f64 = 1e-10;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Real samples `u(x_j)` on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: PeriodicGrid,
    samples: Vec<f64>,
}

/// Complex Fourier coefficients in FFT order, forward-normalized by `1/N`
/// so that slot 0 carries the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: PeriodicGrid,
    coeffs: Vec<Complex64>,
}

impl RealField {
    pub fn new(grid: PeriodicGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch(grid.len(), samples.len()));
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(grid: &PeriodicGrid, f: F) -> Self {
        let samples = grid.sample(f);
        Self { grid: grid.clone(), samples }
    }

    pub fn zeros(grid: &PeriodicGrid) -> Self {
        Self { grid: grid.clone(), samples: vec![0.0; grid.len()] }
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Pointwise map, e.g. applying a nonlinearity sample by sample.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Self {
        Self {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_with<F: Fn(f64, f64) -> f64>(&self, other: &Self, f: F) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(self.grid.len(), other.grid.len()));
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self { grid: self.grid.clone(), samples })
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `self + c * other`, the workhorse of Runge-Kutta stage assembly.
    pub fn add_scaled(&self, c: f64, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + c * b)
    }

    /// Forward DFT with the `1/N` convention:
    /// `u_hat_k = (1/N) * sum_j u(x_j) exp(-i k x_j / P)`.
    pub fn forward(&self) -> Result<SpectralField> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = self.grid.len();
        let mut buf: Vec<Complex64> =
            self.samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        PLANNER.with(|p| {
            let fft = p.borrow_mut().plan_fft_forward(n);
            fft.process(&mut buf);
        });
        let scale = 1.0 / n as f64;
        for c in &mut buf {
            *c *= scale;
        }
        // real input has an exactly Hermitian spectrum; discard the rounding
        // asymmetry of the complex FFT so defects cannot accumulate over
        // long multiplier chains
        for j in 1..n / 2 {
            let avg = 0.5 * (buf[j] + buf[n - j].conj());
            buf[j] = avg;
            buf[n - j] = avg.conj();
        }
        buf[0].im = 0.0;
        buf[n / 2].im = 0.0;
        Ok(SpectralField { grid: self.grid.clone(), coeffs: buf })
    }
}

impl SpectralField {
    pub fn new(grid: PeriodicGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::GridMismatch(grid.len(), coeffs.len()));
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: &PeriodicGrid) -> Self {
        Self { grid: grid.clone(), coeffs: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Coefficient of signed mode `k` (wraps into the FFT layout).
    pub fn coeff(&self, k: i64) -> Complex64 {
        let n = self.grid.len() as i64;
        let j = k.rem_euclid(n) as usize;
        self.coeffs[j]
    }

    pub fn coeff_mut(&mut self, k: i64) -> &mut Complex64 {
        let n = self.grid.len() as i64;
        let j = k.rem_euclid(n) as usize;
        &mut self.coeffs[j]
    }

    /// Largest relative deviation from `u_hat(-k) = conj(u_hat(k))`.
    ///
    /// The unpaired Nyquist mode contributes through its imaginary part.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.grid.len();
        let scale = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = self.coeffs[n / 2].im.abs();
        for j in 1..n / 2 {
            let d = (self.coeffs[j] - self.coeffs[n - j].conj()).norm();
            worst = worst.max(d);
        }
        worst = worst.max(self.coeffs[0].im.abs());
        worst / scale
    }

    /// Inverse DFT back to real samples.
    ///
    /// Fails when the Hermitian defect exceeds [`HERMITIAN_TOL`], which
    /// signals corrupted state; the sub-tolerance imaginary residue of the
    /// complex inverse transform is discarded.
    pub fn inverse(&self) -> Result<RealField> {
        let defect = self.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::SymmetryViolation { defect });
        }
        let n = self.grid.len();
        let mut buf = self.coeffs.clone();
        PLANNER.with(|p| {
            let fft = p.borrow_mut().plan_fft_inverse(n);
            fft.process(&mut buf);
        });
        let samples = buf.iter().map(|c| c.re).collect();
        Ok(RealField { grid: self.grid.clone(), samples })
    }

    /// Sum of squared coefficient moduli; equals `mean(u^2)` by Parseval.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Fraction of [`Self::energy`] carried by modes with `|k| >= k_min`.
    pub fn tail_energy_fraction(&self, k_min: usize) -> f64 {
        let total = self.energy();
        if total == 0.0 {
            return 0.0;
        }
        let tail: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(j, _)| self.grid.mode(*j).unsigned_abs() as usize >= k_min)
            .map(|(_, c)| c.norm_sqr())
            .sum();
        tail / total
    }
}

/// Spectral derivative of uniformly spaced samples over a box of the given
/// circumference, treated as periodic. Used for line fields whose compact
/// support makes the periodic extension smooth across the box seam. The
/// Nyquist mode is zeroed.
pub(crate) fn derivative_uniform(samples: &[f64], circumference: f64) -> Vec<f64> {
    let n = samples.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_forward(n);
        fft.process(&mut buf);
    });
    let base = 2.0 * std::f64::consts::PI / circumference;
    for (j, c) in buf.iter_mut().enumerate() {
        let k = if j < n / 2 { j as i64 } else { j as i64 - n as i64 };
        let xi = base * k as f64;
        *c *= Complex64::new(0.0, xi / n as f64);
    }
    buf[n / 2] = Complex64::new(0.0, 0.0);
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_inverse(n);
        fft.process(&mut buf);
    });
    buf.iter().map(|c| c.re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> PeriodicGrid {
        PeriodicGrid::new(n, 1).unwrap()
    }

    #[test]
    fn constant_field_transforms_to_mean() {
        let u = RealField::from_fn(&grid(32), |_| 1.0);
        let uh = u.forward().unwrap();
        assert!((uh.coeff(0) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        for k in 1..16 {
            assert!(uh.coeff(k).norm() < 1e-14);
            assert!(uh.coeff(-k).norm() < 1e-14);
        }
    }

    #[test]
    fn cosine_splits_into_two_half_modes() {
        let u = RealField::from_fn(&grid(64), |x| x.cos());
        let uh = u.forward().unwrap();
        assert!((uh.coeff(1) - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        assert!((uh.coeff(-1) - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        assert!(uh.coeff(2).norm() < 1e-14);
    }

    #[test]
    fn inverse_of_pure_mean_is_constant() {
        let g = grid(16);
        let mut uh = SpectralField::zeros(&g);
        *uh.coeff_mut(0) = Complex64::new(2.0, 0.0);
        let u = uh.inverse().unwrap();
        for &v in u.samples() {
            assert!((v - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn antisymmetric_imaginary_pair_is_sine() {
        let g = grid(64);
        let mut uh = SpectralField::zeros(&g);
        *uh.coeff_mut(1) = Complex64::new(0.0, -0.5);
        *uh.coeff_mut(-1) = Complex64::new(0.0, 0.5);
        let u = uh.inverse().unwrap();
        for (j, &v) in u.samples().iter().enumerate() {
            assert!((v - g.x(j).sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let g = grid(16);
        let mut uh = SpectralField::zeros(&g);
        *uh.coeff_mut(1) = Complex64::new(1.0, 0.0);
        // missing conjugate partner at -1
        assert!(matches!(uh.inverse(), Err(Error::SymmetryViolation { .. })));
    }

    #[test]
    fn round_trip_reaches_machine_precision() {
        let g = grid(128);
        let u = RealField::from_fn(&g, |x| (3.0 * x).sin() + 0.4 * (7.0 * x).cos() + 0.1);
        let back = u.forward().unwrap().inverse().unwrap();
        let err = u.sub(&back).unwrap().max_abs();
        assert!(err < 1e-12 * u.max_abs().max(1.0));
    }

    #[test]
    fn parseval_holds() {
        let g = grid(64);
        let u = RealField::from_fn(&g, |x| x.sin() + 0.3 * (5.0 * x).cos());
        let uh = u.forward().unwrap();
        let mean_sq = u.samples().iter().map(|v| v * v).sum::<f64>() / g.len() as f64;
        assert!((uh.energy() - mean_sq).abs() < 1e-12 * mean_sq.max(1.0));
    }

    #[test]
    fn non_finite_samples_are_rejected() {
        let g = grid(16);
        let mut u = RealField::zeros(&g);
        u.samples_mut()[3] = f64::NAN;
        assert!(matches!(u.forward(), Err(Error::NonFinite)));
    }
}
