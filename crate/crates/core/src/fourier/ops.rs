use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::field::{RealField, SpectralField};
use crate::model::symbol::DispersionSymbol;

/// Relative tolerance for the evenness spot check in [`SpectralField::semigroup`].
const EVENNESS_TOL: f64 = 1e-12;

impl SpectralField {
    /// Multiply coefficient `k` by `sigma(xi_k)`.
    ///
    /// When `sigma` is not real at the unpaired Nyquist frequency, the Nyquist
    /// coefficient is zeroed after the multiplication; otherwise it would break
    /// Hermitian symmetry and leak imaginary residue into real fields.
    pub fn apply_multiplier<F: Fn(f64) -> Complex64>(&self, sigma: F) -> Result<SpectralField> {
        let grid = self.grid().clone();
        let n = grid.len();
        let mut coeffs = Vec::with_capacity(n);
        for j in 0..n {
            let s = sigma(grid.xi(j));
            if !s.re.is_finite() || !s.im.is_finite() {
                return Err(Error::BadMultiplier { xi: grid.xi(j) });
            }
            coeffs.push(s * self.coeffs()[j]);
        }
        let nyq = grid.nyquist_slot();
        if sigma(grid.xi(nyq)).im != 0.0 {
            coeffs[nyq] = Complex64::new(0.0, 0.0);
        }
        SpectralField::new(grid, coeffs)
    }

    /// Spectral derivative: multiplier `i*xi`, Nyquist mode zeroed.
    pub fn derivative(&self) -> SpectralField {
        self.apply_multiplier(|xi| Complex64::new(0.0, xi))
            .expect("i*xi is finite at every grid frequency")
    }

    /// Exact linear flow `e^{-t L dx}`: coefficient `k` is rotated by the
    /// unit phase `exp(-i t xi_k m(xi_k))`, so every modulus is unchanged and
    /// all Sobolev norms are preserved.
    ///
    /// The symbol is spot-checked for evenness at the grid frequencies; an
    /// uneven or non-finite symbol is rejected. If the phase at the Nyquist
    /// frequency is not real the Nyquist coefficient is zeroed, as for any
    /// odd-content multiplier.
    pub fn semigroup(&self, symbol: &DispersionSymbol, t: f64) -> Result<SpectralField> {
        let grid = self.grid().clone();
        let n = grid.len();
        let mut values = Vec::with_capacity(n);
        for j in 0..n {
            let m = symbol.eval(grid.xi(j));
            if !m.is_finite() {
                return Err(Error::BadMultiplier { xi: grid.xi(j) });
            }
            values.push(m);
        }
        for j in 1..n / 2 {
            let plus = values[j];
            let minus = values[n - j];
            let scale = plus.abs().max(minus.abs()).max(1.0);
            if (plus - minus).abs() > EVENNESS_TOL * scale {
                return Err(Error::OddSymbol { xi: grid.xi(j), plus, minus });
            }
        }
        // phases come in conjugate pairs since xi*m(xi) is odd; applying the
        // pair explicitly keeps Hermitian symmetry bit-exact
        let mut coeffs = self.coeffs().to_vec();
        for j in 1..n / 2 {
            let phase = Complex64::from_polar(1.0, -t * grid.xi(j) * values[j]);
            coeffs[j] *= phase;
            coeffs[n - j] *= phase.conj();
        }
        let nyq = grid.nyquist_slot();
        let nyq_phase = -t * grid.xi(nyq) * values[nyq];
        if nyq_phase.sin() != 0.0 {
            coeffs[nyq] = Complex64::new(0.0, 0.0);
        } else if nyq_phase.cos() < 0.0 {
            coeffs[nyq] = -coeffs[nyq];
        }
        SpectralField::new(grid, coeffs)
    }
}

/// Spectral derivative of a real field (forward transform, `i*xi`, inverse).
pub fn derivative(u: &RealField) -> Result<RealField> {
    u.forward()?.derivative().inverse()
}

/// Apply the exact linear flow to a real field.
pub fn semigroup(u: &RealField, symbol: &DispersionSymbol, t: f64) -> Result<RealField> {
    u.forward()?.semigroup(symbol, t)?.inverse()
}
