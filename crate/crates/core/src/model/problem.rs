use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{PeriodicGrid, RealField};
use crate::model::nonlin::Nonlinearity;
use crate::model::symbol::DispersionSymbol;
use crate::timestep::dealias;

/// A Cauchy problem `u_t + (n(u))_x + L u_x = 0` on a periodic grid, with the
/// Sobolev index `s` used for diagnostics.
#[derive(Debug, Clone)]
pub struct EvolutionProblem {
    grid: PeriodicGrid,
    symbol: DispersionSymbol,
    nonlinearity: Nonlinearity,
    u0: RealField,
    s_index: f64,
}

/// Discrete functionals tracked along trajectories: the mean, the mean of
/// `u^2`, and `mean(N(u) + u*(Lu)/2)` with `N' = n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedQuantities {
    pub mass: f64,
    pub l2: f64,
    pub hamiltonian: f64,
}

impl EvolutionProblem {
    /// Requires `s > 3/2` (the local well-posedness regime) and finite data.
    pub fn new(
        symbol: DispersionSymbol,
        nonlinearity: Nonlinearity,
        u0: RealField,
        s_index: f64,
    ) -> Result<Self> {
        if !(s_index > 1.5) {
            return Err(Error::InvalidParameter(format!(
                "s_index must exceed 3/2, got {s_index}"
            )));
        }
        if !u0.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { grid: u0.grid().clone(), symbol, nonlinearity, u0, s_index })
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn symbol(&self) -> &DispersionSymbol {
        &self.symbol
    }

    pub fn nonlinearity(&self) -> &Nonlinearity {
        &self.nonlinearity
    }

    pub fn initial_data(&self) -> &RealField {
        &self.u0
    }

    pub fn s_index(&self) -> f64 {
        self.s_index
    }

    /// Sobolev index `s - max(1, l+1)` of the time-derivative class.
    pub fn s_minus(&self) -> f64 {
        self.s_index - 1.0f64.max(self.symbol.growth_order() + 1.0)
    }

    /// Replace the initial data, keeping symbol, nonlinearity and `s`.
    pub fn with_initial_data(&self, u0: RealField) -> Result<Self> {
        Self::new(self.symbol.clone(), self.nonlinearity.clone(), u0, self.s_index)
    }

    /// Direct right-hand side `-(n(u))_x - L u_x`, computed spectrally.
    ///
    /// The nonlinear product is dealiased by the two-thirds rule when
    /// `dealias_products` is set. Overflow of `n(u)` (fast-growing
    /// nonlinearities on large states) is signalled as [`Error::Overflow`]
    /// rather than propagating non-finite samples.
    pub fn rhs_direct(&self, u: &RealField, dealias_products: bool) -> Result<RealField> {
        let flux = u.map(|v| self.nonlinearity.n(v));
        if !flux.is_finite() {
            return Err(Error::Overflow { t: f64::NAN });
        }
        let mut flux_hat = flux.forward()?;
        if dealias_products {
            flux_hat = dealias(&flux_hat);
        }
        let u_hat = u.forward()?;
        let grid = self.grid.clone();
        let n = grid.len();
        let mut coeffs = Vec::with_capacity(n);
        for j in 0..n {
            let xi = grid.xi(j);
            let i_xi = Complex64::new(0.0, xi);
            let m = self.symbol.eval(xi);
            if !m.is_finite() {
                return Err(Error::BadMultiplier { xi });
            }
            coeffs.push(-(i_xi * flux_hat.coeffs()[j] + i_xi * m * u_hat.coeffs()[j]));
        }
        // i*xi has odd content: the unpaired Nyquist mode is dropped
        coeffs[grid.nyquist_slot()] = Complex64::new(0.0, 0.0);
        crate::fourier::SpectralField::new(grid, coeffs)?.inverse()
    }

    /// Transformed right-hand side `-A(t,v)v` of the integrating-factor
    /// formulation: propagate to `w = e^{-t L dx} v`, form `n'(w) w_x`,
    /// and propagate the product back.
    pub fn rhs_transformed(
        &self,
        v: &RealField,
        t: f64,
        dealias_products: bool,
    ) -> Result<RealField> {
        let w_hat = v.forward()?.semigroup(&self.symbol, t)?;
        let w = w_hat.inverse()?;
        let wx = w_hat.derivative().inverse()?;
        let z = w.zip_with(&wx, |a, b| self.nonlinearity.n1(a) * b)?;
        if !z.is_finite() {
            return Err(Error::Overflow { t });
        }
        let mut z_hat = z.forward()?;
        if dealias_products {
            z_hat = dealias(&z_hat);
        }
        let back = z_hat.semigroup(&self.symbol, -t)?;
        back.inverse().map(|f| f.scale(-1.0))
    }

    /// Mass, `L^2` density and Hamiltonian density of a state.
    pub fn invariants(&self, u: &RealField) -> Result<ConservedQuantities> {
        if !u.is_finite() {
            return Err(Error::NonFinite);
        }
        let mass = u.mean();
        let l2 = u.samples().iter().map(|v| v * v).sum::<f64>() / u.samples().len() as f64;
        let lu = u
            .forward()?
            .apply_multiplier(|xi| Complex64::new(self.symbol.eval(xi), 0.0))?
            .inverse()?;
        let hamiltonian = u
            .samples()
            .iter()
            .zip(lu.samples())
            .map(|(&a, &b)| self.nonlinearity.antiderivative(a) + 0.5 * a * b)
            .sum::<f64>()
            / u.samples().len() as f64;
        Ok(ConservedQuantities { mass, l2, hamiltonian })
    }
}
