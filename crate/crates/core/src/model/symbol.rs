use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fourier::PeriodicGrid;

/// Real, even Fourier multiplier symbol `m` together with its growth order
/// `l` (so `|m(xi)| <= C (1+|xi|)^l`) and its explicit value at `xi = 0`.
///
/// The raw formula is never evaluated at zero; singular limits such as
/// `sqrt(tanh(xi)/xi)` are supplied by the constructor.
#[derive(Clone)]
pub struct DispersionSymbol {
    name: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    growth_order: f64,
    limit_at_zero: f64,
}

impl fmt::Debug for DispersionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DispersionSymbol")
            .field("name", &self.name)
            .field("growth_order", &self.growth_order)
            .field("limit_at_zero", &self.limit_at_zero)
            .finish()
    }
}

impl DispersionSymbol {
    pub fn custom<F>(name: &str, eval: F, growth_order: f64, limit_at_zero: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { name: name.into(), eval: Arc::new(eval), growth_order, limit_at_zero }
    }

    /// `m = 1`: the linear part reduces to plain transport `u_x`.
    pub fn identity() -> Self {
        Self::custom("identity", |_| 1.0, 0.0, 1.0)
    }

    /// `m = c`.
    pub fn constant(c: f64) -> Self {
        Self::custom("constant", move |_| c, 0.0, c)
    }

    /// Water-wave symbol `sqrt(tanh(xi)/xi)`, weakly dispersive with `l = -1/2`.
    pub fn whitham() -> Self {
        Self::custom("whitham", |xi| (xi.abs().tanh() / xi.abs()).sqrt(), -0.5, 1.0)
    }

    /// `m = -xi^2`, so the linear part is `u_xxx`; strongly dispersive, `l = 2`.
    pub fn kdv() -> Self {
        Self::custom("kdv", |xi| -(xi * xi), 2.0, 0.0)
    }

    /// `m = |xi|`, so the linear part has symbol `i xi |xi|`; `l = 1`.
    pub fn bo() -> Self {
        Self::custom("bo", |xi| xi.abs(), 1.0, 0.0)
    }

    /// `m = |xi|^alpha` for `alpha >= 0`; `l = alpha`.
    pub fn fractional(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "fractional symbol needs alpha >= 0, got {alpha}"
            )));
        }
        let limit = if alpha == 0.0 { 1.0 } else { 0.0 };
        Ok(Self::custom("fractional", move |xi| xi.abs().powf(alpha), alpha, limit))
    }

    /// Look up a builtin by name. `param` feeds `fractional` (alpha) and
    /// `constant` (c); the others ignore it.
    pub fn builtin(name: &str, param: Option<f64>) -> Result<Self> {
        match name {
            "identity" => Ok(Self::identity()),
            "whitham" => Ok(Self::whitham()),
            "kdv" => Ok(Self::kdv()),
            "bo" => Ok(Self::bo()),
            "fractional" => Self::fractional(param.ok_or_else(|| {
                Error::InvalidParameter("fractional symbol needs a parameter alpha".into())
            })?),
            "constant" => Ok(Self::constant(param.ok_or_else(|| {
                Error::InvalidParameter("constant symbol needs a parameter c".into())
            })?)),
            other => Err(Error::UnknownSymbol(other.into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn growth_order(&self) -> f64 {
        self.growth_order
    }

    pub fn limit_at_zero(&self) -> f64 {
        self.limit_at_zero
    }

    pub fn eval(&self, xi: f64) -> f64 {
        if xi == 0.0 {
            self.limit_at_zero
        } else {
            (self.eval)(xi)
        }
    }

    /// Largest evenness violation `|m(xi) - m(-xi)|` over the grid.
    pub fn evenness_defect(&self, grid: &PeriodicGrid) -> f64 {
        let n = grid.len();
        (1..n / 2)
            .map(|j| (self.eval(grid.xi(j)) - self.eval(grid.xi(n - j))).abs())
            .fold(0.0, f64::max)
    }

    /// Smallest constant `C` with `|m(xi)| <= C (1+|xi|)^l` over the grid.
    pub fn growth_constant(&self, grid: &PeriodicGrid) -> f64 {
        grid.wavenumbers()
            .iter()
            .map(|&xi| self.eval(xi).abs() / (1.0 + xi.abs()).powf(self.growth_order))
            .fold(0.0, f64::max)
    }
}
