use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Smoothness tag for a nonlinearity.
#[derive(Debug, Clone, PartialEq)]
pub enum Regularity {
    Smooth,
    /// `H^r_loc` with the given `r`; used for the signed-power family.
    LocalSobolev { r: f64 },
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Nonlinear flux `n` with its first two derivatives and an antiderivative
/// (`N' = n`, `N(0) = 0`) used by the Hamiltonian diagnostic.
#[derive(Clone)]
pub struct Nonlinearity {
    name: String,
    n: ScalarFn,
    n1: ScalarFn,
    n2: ScalarFn,
    antiderivative: ScalarFn,
    regularity: Regularity,
}

impl fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Nonlinearity")
            .field("name", &self.name)
            .field("regularity", &self.regularity)
            .finish()
    }
}

impl Nonlinearity {
    pub fn custom<F, F1, F2, Fa>(
        name: &str,
        n: F,
        n1: F1,
        n2: F2,
        antiderivative: Fa,
        regularity: Regularity,
    ) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        F1: Fn(f64) -> f64 + Send + Sync + 'static,
        F2: Fn(f64) -> f64 + Send + Sync + 'static,
        Fa: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            n: Arc::new(n),
            n1: Arc::new(n1),
            n2: Arc::new(n2),
            antiderivative: Arc::new(antiderivative),
            regularity,
        }
    }

    /// `n = 0`: the equation degenerates to its linear part.
    pub fn zero() -> Self {
        Self::custom("zero", |_| 0.0, |_| 0.0, |_| 0.0, |_| 0.0, Regularity::Smooth)
    }

    /// `n(u) = u^p` for integer `p >= 2`.
    pub fn power(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameter(format!("power nonlinearity needs p >= 2, got {p}")));
        }
        let pi = p as i32;
        let pf = p as f64;
        Ok(Self::custom(
            &format!("power({p})"),
            move |u| u.powi(pi),
            move |u| pf * u.powi(pi - 1),
            move |u| pf * (pf - 1.0) * u.powi(pi - 2),
            move |u| u.powi(pi + 1) / (pf + 1.0),
            Regularity::Smooth,
        ))
    }

    /// `n(u) = |u|^(p-1) u` for real `p >= 2`; `n'(0) = 0` by continuity.
    pub fn signed_power(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 2.0 {
            return Err(Error::InvalidParameter(format!(
                "signed_power nonlinearity needs p >= 2, got {p}"
            )));
        }
        Ok(Self::custom(
            &format!("signed_power({p})"),
            move |u| u.abs().powf(p - 1.0) * u,
            move |u| p * u.abs().powf(p - 1.0),
            move |u| {
                if u == 0.0 {
                    0.0
                } else {
                    p * (p - 1.0) * u.abs().powf(p - 2.0) * u.signum()
                }
            },
            move |u| u.abs().powf(p + 1.0) / (p + 1.0),
            // conservative tag for |u|^(p-1) u
            Regularity::LocalSobolev { r: p + 0.5 },
        ))
    }

    /// `n(u) = e^u - 1 - u`: smooth with arbitrarily fast growth, `n(0) = n'(0) = 0`.
    pub fn exponential() -> Self {
        Self::custom(
            "exponential",
            |u| u.exp() - 1.0 - u,
            |u| u.exp() - 1.0,
            |u| u.exp(),
            |u| u.exp() - 1.0 - u - 0.5 * u * u,
            Regularity::Smooth,
        )
    }

    /// Look up a builtin by name; `param` feeds the power families.
    pub fn builtin(name: &str, param: Option<f64>) -> Result<Self> {
        match name {
            "zero" => Ok(Self::zero()),
            "power" => {
                let p = param.unwrap_or(2.0);
                if p.fract() != 0.0 || p < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "power nonlinearity needs an integer p, got {p}"
                    )));
                }
                Self::power(p as u32)
            }
            "signed_power" => Self::signed_power(param.unwrap_or(2.0)),
            "exponential" => Ok(Self::exponential()),
            other => Err(Error::UnknownNonlinearity(other.into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn regularity(&self) -> &Regularity {
        &self.regularity
    }

    pub fn n(&self, u: f64) -> f64 {
        (self.n)(u)
    }

    /// First derivative `n'`.
    pub fn n1(&self, u: f64) -> f64 {
        (self.n1)(u)
    }

    /// Second derivative `n''`.
    pub fn n2(&self, u: f64) -> f64 {
        (self.n2)(u)
    }

    /// Antiderivative with `N(0) = 0`.
    pub fn antiderivative(&self, u: f64) -> f64 {
        (self.antiderivative)(u)
    }
}
