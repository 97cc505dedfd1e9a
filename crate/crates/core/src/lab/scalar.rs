use std::fmt;
use std::sync::Arc;

type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Scalar outer function for composition checks, optionally carrying an
/// analytic derivative. Without one, derivatives fall back to centered
/// differences on a step the caller supplies (the fine-grid spacing over 8).
#[derive(Clone)]
pub struct ScalarFunction {
    name: String,
    f: Fn1,
    df: Option<Fn1>,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction").field("name", &self.name).finish()
    }
}

impl ScalarFunction {
    pub fn new<F>(name: &str, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { name: name.into(), f: Arc::new(f), df: None }
    }

    pub fn with_derivative<F, D>(name: &str, f: F, df: D) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { name: name.into(), f: Arc::new(f), df: Some(Arc::new(df)) }
    }

    pub fn identity() -> Self {
        Self::with_derivative("identity", |x| x, |_| 1.0)
    }

    pub fn square() -> Self {
        Self::with_derivative("square", |x| x * x, |x| 2.0 * x)
    }

    pub fn cube() -> Self {
        Self::with_derivative("cube", |x| x * x * x, |x| 3.0 * x * x)
    }

    /// `x |x|`: continuously differentiable but not twice, the mild-regularity
    /// regime of the composition theorem.
    pub fn abs_x_x() -> Self {
        Self::with_derivative("abs_x_x", |x| x.abs() * x, |x| 2.0 * x.abs())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn has_derivative(&self) -> bool {
        self.df.is_some()
    }

    /// Derivative at `x`, analytic when available, else a centered difference
    /// with step `h`.
    pub fn derivative(&self, x: f64, h: f64) -> f64 {
        match &self.df {
            Some(df) => df(x),
            None => ((self.f)(x + h) - (self.f)(x - h)) / (2.0 * h),
        }
    }
}
