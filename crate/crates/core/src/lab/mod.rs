//! Executable numerical checks of the analytical claims: composition bound,
//! localizing inequality, norm equivalence, continuous dependence,
//! conservation audit, wave breaking, and convergence studies.
//!
//! "Bounded up to a constant" statements are tested as bounded ratio families
//! plus stability under one refinement doubling, since no sharp constants are
//! available to pin down.

mod checks;
mod dynamics;
mod families;
mod scalar;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub use checks::{check_composition_bound, check_localizing, check_norm_equivalence, NormEquivalence};
pub use dynamics::{convergence_study, run_continuous_dependence, run_wave_breaking};
pub use families::{band_limited_family, ModeSet};
pub use scalar::ScalarFunction;

/// Largest allowed spread of `d(eps)/eps` in the continuous-dependence check.
pub const RATIO_SPREAD_MAX: f64 = 4.0;
/// Gradient amplification that counts as wave breaking.
pub const BREAKING_GRADIENT_RATIO: f64 = 50.0;
/// Sup-norm growth must stay below this while the gradient blows up.
pub const BREAKING_SUPNORM_MAX: f64 = 2.0;
/// Minimal gradient growth that counts as a visible trend; resolution loss
/// before this is inconclusive rather than a failed breaking run.
pub const TREND_VISIBLE_RATIO: f64 = 5.0;
/// Allowed deviation from the declared convergence order.
pub const ORDER_TOLERANCE: f64 = 0.3;
/// Refined-to-base ratio band classified as stable.
pub const TREND_STABLE_LO: f64 = 0.8;
pub const TREND_STABLE_HI: f64 = 1.2;
/// Norm-equivalence interval: largest allowed `c2/c1`.
pub const EQUIV_SPREAD_MAX: f64 = 10.0;
/// Norm-equivalence interval endpoints may shift by at most this fraction
/// under one refinement doubling.
pub const EQUIV_SHIFT_MAX: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trend {
    Stable,
    Growing,
    Shrinking,
}

/// Classify the refined/base ratio of a summary statistic.
pub fn classify_trend(base: f64, refined: f64) -> Trend {
    let r = refined / base;
    if r > TREND_STABLE_HI {
        Trend::Growing
    } else if r < TREND_STABLE_LO {
        Trend::Shrinking
    } else {
        Trend::Stable
    }
}

/// Ratio family for one inequality check: left side over right side per
/// member, with the refinement trend of the maximum.
#[derive(Debug, Clone, Serialize)]
pub struct RatioReport {
    pub family_id: String,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    pub refinement_trend: Trend,
}

impl RatioReport {
    pub fn new(family_id: &str, ratios: Vec<f64>, refinement_trend: Trend) -> Result<Self> {
        if ratios.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(Error::Precondition(format!(
                "{family_id}: ratios must be finite and nonnegative"
            )));
        }
        let max_ratio = ratios.iter().fold(0.0f64, |a, &b| a.max(b));
        Ok(Self { family_id: family_id.into(), ratios, max_ratio, refinement_trend })
    }

    pub fn is_bounded_and_stable(&self) -> bool {
        self.max_ratio.is_finite() && self.refinement_trend == Trend::Stable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

/// Outcome of one experiment, decided only by the pre-declared thresholds
/// above; `provenance` carries the configuration hash when driven from the
/// command line.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub outcome: Outcome,
    pub metrics: BTreeMap<String, f64>,
    pub provenance: String,
}

impl ExperimentReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            parameters: BTreeMap::new(),
            outcome: Outcome::Inconclusive,
            metrics: BTreeMap::new(),
            provenance: String::new(),
        }
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn with_metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.into(), value);
        self
    }

    pub fn with_outcome(mut self, outcome: Outcome) -> Self {
        self.outcome = outcome;
        self
    }

    pub fn with_provenance(mut self, hash: &str) -> Self {
        self.provenance = hash.into();
        self
    }
}
