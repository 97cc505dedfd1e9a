//! Configuration schema, validation, canonical echo, and hashing.
//!
//! A config validates fully before any computation; unknown keys are
//! rejected. The resolved form (all defaults filled, seed included) is
//! echoed back to the output directory and its SHA-256 identifies every
//! artifact the run produces.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use dispersive::{
    BesovIndex, DispersionSymbol, EvolutionProblem, Method, Nonlinearity, PeriodicGrid,
    RealField, SolverConfig,
};

use crate::CliError;

/// `q` accepts a number or the string `"inf"`.
#[derive(Debug, Clone, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum QValue {
    Number(f64),
    Word(String),
}

impl QValue {
    pub fn as_f64(&self) -> Result<f64, CliError> {
        match self {
            QValue::Number(v) => Ok(*v),
            QValue::Word(w) if w == "inf" => Ok(f64::INFINITY),
            QValue::Word(w) => Err(CliError::Validation(format!(
                "experiment.q: expected a number or \"inf\", got \"{w}\""
            ))),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    pub symbol: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol_param: Option<f64>,
    pub nonlinearity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonlinearity_param: Option<f64>,
    pub u0: String,
    pub n: usize,
    #[serde(default = "default_period")]
    pub period_multiplier: usize,
    pub s_index: f64,
}

fn default_period() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub method: String,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_true")]
    pub dealias: bool,
    #[serde(default = "default_blowup_factor")]
    pub blowup_gradient_factor: f64,
    #[serde(default = "default_stride")]
    pub snapshot_stride: usize,
}

fn default_true() -> bool {
    true
}

fn default_blowup_factor() -> f64 {
    1e4
}

fn default_stride() -> usize {
    1
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<QValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_list: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt_list: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_order: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_dilation: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    #[serde(default = "default_formats")]
    pub formats: Vec<String>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: None, formats: default_formats() }
    }
}

fn default_formats() -> Vec<String> {
    vec!["diagnostics".into(), "snapshots".into(), "report".into()]
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    pub problem: ProblemSection,
    pub solver: SolverSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentSection>,
    #[serde(default)]
    pub output: OutputSection,
}

const EXPERIMENT_KINDS: [&str; 6] = [
    "norm_equivalence",
    "localizing",
    "composition",
    "continuous_dependence",
    "wave_breaking",
    "convergence",
];

const SCALAR_FUNCTIONS: [&str; 4] = ["identity", "square", "cube", "abs_x_x"];

impl RunConfig {
    /// Parse and fully validate a TOML document; every default is filled so
    /// the returned value echoes back the complete effective configuration.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| CliError::Validation(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let p = &self.problem;
        if p.s_index <= 1.5 {
            return Err(CliError::Validation(format!(
                "problem.s_index: must exceed 3/2 (the local well-posedness regime), got {}",
                p.s_index
            )));
        }
        // constructing the pieces surfaces the precise core errors
        self.build_symbol()?;
        self.build_nonlinearity()?;
        let grid = self.build_grid()?;
        parse_field_expression(&p.u0, &grid)
            .map_err(|e| CliError::Validation(format!("problem.u0: {e}")))?;
        self.build_method()?;
        self.build_solver()?.validate().map_err(|e| {
            CliError::Validation(format!("solver: {e}"))
        })?;
        if let Some(exp) = &self.experiment {
            if !EXPERIMENT_KINDS.contains(&exp.kind.as_str()) {
                return Err(CliError::Validation(format!(
                    "experiment.kind: unknown kind `{}`, expected one of: {}",
                    exp.kind,
                    EXPERIMENT_KINDS.join(", ")
                )));
            }
            if let Some(f) = &exp.function {
                if !SCALAR_FUNCTIONS.contains(&f.as_str()) {
                    return Err(CliError::Validation(format!(
                        "experiment.function: unknown function `{f}`, expected one of: {}",
                        SCALAR_FUNCTIONS.join(", ")
                    )));
                }
            }
            if let (Some(s), Some(pp)) = (exp.s, exp.p) {
                BesovIndex::new(s, pp, exp.q.as_ref().map(|q| q.as_f64()).transpose()?.unwrap_or(2.0))
                    .map_err(|e| CliError::Validation(format!("experiment: {e}")))?;
            }
            if let Some(dir) = &exp.direction {
                parse_field_expression(dir, &grid)
                    .map_err(|e| CliError::Validation(format!("experiment.direction: {e}")))?;
            }
        }
        for f in &self.output.formats {
            if !["diagnostics", "snapshots", "report"].contains(&f.as_str()) {
                return Err(CliError::Validation(format!(
                    "output.formats: unknown format `{f}`"
                )));
            }
        }
        Ok(())
    }

    pub fn build_grid(&self) -> Result<PeriodicGrid, CliError> {
        PeriodicGrid::new(self.problem.n, self.problem.period_multiplier)
            .map_err(|e| CliError::Validation(format!("problem: {e}")))
    }

    pub fn build_symbol(&self) -> Result<DispersionSymbol, CliError> {
        DispersionSymbol::builtin(&self.problem.symbol, self.problem.symbol_param)
            .map_err(|e| CliError::Validation(format!("problem.symbol: {e}")))
    }

    pub fn build_nonlinearity(&self) -> Result<Nonlinearity, CliError> {
        Nonlinearity::builtin(&self.problem.nonlinearity, self.problem.nonlinearity_param)
            .map_err(|e| CliError::Validation(format!("problem.nonlinearity: {e}")))
    }

    pub fn build_method(&self) -> Result<Method, CliError> {
        match self.solver.method.as_str() {
            "rk4" | "rk4_direct" => Ok(Method::Rk4Direct),
            "ifrk4" | "ifrk4_transformed" => Ok(Method::Ifrk4Transformed),
            other => Err(CliError::Validation(format!(
                "solver.method: unknown method `{other}`, expected rk4 or ifrk4"
            ))),
        }
    }

    pub fn build_solver(&self) -> Result<SolverConfig, CliError> {
        let mut cfg = SolverConfig::new(self.build_method()?, self.solver.dt, self.solver.t_end);
        cfg.dealias = self.solver.dealias;
        cfg.blowup_gradient_factor = self.solver.blowup_gradient_factor;
        cfg.snapshot_stride = self.solver.snapshot_stride;
        Ok(cfg)
    }

    pub fn build_problem(&self) -> Result<EvolutionProblem, CliError> {
        let grid = self.build_grid()?;
        let u0 = parse_field_expression(&self.problem.u0, &grid)
            .map_err(|e| CliError::Validation(format!("problem.u0: {e}")))?;
        EvolutionProblem::new(
            self.build_symbol()?,
            self.build_nonlinearity()?,
            u0,
            self.problem.s_index,
        )
        .map_err(|e| CliError::Validation(format!("problem: {e}")))
    }

    /// Canonical TOML echo of the fully resolved configuration.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("resolved config serializes")
    }

    /// SHA-256 of the canonical echo; identifies all artifacts of a run.
    pub fn hash(&self) -> [u8; 32] {
        let mut hasher = Sha256::new();
        hasher.update(self.canonical().as_bytes());
        hasher.finalize().into()
    }

    pub fn hash_hex(&self) -> String {
        hex::encode(self.hash())
    }
}

/// Parse an initial-data expression: `gauss(a=0.3,kappa=4)`,
/// `sine(a=1,k=2)`, `two_mode(a1=,k1=,a2=,k2=)`, or `cosines(c1,c2,...)`.
pub fn parse_field_expression(expr: &str, grid: &PeriodicGrid) -> Result<RealField, CliError> {
    let expr = expr.trim();
    let open = expr.find('(').ok_or_else(|| bad_expr(expr, "missing `(`"))?;
    if !expr.ends_with(')') {
        return Err(bad_expr(expr, "missing trailing `)`"));
    }
    let name = &expr[..open];
    let body = &expr[open + 1..expr.len() - 1];

    let named = |body: &str| -> Result<Vec<(String, f64)>, CliError> {
        body.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|pair| {
                let (k, v) = pair
                    .split_once('=')
                    .ok_or_else(|| bad_expr(expr, "arguments must be key=value"))?;
                let value: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| bad_expr(expr, &format!("bad number `{}`", v.trim())))?;
                Ok((k.trim().to_string(), value))
            })
            .collect()
    };
    let get = |args: &[(String, f64)], key: &str| -> Result<f64, CliError> {
        args.iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| bad_expr(expr, &format!("missing argument `{key}`")))
    };

    match name {
        "gauss" => {
            let args = named(body)?;
            Ok(dispersive::presets::gauss(grid, get(&args, "a")?, get(&args, "kappa")?))
        }
        "sine" => {
            let args = named(body)?;
            let k = get(&args, "k")?;
            if k.fract() != 0.0 || k < 1.0 {
                return Err(bad_expr(expr, "k must be a positive integer"));
            }
            Ok(dispersive::presets::sine(grid, get(&args, "a")?, k as u32))
        }
        "two_mode" => {
            let args = named(body)?;
            Ok(dispersive::presets::two_mode(
                grid,
                get(&args, "a1")?,
                get(&args, "k1")? as u32,
                get(&args, "a2")?,
                get(&args, "k2")? as u32,
            ))
        }
        "cosines" => {
            let coeffs: Result<Vec<f64>, CliError> = body
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| bad_expr(expr, &format!("bad number `{}`", s.trim())))
                })
                .collect();
            let coeffs = coeffs?;
            if coeffs.is_empty() {
                return Err(bad_expr(expr, "needs at least one coefficient"));
            }
            if coeffs.len() >= grid.len() / 2 {
                return Err(bad_expr(expr, "too many coefficients for this grid"));
            }
            Ok(dispersive::presets::cosine_modes(grid, &coeffs))
        }
        other => Err(bad_expr(
            expr,
            &format!("unknown preset `{other}`, expected gauss, sine, two_mode, or cosines"),
        )),
    }
}

fn bad_expr(expr: &str, why: &str) -> CliError {
    CliError::Validation(format!("field expression `{expr}`: {why}"))
}
