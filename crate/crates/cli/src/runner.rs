//! Run orchestration: evolve a configured problem and/or execute the named
//! experiment, write artifacts, and map outcomes to the exit-code table.

use std::fs;
use std::path::{Path, PathBuf};

use dispersive::lab::{
    band_limited_family, check_composition_bound, check_localizing, check_norm_equivalence,
    convergence_study, run_continuous_dependence, run_wave_breaking, ModeSet, ScalarFunction,
    EQUIV_SHIFT_MAX, EQUIV_SPREAD_MAX,
};
use dispersive::{
    evolve, BesovIndex, CutoffFunction, ExperimentReport, Outcome, Termination, Trajectory,
};

use crate::config::{parse_field_expression, ExperimentSection, RunConfig};
use crate::{exit_code, io, CliError};

/// Outcome of one CLI job.
pub struct JobResult {
    pub code: i32,
    pub summary: String,
}

fn write_resolved(cfg: &RunConfig, dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("config.resolved.toml"), cfg.canonical())?;
    Ok(())
}

fn termination_code(t: Termination) -> i32 {
    match t {
        Termination::Completed => exit_code::OK,
        Termination::BlowupDetected => exit_code::BLOWUP,
        Termination::ResolutionLost => exit_code::RESOLUTION_LOST,
    }
}

fn write_trajectory(
    cfg: &RunConfig,
    traj: &Trajectory,
    dir: &Path,
) -> Result<(), CliError> {
    let hash_hex = cfg.hash_hex();
    let hash = cfg.hash();
    if cfg.output.formats.iter().any(|f| f == "diagnostics") {
        io::write_diagnostics(&dir.join("diagnostics.tsv"), traj, &hash_hex)?;
    }
    if cfg.output.formats.iter().any(|f| f == "snapshots") {
        let snap_dir = dir.join("snapshots");
        fs::create_dir_all(&snap_dir)?;
        for (i, (field, &time)) in traj.snapshots.iter().zip(&traj.times).enumerate() {
            io::write_snapshot(&snap_dir.join(format!("snap_{i:06}.bin")), field, time, &hash)?;
        }
    }
    Ok(())
}

/// `run`: evolve the problem, write diagnostics and snapshots, then execute
/// the configured experiment if one is present.
pub fn execute_run(cfg: &RunConfig, dir: &Path) -> Result<JobResult, CliError> {
    let problem = cfg.build_problem()?;
    let solver = cfg.build_solver()?;
    write_resolved(cfg, dir)?;
    let traj = evolve(&problem, &solver)?;
    write_trajectory(cfg, &traj, dir)?;

    let d = &traj.diagnostics;
    let last = d.len() - 1;
    let mut summary = format!(
        "run {:?} t={:.6} Hs={:.6e} sup_ux={:.6e} mass={:.3e} l2={:.6e}",
        traj.termination, traj.final_time(), d.hs_norm[last], d.sup_ux[last], d.mass[last], d.l2[last]
    );
    let mut code = termination_code(traj.termination);

    if let Some(exp) = &cfg.experiment {
        let report = dispatch_experiment(cfg, exp)?;
        if cfg.output.formats.iter().any(|f| f == "report") {
            io::write_report(&dir.join("report.json"), &report)?;
        }
        summary.push_str(&format!(" experiment={} outcome={:?}", report.name, report.outcome));
        if code == exit_code::OK && report.outcome != Outcome::Pass {
            code = exit_code::EXPERIMENT_FAIL;
        }
    }
    Ok(JobResult { code, summary })
}

/// `experiment`: execute only the configured experiment and write its report.
pub fn execute_experiment(cfg: &RunConfig, dir: &Path) -> Result<JobResult, CliError> {
    let exp = cfg.experiment.as_ref().ok_or_else(|| {
        CliError::Validation("config has no [experiment] section".into())
    })?;
    write_resolved(cfg, dir)?;
    let report = dispatch_experiment(cfg, exp)?;
    io::write_report(&dir.join("report.json"), &report)?;
    let mut summary = format!("experiment {} outcome={:?}", report.name, report.outcome);
    for (k, v) in &report.metrics {
        summary.push_str(&format!(" {k}={v:.6e}"));
    }
    let code = if report.outcome == Outcome::Pass {
        exit_code::OK
    } else {
        exit_code::EXPERIMENT_FAIL
    };
    Ok(JobResult { code, summary })
}

fn besov_index_from(exp: &ExperimentSection) -> Result<BesovIndex, CliError> {
    let s = exp.s.unwrap_or(2.0);
    let p = exp.p.unwrap_or(2.0);
    let q = exp.q.as_ref().map(|q| q.as_f64()).transpose()?.unwrap_or(2.0);
    BesovIndex::new(s, p, q).map_err(|e| CliError::Validation(format!("experiment: {e}")))
}

fn family_from(cfg: &RunConfig, exp: &ExperimentSection, default_count: usize) -> Vec<ModeSet> {
    let count = exp.family_count.unwrap_or(default_count);
    let k_max = exp.k_max.unwrap_or((cfg.problem.n / 8).max(4));
    let amplitude = exp.amplitude.unwrap_or(1.0);
    band_limited_family(cfg.seed, count, k_max, amplitude)
}

fn scalar_from(exp: &ExperimentSection) -> Result<ScalarFunction, CliError> {
    Ok(match exp.function.as_deref().unwrap_or("square") {
        "identity" => ScalarFunction::identity(),
        "square" => ScalarFunction::square(),
        "cube" => ScalarFunction::cube(),
        "abs_x_x" => ScalarFunction::abs_x_x(),
        other => {
            return Err(CliError::Validation(format!(
                "experiment.function: unknown function `{other}`"
            )))
        }
    })
}

fn dispatch_experiment(
    cfg: &RunConfig,
    exp: &ExperimentSection,
) -> Result<ExperimentReport, CliError> {
    let hash = cfg.hash_hex();
    let report = match exp.kind.as_str() {
        "norm_equivalence" => {
            let family = family_from(cfg, exp, 20);
            let s_list = exp.s_list.clone().unwrap_or_else(|| vec![1.75, 2.0, 2.5]);
            let eq = check_norm_equivalence(&family, &s_list, cfg.problem.n)?;
            let pass = eq.spread() <= EQUIV_SPREAD_MAX && eq.is_stable(EQUIV_SHIFT_MAX);
            ExperimentReport::new("norm-equivalence")
                .with_parameter("s_list", format!("{s_list:?}"))
                .with_parameter("trend", format!("{:?}", eq.report.refinement_trend))
                .with_metric("c1", eq.interval.0)
                .with_metric("c2", eq.interval.1)
                .with_metric("c1_refined", eq.interval_refined.0)
                .with_metric("c2_refined", eq.interval_refined.1)
                .with_metric("spread", eq.spread())
                .with_outcome(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        "localizing" => {
            let idx = besov_index_from(exp)?;
            let rho = CutoffFunction::dilate(exp.rho_dilation.unwrap_or(std::f64::consts::PI))
                .map_err(|e| CliError::Validation(format!("experiment.rho_dilation: {e}")))?;
            let family = family_from(cfg, exp, 8);
            let rep = check_localizing(&rho, &family, &idx, cfg.problem.n)?;
            let pass = rep.is_bounded_and_stable();
            ExperimentReport::new("localizing")
                .with_parameter("index", format!("({},{},{})", idx.s(), idx.p(), idx.q()))
                .with_parameter("trend", format!("{:?}", rep.refinement_trend))
                .with_metric("max_ratio", rep.max_ratio)
                .with_metric("members", rep.ratios.len() as f64)
                .with_outcome(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        "composition" => {
            let idx = besov_index_from(exp)?;
            let f = scalar_from(exp)?;
            let base = family_from(cfg, exp, 6);
            // include halved copies: the bound's right side is not
            // scale-invariant, so a is recomputed per member
            let family: Vec<ModeSet> =
                base.iter().flat_map(|m| [m.clone(), m.scale(0.5)]).collect();
            let rep = check_composition_bound(&f, &family, &idx, cfg.problem.n)?;
            let pass = rep.is_bounded_and_stable();
            ExperimentReport::new("composition")
                .with_parameter("function", f.name())
                .with_parameter("index", format!("({},{},{})", idx.s(), idx.p(), idx.q()))
                .with_parameter("trend", format!("{:?}", rep.refinement_trend))
                .with_metric("max_ratio", rep.max_ratio)
                .with_metric("members", rep.ratios.len() as f64)
                .with_outcome(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        "continuous_dependence" => {
            let problem = cfg.build_problem()?;
            let solver = cfg.build_solver()?;
            let eps = exp.eps.clone().unwrap_or_else(|| vec![1e-2, 1e-3, 1e-4]);
            let dir_expr = exp.direction.as_deref().unwrap_or("sine(a=1,k=1)");
            let w = parse_field_expression(dir_expr, problem.grid())?;
            run_continuous_dependence(&problem, &solver, &eps, &w)?
        }
        "wave_breaking" => {
            let problem = cfg.build_problem()?;
            let solver = cfg.build_solver()?;
            run_wave_breaking(&problem, &solver)?
        }
        "convergence" => {
            let problem = cfg.build_problem()?;
            let solver = cfg.build_solver()?;
            let dt_list = exp.dt_list.clone().unwrap_or_else(|| vec![4e-3, 2e-3, 1e-3, 5e-4]);
            let order = exp.declared_order.unwrap_or(4.0);
            convergence_study(&problem, &solver, &dt_list, order)?
        }
        other => {
            return Err(CliError::Validation(format!(
                "experiment.kind: unknown kind `{other}`"
            )))
        }
    };
    Ok(report.with_provenance(&hash))
}

/// Fan independent jobs out over worker threads, one output subdirectory per
/// config. Returns zero when every job returned zero.
pub fn execute_sweep(
    configs: &[PathBuf],
    out_root: &Path,
    seed: Option<u64>,
    jobs: usize,
    quiet: bool,
) -> i32 {
    let jobs = jobs.max(1);
    let mut results: Vec<(String, i32, String)> = Vec::new();
    for chunk in configs.chunks(jobs) {
        let handles: Vec<_> = chunk
            .iter()
            .map(|path| {
                let path = path.clone();
                let out_root = out_root.to_path_buf();
                std::thread::spawn(move || {
                    let stem = path
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| "job".into());
                    let dir = out_root.join(&stem);
                    let result = run_config_file(&path, &dir, seed);
                    match result {
                        Ok(job) => (stem, job.code, job.summary),
                        Err(e) => (stem, e.exit_code(), e.to_string()),
                    }
                })
            })
            .collect();
        for h in handles {
            results.push(h.join().expect("sweep worker panicked"));
        }
    }
    let mut worst = exit_code::OK;
    for (stem, code, summary) in &results {
        if !quiet {
            println!("[{stem}] exit={code} {summary}");
        }
        if *code != exit_code::OK {
            worst = exit_code::FAILURE;
        }
    }
    worst
}

/// Load, validate, and execute one config file with `run` semantics.
pub fn run_config_file(
    path: &Path,
    dir: &Path,
    seed: Option<u64>,
) -> Result<JobResult, CliError> {
    let text = fs::read_to_string(path)?;
    let mut cfg = RunConfig::parse(&text)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    execute_run(&cfg, dir)
}
