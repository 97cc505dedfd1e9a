use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dispersive_cli::{config::RunConfig, exit_code, io, runner, CliError};

/// Pseudospectral runner for nonlocal dispersive wave equations.
#[derive(Parser)]
#[command(name = "dispersive", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a configured problem (and its experiment, if any).
    Run {
        /// Path to the TOML configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (default: $DISPERSIVE_OUT or ./out).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Suppress the summary line.
        #[arg(long)]
        quiet: bool,
    },
    /// Execute only the configured experiment.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        quiet: bool,
    },
    /// Run several configs as independent jobs, one subdirectory each.
    Sweep {
        /// Config files, one job per file.
        #[arg(long, num_args = 1.., required = true)]
        configs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        quiet: bool,
        /// Worker threads.
        #[arg(long, default_value_t = 4)]
        jobs: usize,
    },
    /// Re-check the config hashes embedded in an output directory.
    Verify {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        quiet: bool,
    },
}

fn output_root(cli_out: Option<PathBuf>) -> PathBuf {
    cli_out
        .or_else(|| std::env::var_os("DISPERSIVE_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn load(config: &PathBuf, seed: Option<u64>) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(config)?;
    let mut cfg = RunConfig::parse(&text)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { config, out, seed, quiet } => {
            let dir = output_root(out);
            match load(&config, seed).and_then(|cfg| runner::execute_run(&cfg, &dir)) {
                Ok(job) => {
                    if !quiet {
                        println!("{}", job.summary);
                    }
                    job.code
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Experiment { config, out, seed, quiet } => {
            let dir = output_root(out);
            match load(&config, seed).and_then(|cfg| runner::execute_experiment(&cfg, &dir)) {
                Ok(job) => {
                    if !quiet {
                        println!("{}", job.summary);
                    }
                    job.code
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Sweep { configs, out, seed, quiet, jobs } => {
            runner::execute_sweep(&configs, &output_root(out), seed, jobs, quiet)
        }
        Command::Verify { out, quiet } => match io::verify_dir(&out) {
            Ok(files) => {
                if !quiet {
                    println!("verified {} file(s) in {}", files.len(), out.display());
                }
                exit_code::OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
    };
    ExitCode::from(code as u8)
}
