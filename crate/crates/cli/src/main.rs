//! `fprok`: fuzzy Prokhorov metric tools.

mod files;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fuzzy_prokhorov::io::{parse_t_grid, space_to_json, ResultJson};
use fuzzy_prokhorov::{
    adjoin_terminal, convergence_experiment, default_t_grid, extend_metric, plan_embedding, prokhorov,
    prokhorov_curve, psi_nonexpansion_probe, validate_axioms, EmbeddingStrategy, FuzzySpace, Method,
    TimeScale,
};

const T_GRID_HELP: &str = "Time-scale grid: `log:<min>:<max>:<count>` for log-spaced points, \
or a comma-separated increasing list such as `0.1,1,10`";

#[derive(Parser)]
#[command(name = "fprok", version, about = "Fuzzy Prokhorov metric on finite fuzzy metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Flow,
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Check a space file against the fuzzy metric axioms.
    Validate {
        space: PathBuf,
        /// Sample grid (default: the table grid, else log:0.01:100:32).
        #[arg(long, help = T_GRID_HELP)]
        t_grid: Option<String>,
    },
    /// Print M̂(μ, ν, t) as JSON.
    Metric {
        space: PathBuf,
        mu: PathBuf,
        nu: PathBuf,
        #[arg(long = "t")]
        t: f64,
        #[arg(long, value_enum, default_value = "flow")]
        method: MethodArg,
    },
    /// Sample t ↦ M̂(μ, ν, t) on a uniform grid as CSV.
    Curve {
        space: PathBuf,
        mu: PathBuf,
        nu: PathBuf,
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        steps: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a fuzzy metric from a subset to an ambient label set.
    Extend {
        /// Space file for the subset.
        space: PathBuf,
        /// Ambient labels: JSON array or one label per line.
        #[arg(long)]
        ambient: PathBuf,
        #[arg(long, help = T_GRID_HELP)]
        t_grid: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Adjoin a terminal point at membership 1/2 from every point.
    Adjoin {
        space: PathBuf,
        /// Grid for the output table (default: the table grid, else log:0.01:100:32).
        #[arg(long, help = T_GRID_HELP)]
        t_grid: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Distance of empirical measures to μ for growing sample counts.
    Converge {
        space: PathBuf,
        mu: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        schedule: Vec<usize>,
        #[arg(long = "t")]
        t: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Compare distances before and after flattening random measures on measures.
    PsiProbe {
        space: PathBuf,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long = "t")]
        t: f64,
    },
}

fn grid_for(spec: Option<&str>, space: &FuzzySpace) -> Result<Vec<TimeScale>> {
    match (spec, space.t_grid()) {
        (Some(spec), _) => Ok(parse_t_grid(spec).context("flag `--t-grid`")?),
        (None, Some(grid)) => Ok(grid.iter().map(|&t| TimeScale::new(t)).collect::<Result<_, _>>()?),
        (None, None) => Ok(default_t_grid()),
    }
}

fn time_scale(t: f64) -> Result<TimeScale> {
    TimeScale::new(t).context("flag `--t`")
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Validate { space, t_grid } => {
            let space = files::load_space(&space)?;
            let grid = grid_for(t_grid.as_deref(), &space)?;
            let report = validate_axioms(&space, &grid);
            if report.is_valid() {
                writeln!(stdout, "valid: {} points, {} time scales", space.len(), grid.len())?;
                return Ok(ExitCode::SUCCESS);
            }
            for v in &report.violations {
                writeln!(stdout, "{}", v.describe(&space))?;
            }
            writeln!(stdout, "invalid: {} violations", report.violations.len())?;
            Ok(ExitCode::from(1))
        }
        Command::Metric { space, mu, nu, t, method } => {
            let space = files::load_space(&space)?;
            let mu = files::load_measure(&mu, &space)?;
            let nu = files::load_measure(&nu, &space)?;
            let method = match method {
                MethodArg::Flow => Method::Flow,
                MethodArg::Brute => Method::Brute,
            };
            let result = prokhorov(&mu, &nu, time_scale(t)?, method)?;
            writeln!(stdout, "{}", ResultJson::new(&result, &space).to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve { space, mu, nu, t_min, t_max, steps, out } => {
            let space = files::load_space(&space)?;
            let mu = files::load_measure(&mu, &space)?;
            let nu = files::load_measure(&nu, &space)?;
            let csv = prokhorov_curve(&mu, &nu, t_min, t_max, steps)?.to_csv();
            match out {
                Some(path) => files::write(&path, &csv)?,
                None => stdout.write_all(csv.as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Extend { space, ambient, t_grid, out } => {
            let subset = files::load_space(&space)?;
            let ambient = files::load_labels(&ambient)?;
            let grid = match t_grid {
                Some(spec) => parse_t_grid(&spec).context("flag `--t-grid`")?,
                None => default_t_grid(),
            };
            let plan = plan_embedding(&ambient, subset, EmbeddingStrategy::TwoAnchor)?;
            let extended = extend_metric(&plan, &grid)?;
            files::write(&out, &space_to_json(&extended.space))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Adjoin { space, t_grid, out } => {
            let space = files::load_space(&space)?;
            let grid = grid_for(t_grid.as_deref(), &space)?;
            files::write(&out, &space_to_json(&adjoin_terminal(&space, &grid)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Converge { space, mu, schedule, t, seed } => {
            let space = files::load_space(&space)?;
            let mu = files::load_measure(&mu, &space)?;
            let report = convergence_experiment(&mu, &schedule, time_scale(t)?, seed)?;
            stdout.write_all(report.to_csv().as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PsiProbe { space, trials, seed, t } => {
            let space = files::load_space(&space)?;
            let report = psi_nonexpansion_probe(&space, trials, seed, time_scale(t)?)?;
            stdout.write_all(report.to_table().as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
