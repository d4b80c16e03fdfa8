use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use endpoint_tails::fredholm::DEFAULT_NODES;
use endpoint_tails::Error;

mod commands;
mod pool;
mod table;
mod xcheck;

use table::Table;

#[derive(Parser, Debug)]
#[command(
    name = "endpoint-tails",
    version,
    about = "Endpoint density of the Airy₂ process minus a parabola: tables and cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandKind,

    /// Evaluation grid MIN MAX STEP (per-command default when omitted).
    #[arg(long, global = true, num_args = 3, value_names = ["MIN", "MAX", "STEP"], allow_negative_numbers = true)]
    grid: Option<Vec<f64>>,

    /// Nyström nodes for the tw1 and qhm Fredholm routes, in [20, 512].
    #[arg(long, global = true, default_value_t = DEFAULT_NODES)]
    nodes: usize,

    /// Quadrature tolerance for the tail probability, at least 1e-13.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    /// Write the table here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    /// GOE Tracy–Widom F₁(s) by determinant and Painlevé routes.
    /// Columns: s, f1_fredholm, f1_painleve, abs_diff. Default grid -10 4 1.
    Tw1,
    /// Hastings–McLeod q(s) from the resolvent and from the squared kernel.
    /// Columns: s, q_resolvent, q_airy_kernel, abs_diff, airy_ai. Default grid -10 6 0.5.
    Qhm,
    /// Endpoint density P̂(t), numeric for every t and asymptotic for |t| ≥ 1.
    /// Columns: t, value, method, error_estimate. Default grid -2.5 2.5 0.25.
    Density,
    /// Joint density P̂(m, t) on the square grid by the Schehr and MFQR routes.
    /// Columns: m, t, phat_schehr, phat_mfqr, abs_diff. Default grid -1 1 0.5.
    Joint,
    /// Tail probability P(|T| > t), numeric against asymptotic.
    /// Columns: t, tail_numeric, tail_asymptotic, ratio. Default grid 1 2.5 0.25.
    Tail,
    /// Route-equivalence checks; exits 2 when any check fails.
    /// Columns: check, residual, tolerance, status. The grid is ignored.
    Xcheck,
    /// Dotsenko's W(x) against the integrated marginal density.
    /// Columns: x, w_dotsenko, tail_main, cdf_main, abs_diff_tail, abs_diff_cdf.
    /// Default grid -1.5 1.5 0.5.
    Dotsenko,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

const MAX_POINTS: usize = 100_000;

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.min + k as f64 * self.step).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub grid: Grid,
    pub nodes: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn default_grid(c: CommandKind) -> Grid {
    let (min, max, step) = match c {
        CommandKind::Tw1 => (-10.0, 4.0, 1.0),
        CommandKind::Qhm => (-10.0, 6.0, 0.5),
        CommandKind::Density => (-2.5, 2.5, 0.25),
        CommandKind::Joint | CommandKind::Xcheck => (-1.0, 1.0, 0.5),
        CommandKind::Tail => (1.0, 2.5, 0.25),
        CommandKind::Dotsenko => (-1.5, 1.5, 0.5),
    };
    Grid { min, max, step }
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, String> {
        let grid = match cli.grid.as_deref() {
            Some(&[min, max, step]) => Grid { min, max, step },
            Some(_) => return Err("--grid takes MIN MAX STEP".into()),
            None => default_grid(cli.command),
        };
        let cfg = RunConfig {
            command: cli.command,
            grid,
            nodes: cli.nodes,
            tol: cli.tol,
            out: cli.out,
            format: cli.format,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        let g = self.grid;
        if !(g.min.is_finite() && g.max.is_finite() && g.min < g.max) {
            return Err(format!("grid needs MIN < MAX, got {} {}", g.min, g.max));
        }
        if !(g.step > 0.0 && g.step.is_finite()) {
            return Err(format!("grid STEP must be positive, got {}", g.step));
        }
        if (g.max - g.min) / g.step >= MAX_POINTS as f64 {
            return Err(format!("grid has more than {MAX_POINTS} points"));
        }
        if !(20..=512).contains(&self.nodes) {
            return Err(format!("--nodes must lie in [20, 512], got {}", self.nodes));
        }
        if !(self.tol >= 1e-13 && self.tol.is_finite()) {
            return Err(format!("--tol must be at least 1e-13, got {}", self.tol));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Usage(String),
    Numeric(String),
}

impl Failure {
    /// A library error at a grid point: out-of-range input is an argument
    /// error, anything else numerical.
    pub fn at(point: impl Display, e: Error) -> Self {
        let msg = format!("at {point}: {e}");
        match e {
            Error::InvalidArgument(_) => Failure::Usage(msg),
            _ => Failure::Numeric(msg),
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numeric(_) => 2,
        }
    }
}

fn emit(cfg: &RunConfig, table: &Table) -> Result<(), Failure> {
    let text = match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    let res = match &cfg.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    res.map_err(Failure::Usage)
}

pub fn run(cfg: &RunConfig) -> Result<(), Failure> {
    let threads = pool::threads_from_env().map_err(Failure::Usage)?;
    if cfg.command == CommandKind::Xcheck {
        let (table, failed) = xcheck::run(threads);
        emit(cfg, &table)?;
        let total = table.rows.len();
        eprintln!("xcheck: {} of {total} checks passed", total - failed);
        if failed > 0 {
            return Err(Failure::Numeric(format!(
                "in xcheck: {failed} checks failed"
            )));
        }
        return Ok(());
    }
    let table = commands::tabulate(cfg, threads)?;
    emit(cfg, &table)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            if code != 0 && !e.to_string().contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(code);
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            return ExitCode::from(1);
        }
    };
    match run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Numeric(m) => eprintln!("numerical failure {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
