//! `maxmin` command-line front end.
//!
//! Exit codes: 0 on success, 1 when the mathematics says no (for example
//! `no-solution`), 2 on usage, parse or file errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::apps::{solve_geolocation, solve_quadratic_energy, GeoDataset};
use crate::error::{MaxminError, Result};
use crate::io::{
    format_f64, geo_report_to_json, read_geo_dataset_file, read_matrix_csv, scatter_csv, solution_to_json,
    suppvec_to_json,
};
use crate::linalg::null_space;
use crate::solver::{solve, MaxminSolution};
use crate::suppvec::supporting_vectors;
use crate::tolerance::ToleranceConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "maxmin", version, about = "Solve max ||Ax|| subject to ||Bx|| <= 1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Default)]
struct Common {
    /// Relative rank tolerance (fraction of the largest singular value).
    #[arg(long)]
    tol: Option<f64>,
    /// Write the full result as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report whether ker(B) ⊆ ker(A), i.e. whether the problem is solvable.
    Check {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Solve max ||Ax|| subject to ||Bx|| <= 1.
    Solve {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Supporting vectors of one or more matrices (maximizers of Σ||Mᵢx||² on the unit sphere).
    Suppvec {
        #[arg(required = true)]
        matrices: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Maximize ||E1 ψ|| subject to ||E2 ψ||² + ψᵀLψ <= 1.
    Energy {
        e1: PathBuf,
        e2: PathBuf,
        l: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Score sites from a site,Twin,Rwin,Ewin,Tsum,Rsum,Esum CSV.
    Geoloc {
        #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
        data: Option<PathBuf>,
        /// Use the packaged sixteen-site dataset.
        #[arg(long)]
        fixture: bool,
        /// Write site,ax,bx,score rows to this path.
        #[arg(long)]
        scatter: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

/// Options shared by the subcommands once parsed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CliConfig {
    pub tol_override: Option<f64>,
    pub json_path: Option<PathBuf>,
    pub scatter_path: Option<PathBuf>,
    pub fixture_flag: bool,
}

impl CliConfig {
    pub fn tolerances(&self) -> Result<ToleranceConfig> {
        let mut tol = ToleranceConfig::default();
        if let Some(t) = self.tol_override {
            tol = tol.with_rank_rel_tol(t);
        }
        tol.validate()?;
        Ok(tol)
    }
}

impl From<&Common> for CliConfig {
    fn from(c: &Common) -> Self {
        Self {
            tol_override: c.tol,
            json_path: c.json.clone(),
            ..Self::default()
        }
    }
}

/// Runs the CLI with `argv` (program name first), streaming to `out` and `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "ERROR: {}: {}", e.kind(), e);
            if e.is_input_error() {
                EXIT_USAGE
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Check { a, b, tol } => {
            let cfg = CliConfig {
                tol_override: tol,
                ..CliConfig::default()
            };
            let tol = cfg.tolerances()?;
            let a = read_matrix_csv(&a)?;
            let b = read_matrix_csv(&b)?;
            let solvable = crate::solver::existence_check(&a, &b, &tol)?;
            writeln!(out, "solvable: {solvable}")?;
            writeln!(out, "ker_dim_A: {}", null_space(&a, &tol).ncols())?;
            writeln!(out, "ker_dim_B: {}", null_space(&b, &tol).ncols())?;
        }
        Command::Solve { a, b, common } => {
            let cfg = CliConfig::from(&common);
            let tol = cfg.tolerances()?;
            let a = read_matrix_csv(&a)?;
            let b = read_matrix_csv(&b)?;
            let sol = solve(&a, &b, &tol)?;
            print_solution(out, &sol)?;
            write_json(&cfg, || solution_to_json(&sol, &tol))?;
        }
        Command::Suppvec { matrices, common } => {
            let cfg = CliConfig::from(&common);
            let tol = cfg.tolerances()?;
            let ms = matrices.iter().map(read_matrix_csv).collect::<Result<Vec<_>>>()?;
            let res = supporting_vectors(&ms, &tol)?;
            writeln!(out, "lambda_max: {}", format_f64(res.lambda_max))?;
            writeln!(out, "special_case: {}", res.used_special_case)?;
            for (i, col) in res.basis.column_iter().enumerate() {
                writeln!(out, "v[{i}]: {}", join(col.iter()))?;
            }
            write_json(&cfg, || suppvec_to_json(&res, &tol))?;
        }
        Command::Energy { e1, e2, l, common } => {
            let cfg = CliConfig::from(&common);
            let tol = cfg.tolerances()?;
            let e1 = read_matrix_csv(&e1)?;
            let e2 = read_matrix_csv(&e2)?;
            let l = read_matrix_csv(&l)?;
            let sol = solve_quadratic_energy(&e1, &e2, &l, &tol)?;
            print_solution(out, &sol)?;
            write_json(&cfg, || solution_to_json(&sol, &tol))?;
        }
        Command::Geoloc {
            data,
            fixture,
            scatter,
            common,
        } => {
            let cfg = CliConfig {
                scatter_path: scatter,
                fixture_flag: fixture,
                ..CliConfig::from(&common)
            };
            let tol = cfg.tolerances()?;
            let dataset = match (&data, cfg.fixture_flag) {
                (_, true) => GeoDataset::table1(),
                (Some(path), false) => read_geo_dataset_file(path)?,
                (None, false) => unreachable!("clap requires data or --fixture"),
            };
            let report = solve_geolocation(&dataset, &tol)?;
            writeln!(out, "weights: {}", join(report.weights.iter()))?;
            writeln!(out, "optimal_value: {}", format_f64(report.optimal_value))?;
            writeln!(out, "rank,site,ax,bx,score")?;
            for (rank, name) in report.ranking.iter().enumerate() {
                let s = report
                    .sites
                    .iter()
                    .find(|s| &s.name == name)
                    .expect("ranked site exists");
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    rank + 1,
                    s.name,
                    format_f64(s.ax),
                    format_f64(s.bx),
                    format_f64(s.score)
                )?;
            }
            if let Some(path) = &cfg.scatter_path {
                write_file(path, &scatter_csv(&report)?)?;
            }
            write_json(&cfg, || geo_report_to_json(&report, &tol))?;
        }
    }
    Ok(())
}

fn print_solution(out: &mut dyn Write, sol: &MaxminSolution) -> Result<()> {
    writeln!(out, "optimal_value: {}", format_f64(sol.optimal_value))?;
    writeln!(out, "lambda_max: {}", format_f64(sol.lambda_max))?;
    writeln!(out, "case: {}", sol.case_used.as_str())?;
    writeln!(out, "selected_indices: {:?}", sol.selected_indices)?;
    for (i, x) in sol.solutions.iter().enumerate() {
        writeln!(out, "x[{i}]: {}", join(x.iter()))?;
    }
    Ok(())
}

fn join<'a>(values: impl Iterator<Item = &'a f64>) -> String {
    values.map(|&v| format_f64(v)).collect::<Vec<_>>().join(",")
}

fn write_json(cfg: &CliConfig, render: impl FnOnce() -> Result<String>) -> Result<()> {
    if let Some(path) = &cfg.json_path {
        write_file(path, &render()?)?;
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| MaxminError::Io(format!("{}: {e}", path.display())))
}
