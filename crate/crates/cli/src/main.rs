//! `newsort`: generate keys, sort files, run sweeps, fit and plot results, and
//! rerun the published experiments.

mod commands;
mod plot;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use newsort_core::sort::Algorithm;
use newsort_core::KeyMode;

/// Exit status for a run that completed but reached a negative verdict.
const EXIT_NEGATIVE: u8 = 1;
/// Exit status for usage and input errors.
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "newsort", version, about = "Interchange-free Quicksort laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write n seeded variates as a one-column `key` CSV.
    Generate {
        #[arg(long)]
        dist: String,
        /// Parameters as name=value, e.g. `lambda=2` or `mean=5 variance=100`.
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        params: Vec<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0, value_parser = parse_seed)]
        seed: u64,
        #[arg(long, default_value = "int")]
        mode: KeyMode,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sort a key CSV and record the operation counters.
    Sort {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "new_sort")]
        algorithm: Algorithm,
        #[arg(long, default_value = "int")]
        mode: KeyMode,
        /// Sorted keys; defaults to `<in>.sorted.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Counter CSV; defaults to `<in>.stats.csv`.
        #[arg(long)]
        stats_out: Option<PathBuf>,
    },
    /// Run a parameter sweep from a key=value config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Fit a polynomial to one column of a CSV against another.
    #[command(group(ArgGroup::new("how").args(["degree", "auto"])))]
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "param")]
        xcol: String,
        #[arg(long, default_value = "mean_comparisons")]
        ycol: String,
        #[arg(long)]
        degree: Option<usize>,
        /// Choose the degree and report a dependence verdict (the default).
        #[arg(long)]
        auto: bool,
        /// Report file, CSV when the name ends in `.csv`; standard output when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Refit the published tables and rerun their sweeps.
    Reproduce {
        /// Table number 1 to 7, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_table)]
        table: TableSel,
        #[arg(long, default_value_t = 2009, value_parser = parse_seed)]
        seed: u64,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Only refit the printed means; no simulation.
        #[arg(long)]
        fixture_only: bool,
    },
    /// Draw a CSV column and an optional fit as an SVG scatter plot.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "param")]
        xcol: String,
        #[arg(long, default_value = "mean_comparisons")]
        ycol: String,
        /// Fit report written by `fit`.
        #[arg(long)]
        fit: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy)]
enum TableSel {
    All,
    One(usize),
}

fn parse_table(s: &str) -> Result<TableSel, String> {
    if s == "all" {
        return Ok(TableSel::All);
    }
    match s.parse::<usize>() {
        Ok(id @ 1..=7) => Ok(TableSel::One(id)),
        _ => Err(format!("expected 1..7 or `all`, got `{s}`")),
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed `{s}`: {e}"))
}

/// An input or usage problem found after argument parsing.
#[derive(Debug)]
pub struct Failure(pub String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Whether a finished command reached a positive result.
pub enum Finish {
    Ok,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate {
            dist,
            params,
            n,
            seed,
            mode,
            out,
        } => commands::generate(&dist, &params, n, seed, mode, out.as_deref()),
        Command::Sort {
            input,
            algorithm,
            mode,
            out,
            stats_out,
        } => commands::sort(&input, algorithm, mode, out, stats_out),
        Command::Sweep { config, out_dir } => commands::sweep(&config, &out_dir),
        Command::Fit {
            input,
            xcol,
            ycol,
            degree,
            auto: _,
            report,
        } => commands::fit(&input, &xcol, &ycol, degree, report.as_deref()),
        Command::Reproduce {
            table,
            seed,
            out_dir,
            fixture_only,
        } => {
            let ids: Vec<usize> = match table {
                TableSel::All => (1..=7).collect(),
                TableSel::One(id) => vec![id],
            };
            commands::reproduce(&ids, seed, out_dir.as_deref(), fixture_only)
        }
        Command::Plot {
            input,
            xcol,
            ycol,
            fit,
            out,
        } => commands::plot(&input, &xcol, &ycol, fit.as_deref(), &out),
    };
    match result {
        Ok(Finish::Ok) => ExitCode::SUCCESS,
        Ok(Finish::Negative) => ExitCode::from(EXIT_NEGATIVE),
        Err(Failure(message)) => {
            eprintln!("newsort: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
