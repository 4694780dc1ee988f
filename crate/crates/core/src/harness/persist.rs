//! CSV persistence for sweeps plus a machine-provenance block.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::format::format_sig;

use super::{summarize, SweepTable};

pub const TRIAL_HEADER: &str = "param,trial,comparisons,writes,max_depth,elapsed_ns";
pub const SUMMARY_HEADER: &str = "param,mean_comparisons,sd_comparisons,mean_elapsed_s,sd_elapsed_s";

/// One row per trial; `param` to 6 significant digits, counters as integers.
pub fn trial_csv(table: &SweepTable) -> String {
    let mut out = String::from(TRIAL_HEADER);
    out.push('\n');
    for row in &table.rows {
        let param = format_sig(row.grid_value, 6);
        for t in &row.trials {
            let s = &t.stats;
            let _ = writeln!(
                out,
                "{param},{},{},{},{},{}",
                t.trial_index + 1,
                s.comparisons,
                s.writes,
                s.max_depth,
                s.elapsed_ns
            );
        }
    }
    out
}

pub fn summary_csv(table: &SweepTable) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for s in summarize(table) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_sig(s.param, 6),
            format_sig(s.comparisons.mean, 12),
            format_sig(s.comparisons.sd, 12),
            format_sig(s.elapsed_s.mean, 6),
            format_sig(s.elapsed_s.sd, 6),
        );
    }
    out
}

/// Where and when a run happened.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub os: String,
    pub arch: String,
    pub cpu: String,
    pub logical_cpus: usize,
    pub timestamp: String,
    pub version: String,
}

impl Provenance {
    pub fn capture() -> Self {
        Provenance {
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            cpu: cpu_model().unwrap_or_else(|| "unknown".to_string()),
            logical_cpus: std::thread::available_parallelism().map_or(1, |n| n.get()),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "os: {}\narch: {}\ncpu: {}\nlogical_cpus: {}\ntimestamp: {}\nnewsort_version: {}\n",
            self.os, self.arch, self.cpu, self.logical_cpus, self.timestamp, self.version
        )
    }
}

fn cpu_model() -> Option<String> {
    let info = fs::read_to_string("/proc/cpuinfo").ok()?;
    info.lines()
        .find(|l| l.starts_with("model name"))
        .and_then(|l| l.split_once(':'))
        .map(|(_, v)| v.trim().to_string())
}

/// Writes `trials.csv`, `summary.csv` and `run.txt` (config echo, counter
/// conventions, provenance) into `dir`, creating it if needed.
pub fn write_sweep(table: &SweepTable, dir: &Path, provenance: &Provenance) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let trials = dir.join("trials.csv");
    let summary = dir.join("summary.csv");
    let run = dir.join("run.txt");
    fs::write(&trials, trial_csv(table))?;
    fs::write(&summary, summary_csv(table))?;

    let mut text = String::from("# sweep configuration\n");
    text.push_str(&table.config.to_text());
    let _ = writeln!(text, "\n# counters\n{}", table.config.algorithm.writes_convention());
    text.push_str("comparisons = one per non-pivot element per partition call\n");
    text.push_str("timed region = sort call only (generation excluded)\n");
    text.push_str("\n# provenance\n");
    text.push_str(&provenance.to_text());
    fs::write(&run, text)?;
    Ok(vec![trials, summary, run])
}
