//! The seven published experiments as runnable sweeps, and the checks that
//! compare fits and counter trends against the published findings.
//!
//! Two kinds of check exist per table:
//!
//! - fixture checks refit the printed mean times and compare R² (or the flat
//!   verdict) with the published result;
//! - live checks rerun the sweep at the published `n`, grid and trial count
//!   and test the direction of mean comparisons against the published trend.
//!
//! Wall times are never compared.

use std::fmt;

use crate::format::format_sig;
use crate::harness::{paper_fixture, run_sweep, ConfigError, FixtureError, Seeding, SweepConfig, SweepTable};
use crate::key::KeyMode;
use crate::regression::{dependence_verdict, polyfit, Verdict};
use crate::rng::Family;
use crate::sort::Algorithm;
use crate::stats::spearman;

/// Highest degree tried by verdict checks; the published fits stop at 4.
pub const VERDICT_MAX_DEGREE: usize = 4;

/// Spearman rho at or below which a live trend counts as decreasing.
pub const DECREASING_RHO: f64 = -0.9;

/// `|rho|` below this is reported as a flat trend direction.
pub const FLAT_TREND_RHO: f64 = 0.5;

/// What the published fit of a table's mean times says.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PublishedFit {
    Polynomial {
        degree: usize,
        r_squared: f64,
        tolerance: f64,
    },
    /// No pattern; time does not depend on the parameter.
    Flat,
}

/// The live counter check applied to a table's replica sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LiveCheck {
    /// Spearman rho <= [`DECREASING_RHO`], and optionally
    /// `mean(first) / mean(last) >= min_ratio`.
    Decreasing { min_ratio: Option<f64> },
    /// `mean(last) / mean(first) >= min_ratio`.
    GrowsBy { min_ratio: f64 },
    /// [`dependence_verdict`] is flat.
    Flat,
    /// Reported only.
    Informational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaperTable {
    pub id: usize,
    pub family: Family,
    pub fixed: &'static [(&'static str, f64)],
    pub vary: &'static str,
    pub grid: &'static [f64],
    pub n: usize,
    pub trials: usize,
    pub published: PublishedFit,
    pub live: LiveCheck,
    /// Direction of the published mean times, in words.
    pub finding: &'static str,
}

const K_GRID: [f64; 10] = [5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0];

static TABLES: [PaperTable; 7] = [
    PaperTable {
        id: 1,
        family: Family::DiscreteUniform,
        fixed: &[],
        vary: "k",
        grid: &K_GRID,
        n: 20_000,
        trials: 10,
        published: PublishedFit::Polynomial {
            degree: 4,
            r_squared: 0.9953,
            tolerance: 0.02,
        },
        live: LiveCheck::Decreasing { min_ratio: Some(4.0) },
        finding: "time falls as K grows (2.647 s at K=5 to 0.289 s at K=50)",
    },
    PaperTable {
        id: 2,
        family: Family::Poisson,
        fixed: &[],
        vary: "lambda",
        grid: &[1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5],
        n: 50_000,
        trials: 10,
        published: PublishedFit::Polynomial {
            degree: 2,
            r_squared: 0.9783,
            tolerance: 0.02,
        },
        live: LiveCheck::Decreasing { min_ratio: None },
        finding: "time falls as lambda grows (3.3346 s to 1.3001 s)",
    },
    PaperTable {
        id: 3,
        family: Family::Geometric,
        fixed: &[],
        vary: "p",
        grid: &[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
        n: 10_000,
        trials: 6,
        published: PublishedFit::Polynomial {
            degree: 4,
            r_squared: 0.9065,
            tolerance: 0.03,
        },
        live: LiveCheck::GrowsBy { min_ratio: 1.5 },
        finding: "time rises with p (0.2814 s at p=0.1 to 0.5208 s at p=0.9)",
    },
    PaperTable {
        id: 4,
        family: Family::ContinuousUniform,
        fixed: &[],
        vary: "theta",
        grid: &K_GRID,
        n: 50_000,
        trials: 6,
        published: PublishedFit::Polynomial {
            degree: 4,
            r_squared: 0.9927,
            tolerance: 0.02,
        },
        live: LiveCheck::Decreasing { min_ratio: Some(4.0) },
        finding: "time falls as theta grows (2.1225 s to 0.313 s)",
    },
    PaperTable {
        id: 5,
        family: Family::Exponential,
        fixed: &[],
        vary: "lambda",
        grid: &[0.6, 0.7, 0.8, 0.9, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
        n: 20_000,
        trials: 6,
        published: PublishedFit::Polynomial {
            degree: 3,
            r_squared: 0.9066,
            tolerance: 0.03,
        },
        live: LiveCheck::Informational,
        finding: "time falls as lambda grows (2.045 s to 0.209 s)",
    },
    PaperTable {
        id: 6,
        family: Family::Normal,
        fixed: &[("variance", 100.0)],
        vary: "mean",
        grid: &K_GRID,
        n: 20_000,
        trials: 6,
        published: PublishedFit::Flat,
        live: LiveCheck::Flat,
        finding: "no pattern in the mean (all near 1 s)",
    },
    PaperTable {
        id: 7,
        family: Family::Normal,
        fixed: &[("mean", 50.0)],
        vary: "variance",
        grid: &[10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0],
        n: 20_000,
        trials: 6,
        published: PublishedFit::Flat,
        live: LiveCheck::Flat,
        finding: "no dependence on the variance (all near 1 s)",
    },
];

pub fn paper_table(id: usize) -> Result<&'static PaperTable, FixtureError> {
    id.checked_sub(1)
        .and_then(|i| TABLES.get(i))
        .ok_or(FixtureError::UnknownTable(id))
}

pub fn paper_tables() -> &'static [PaperTable] {
    &TABLES
}

impl PaperTable {
    /// The replica sweep at the published design.
    pub fn sweep_config(&self, master_seed: u64, key_mode: KeyMode) -> SweepConfig {
        SweepConfig {
            family: self.family,
            fixed: self.fixed.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            vary: self.vary.to_string(),
            grid: self.grid.to_vec(),
            n: self.n,
            trials: self.trials,
            master_seed,
            key_mode,
            algorithm: Algorithm::NewSort,
            seeding: Seeding::PerCell,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFORMATIONAL",
        })
    }
}

/// One line of a reproduction report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub table: usize,
    pub name: &'static str,
    pub detail: String,
    pub status: Status,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Table {} {}: {} {}", self.table, self.name, self.detail, self.status)
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Refits the printed mean times and compares with the published result.
pub fn fixture_check(table: &PaperTable) -> CheckResult {
    let fixture = paper_fixture(table.id).expect("every paper table has a fixture");
    let xs = &fixture.grid;
    let ys = &fixture.printed_means;
    let (detail, status) = match table.published {
        PublishedFit::Polynomial {
            degree,
            r_squared,
            tolerance,
        } => match polyfit(xs, ys, degree) {
            Ok(fit) => (
                format!(
                    "degree {degree} R²={} (paper {r_squared}, tolerance {tolerance})",
                    format_sig(fit.r_squared, 4)
                ),
                pass_if((fit.r_squared - r_squared).abs() <= tolerance),
            ),
            Err(e) => (format!("fit failed: {e}"), Status::Fail),
        },
        PublishedFit::Flat => match dependence_verdict(xs, ys, VERDICT_MAX_DEGREE) {
            Ok(v) => (format!("verdict {v} (paper: no dependence)"), pass_if(v.is_flat())),
            Err(e) => (format!("verdict failed: {e}"), Status::Fail),
        },
    };
    CheckResult {
        table: table.id,
        name: "fixture fit",
        detail,
        status,
    }
}

/// Trend direction of `ys` over `xs` by Spearman rank correlation.
pub fn trend_direction(rho: Option<f64>) -> &'static str {
    match rho {
        None => "flat",
        Some(r) if r >= FLAT_TREND_RHO => "increasing",
        Some(r) if r <= -FLAT_TREND_RHO => "decreasing",
        Some(_) => "flat",
    }
}

/// Applies the table's live check to a replica sweep of mean comparisons.
pub fn live_check(table: &PaperTable, sweep: &SweepTable) -> CheckResult {
    let xs = sweep.grid();
    let ys = sweep.mean_comparisons();
    let rho = spearman(&xs, &ys);
    let first = ys[0];
    let last = ys[ys.len() - 1];
    let rho_text = rho.map_or("undefined".to_string(), |r| format_sig(r, 4));
    let trend = format!("rho={rho_text} ({})", trend_direction(rho));

    let (detail, status) = match table.live {
        LiveCheck::Decreasing { min_ratio } => {
            let decreasing = rho.is_some_and(|r| r <= DECREASING_RHO);
            match min_ratio {
                Some(min) => {
                    let ratio = first / last;
                    (
                        format!(
                            "{trend}, first/last={} (need rho<={DECREASING_RHO}, ratio>={min})",
                            format_sig(ratio, 4)
                        ),
                        pass_if(decreasing && ratio >= min),
                    )
                }
                None => (format!("{trend} (need rho<={DECREASING_RHO})"), pass_if(decreasing)),
            }
        }
        LiveCheck::GrowsBy { min_ratio } => {
            let ratio = last / first;
            (
                format!("{trend}, last/first={} (need >={min_ratio})", format_sig(ratio, 4)),
                pass_if(ratio >= min_ratio),
            )
        }
        LiveCheck::Flat => match dependence_verdict(&xs, &ys, VERDICT_MAX_DEGREE) {
            Ok(v) => (format!("{trend}, verdict {v} (need flat)"), pass_if(v.is_flat())),
            Err(e) => (format!("verdict failed: {e}"), Status::Fail),
        },
        LiveCheck::Informational => (trend, Status::Info),
    };
    CheckResult {
        table: table.id,
        name: "live comparisons trend",
        detail: format!("{detail}; paper: {}", table.finding),
        status,
    }
}

/// Real-mode control for scale families: with one shared uniform stream,
/// counters must be identical at every grid value.
pub fn scale_invariance_check(
    table: &PaperTable,
    master_seed: u64,
    threads: Option<usize>,
) -> Result<CheckResult, ConfigError> {
    let mut config = table.sweep_config(master_seed, KeyMode::Real);
    config.seeding = Seeding::Shared;
    let sweep = run_sweep(&config, threads)?;
    let reference: Vec<_> = sweep.rows[0].trials.iter().map(|t| t.stats.counters()).collect();
    let identical = sweep.rows.iter().all(|row| {
        row.trials
            .iter()
            .map(|t| t.stats.counters())
            .eq(reference.iter().copied())
    });
    Ok(CheckResult {
        table: table.id,
        name: "real-mode control",
        detail: format!(
            "shared-stream counters {} across {} grid values",
            if identical { "identical" } else { "differ" },
            sweep.rows.len()
        ),
        status: pass_if(identical),
    })
}

/// Verdict helper for callers that only need the flat/dependent answer.
pub fn live_verdict(sweep: &SweepTable) -> Result<Verdict, crate::regression::FitError> {
    dependence_verdict(&sweep.grid(), &sweep.mean_comparisons(), VERDICT_MAX_DEGREE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_fixtures() {
        for t in paper_tables() {
            let f = paper_fixture(t.id).unwrap();
            assert_eq!(f.grid, t.grid, "table {}", t.id);
            assert_eq!(f.trials_per_row(), t.trials, "table {}", t.id);
            let cfg = t.sweep_config(1, KeyMode::Int);
            cfg.validate().unwrap();
            for &v in t.grid {
                cfg.distribution_at(v).unwrap();
            }
        }
        assert!(paper_table(0).is_err());
        assert!(paper_table(8).is_err());
    }

    #[test]
    fn fixture_checks_pass() {
        for t in paper_tables() {
            let r = fixture_check(t);
            assert_eq!(r.status, Status::Pass, "{r}");
        }
    }

    #[test]
    fn line_format() {
        let r = fixture_check(paper_table(2).unwrap());
        assert_eq!(
            r.to_string(),
            "Table 2 fixture fit: degree 2 R²=0.9783 (paper 0.9783, tolerance 0.02) PASS"
        );
    }

    #[test]
    fn trend_words() {
        assert_eq!(trend_direction(Some(-0.95)), "decreasing");
        assert_eq!(trend_direction(Some(0.7)), "increasing");
        assert_eq!(trend_direction(Some(0.1)), "flat");
        assert_eq!(trend_direction(None), "flat");
    }
}
