//! Parameter sweeps at fixed array size with repeated seeded trials.
//!
//! A sweep varies one distribution parameter over a grid, runs `trials`
//! generate-and-sort executions per grid value, and summarises each row.
//! Every trial draws from its own seed derived from the master seed and its
//! `(grid, trial)` position, so counter columns are a pure function of the
//! configuration no matter how the trials are scheduled.

mod config;
mod fixture;
mod persist;

pub use config::{parse_grid, ConfigError, Seeding, SweepConfig, DEFAULT_TRIALS};
pub use fixture::{
    fixture_consistency_report, paper_fixture, ConsistencyRow, FixtureError, PaperFixture, CONSISTENCY_FLAG,
};
pub use persist::{summary_csv, trial_csv, write_sweep, Provenance, SUMMARY_HEADER, TRIAL_HEADER};

use rayon::prelude::*;

use crate::key::{KeyMode, KeyVec};
use crate::rng::{Distribution, RngState, Sampler};
use crate::sort::{verify_keys, Algorithm, SortStats};
use crate::stats;

/// Seed for trial `trial_index` at grid position `grid_index`.
///
/// Advances a splitmix64 stream seeded with `master_seed` by
/// `grid_index * 65537 + trial_index + 1` steps and returns the last output.
pub fn derive_trial_seed(master_seed: u64, grid_index: u64, trial_index: u64) -> u64 {
    let steps = grid_index
        .wrapping_mul(65_537)
        .wrapping_add(trial_index)
        .wrapping_add(1);
    let mut rng = RngState::new(master_seed);
    let mut out = 0;
    for _ in 0..steps {
        out = rng.next_u64();
    }
    out
}

/// `n` keys from a fresh generator seeded with `seed`.
pub fn generate_keys(dist: &Distribution, n: usize, seed: u64, mode: KeyMode) -> KeyVec {
    let mut sampler = Sampler::new(seed);
    let mut keys = KeyVec::with_capacity(mode, n);
    for _ in 0..n {
        keys.push(sampler.draw_key(dist, mode));
    }
    keys
}

/// Generates, sorts and verifies one array. Only the sort is timed.
///
/// # Panics
///
/// If the sorted output is not a sorted permutation of the input; that is an
/// implementation bug, never a data condition.
pub fn run_trial(dist: &Distribution, n: usize, seed: u64, mode: KeyMode, algorithm: Algorithm) -> SortStats {
    let keys = generate_keys(dist, n, seed, mode);
    let (sorted, stats) = algorithm.sort_keys(&keys);
    assert!(
        verify_keys(&keys, &sorted),
        "{algorithm} produced an unsorted or non-permuted output for {dist}, n={n}, seed={seed:#x}"
    );
    stats
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub grid_value: f64,
    pub trial_index: usize,
    pub stats: SortStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub grid_value: f64,
    pub trials: Vec<TrialRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn grid(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.grid_value).collect()
    }

    /// Mean comparisons per grid value, in grid order.
    pub fn mean_comparisons(&self) -> Vec<f64> {
        summarize(self).iter().map(|s| s.comparisons.mean).collect()
    }
}

/// Runs every grid value x trial. `threads = None` uses rayon's global pool.
pub fn run_sweep(config: &SweepConfig, threads: Option<usize>) -> Result<SweepTable, ConfigError> {
    config.validate()?;
    let dists = config
        .grid
        .iter()
        .map(|&v| config.distribution_at(v))
        .collect::<Result<Vec<_>, _>>()?;

    let tasks: Vec<(usize, usize)> = (0..config.grid.len())
        .flat_map(|g| (0..config.trials).map(move |t| (g, t)))
        .collect();
    let run = |&(g, t): &(usize, usize)| {
        let seed = derive_trial_seed(config.master_seed, config.seeding.grid_index(g), t as u64);
        TrialRecord {
            grid_value: config.grid[g],
            trial_index: t,
            stats: run_trial(&dists[g], config.n, seed, config.key_mode, config.algorithm),
        }
    };
    let records: Vec<TrialRecord> = match threads {
        Some(1) => tasks.iter().map(run).collect(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(|| tasks.par_iter().map(run).collect()),
        None => tasks.par_iter().map(run).collect(),
    };

    let rows = records
        .chunks(config.trials)
        .map(|chunk| SweepRow {
            grid_value: chunk[0].grid_value,
            trials: chunk.to_vec(),
        })
        .collect();
    Ok(SweepTable {
        config: config.clone(),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
}

impl MeanSd {
    pub fn of(xs: &[f64]) -> Self {
        MeanSd {
            mean: stats::mean(xs),
            sd: stats::sample_sd(xs),
        }
    }
}

/// Per-grid-value summary of every counter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub param: f64,
    pub comparisons: MeanSd,
    pub writes: MeanSd,
    pub max_depth: MeanSd,
    pub elapsed_s: MeanSd,
}

pub fn summarize(table: &SweepTable) -> Vec<SummaryRow> {
    table
        .rows
        .iter()
        .map(|row| {
            let column = |f: fn(&SortStats) -> f64| -> MeanSd {
                MeanSd::of(&row.trials.iter().map(|t| f(&t.stats)).collect::<Vec<_>>())
            };
            SummaryRow {
                param: row.grid_value,
                comparisons: column(|s| s.comparisons as f64),
                writes: column(|s| s.writes as f64),
                max_depth: column(|s| s.max_depth as f64),
                elapsed_s: column(|s| s.elapsed_ns as f64 * 1e-9),
            }
        })
        .collect()
}
