use std::fmt::Write as _;

use thiserror::Error;

use crate::format::format_sig;
use crate::key::KeyMode;
use crate::rng::{Distribution, Family, ParamError};
use crate::sort::Algorithm;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("invalid sweep: {0}")]
    Invalid(String),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// One sweep: a distribution family with fixed parameters, one varying
/// parameter over `grid`, and the trial design.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    pub fixed: Vec<(String, f64)>,
    pub vary: String,
    pub grid: Vec<f64>,
    pub n: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub key_mode: KeyMode,
    pub algorithm: Algorithm,
    pub seeding: Seeding,
}

/// How trial seeds relate across grid values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Seeding {
    /// Every `(grid, trial)` cell has its own seed.
    #[default]
    PerCell,
    /// Trial `t` uses the same seed at every grid value, so scale-family
    /// sweeps see one underlying uniform stream.
    Shared,
}

impl Seeding {
    pub fn as_str(self) -> &'static str {
        match self {
            Seeding::PerCell => "per_cell",
            Seeding::Shared => "shared",
        }
    }

    /// Grid index fed to the seed derivation.
    pub fn grid_index(self, grid_index: usize) -> u64 {
        match self {
            Seeding::PerCell => grid_index as u64,
            Seeding::Shared => 0,
        }
    }
}

impl std::str::FromStr for Seeding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per_cell" => Ok(Seeding::PerCell),
            "shared" => Ok(Seeding::Shared),
            other => Err(format!("unknown seeding `{other}` (expected `per_cell` or `shared`)")),
        }
    }
}

pub const DEFAULT_TRIALS: usize = 10;

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.grid.is_empty() {
            return Err(ConfigError::Invalid("grid is empty".into()));
        }
        let increasing = self.grid.windows(2).all(|w| w[0] < w[1]);
        let decreasing = self.grid.windows(2).all(|w| w[0] > w[1]);
        if !(increasing || decreasing) {
            return Err(ConfigError::Invalid("grid is not strictly monotone".into()));
        }
        if self.trials == 0 {
            return Err(ConfigError::Invalid("trials must be at least 1".into()));
        }
        if self.fixed.iter().any(|(name, _)| *name == self.vary) {
            return Err(ConfigError::Invalid(format!(
                "`{}` is both fixed and varied",
                self.vary
            )));
        }
        Ok(())
    }

    /// The distribution at one grid value.
    pub fn distribution_at(&self, value: f64) -> Result<Distribution, ParamError> {
        let mut params: Vec<(&str, f64)> = self.fixed.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        params.push((self.vary.as_str(), value));
        Distribution::from_params(self.family, &params)
    }

    /// Parses flat `key=value` lines. `#` starts a comment.
    ///
    /// Keys: `dist`, `fixed.<name>`, `vary`, `grid` (`start:stop:step` or a
    /// comma list), `n`, `trials`, `seed`, `mode`, `algorithm`, `seeding`. Unknown keys
    /// are rejected. `dist`, `vary`, `grid` and `n` are required.
    pub fn parse(text: &str) -> Result<SweepConfig, ConfigError> {
        let mut family = None;
        let mut fixed = Vec::new();
        let mut vary = None;
        let mut grid = None;
        let mut n = None;
        let mut trials = DEFAULT_TRIALS;
        let mut master_seed = 0u64;
        let mut key_mode = KeyMode::default();
        let mut algorithm = Algorithm::default();
        let mut seeding = Seeding::default();

        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ConfigError::Line { line: idx + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "dist" => family = Some(value.parse::<Family>().map_err(|e| err(e.to_string()))?),
                "vary" => vary = Some(value.to_string()),
                "grid" => grid = Some(parse_grid(value).map_err(err)?),
                "n" => n = Some(value.parse::<usize>().map_err(|e| err(format!("n: {e}")))?),
                "trials" => trials = value.parse().map_err(|e| err(format!("trials: {e}")))?,
                "seed" => master_seed = parse_seed(value).ok_or_else(|| err(format!("bad seed `{value}`")))?,
                "mode" => key_mode = value.parse().map_err(|e: crate::KeyError| err(e.to_string()))?,
                "algorithm" => algorithm = value.parse().map_err(err)?,
                "seeding" => seeding = value.parse().map_err(err)?,
                k if k.starts_with("fixed.") => {
                    let v: f64 = value.parse().map_err(|_| err(format!("bad number `{value}`")))?;
                    fixed.push((k["fixed.".len()..].to_string(), v));
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }

        let config = SweepConfig {
            family: family.ok_or(ConfigError::Missing("dist"))?,
            fixed,
            vary: vary.ok_or(ConfigError::Missing("vary"))?,
            grid: grid.ok_or(ConfigError::Missing("grid"))?,
            n: n.ok_or(ConfigError::Missing("n"))?,
            trials,
            master_seed,
            key_mode,
            algorithm,
            seeding,
        };
        config.validate()?;
        // Surface parameter errors before any work starts.
        for &v in &config.grid {
            config.distribution_at(v)?;
        }
        Ok(config)
    }

    /// Renders the config in the format [`SweepConfig::parse`] reads.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dist={}", self.family);
        for (k, v) in &self.fixed {
            let _ = writeln!(out, "fixed.{k}={}", format_sig(*v, 12));
        }
        let grid: Vec<String> = self.grid.iter().map(|v| format_sig(*v, 12)).collect();
        let _ = writeln!(out, "vary={}", self.vary);
        let _ = writeln!(out, "grid={}", grid.join(","));
        let _ = writeln!(out, "n={}", self.n);
        let _ = writeln!(out, "trials={}", self.trials);
        let _ = writeln!(out, "seed={}", self.master_seed);
        let _ = writeln!(out, "mode={}", self.key_mode);
        let _ = writeln!(out, "algorithm={}", self.algorithm);
        let _ = writeln!(out, "seeding={}", self.seeding.as_str());
        out
    }
}

fn parse_seed(value: &str) -> Option<u64> {
    match value.strip_prefix("0x").or_else(|| value.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => value.parse().ok(),
    }
}

/// Rounds away accumulated binary noise such as `0.30000000000000004`.
fn snap(v: f64) -> f64 {
    format_sig(v, 12).parse().unwrap_or(v)
}

/// Parses `start:stop:step` (stop included when it lies on the lattice
/// within 1e-9) or a comma-separated list.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| -> Result<f64, String> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| format!("bad grid number `{}`", s.trim()))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("non-finite grid value `{}`", s.trim()))
        }
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if step == 0.0 || (stop - start) * step < 0.0 {
                return Err(format!("step {step} does not move from {start} toward {stop}"));
            }
            let span = (stop - start) / step;
            let count = (span + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err("grid has more than 10^6 points".into());
            }
            Ok((0..count).map(|i| snap(start + i as f64 * step)).collect())
        }
        [list] => {
            let values = list.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
            Ok(values)
        }
        _ => Err(format!("grid `{text}` is neither start:stop:step nor a comma list")),
    }
}
