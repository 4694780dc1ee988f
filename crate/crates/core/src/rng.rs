//! Seedable splitmix64 generator and the six variate samplers.
//!
//! Every stream is a pure function of its seed. Integer-valued samplers are
//! bit-exact across platforms; real-valued ones depend on `ln`/`cos`/`sin`
//! and are reproducible to within libm rounding.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::key::{Key, KeyMode, RealKey};

pub const SPLITMIX_INCREMENT: u64 = 0x9E37_79B9_7F4A_7C15;

/// One splitmix64 step: returns `(output, next_state)`.
#[inline]
pub fn splitmix_next(state: u64) -> (u64, u64) {
    let next = state.wrapping_add(SPLITMIX_INCREMENT);
    let mut z = next;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (z ^ (z >> 31), next)
}

/// Maps a raw 64-bit draw to `[0, 1)` using its high 53 bits.
#[inline]
pub fn unit_from_bits(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngState {
    state: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let (out, next) = splitmix_next(self.state);
        self.state = next;
        out
    }

    /// Uniform real in `[0, 1)`.
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        unit_from_bits(self.next_u64())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("unknown distribution `{0}`")]
    UnknownFamily(String),
    #[error("{family}: unknown parameter `{name}` (expected {expected})")]
    UnknownParam {
        family: Family,
        name: String,
        expected: String,
    },
    #[error("{family}: missing parameter `{name}`")]
    MissingParam { family: Family, name: &'static str },
    #[error("{family}: parameter {name} = {value} outside {domain}")]
    OutOfDomain {
        family: Family,
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
}

/// Distribution families available as sweep inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    DiscreteUniform,
    Poisson,
    Geometric,
    ContinuousUniform,
    Exponential,
    Normal,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::DiscreteUniform,
        Family::Poisson,
        Family::Geometric,
        Family::ContinuousUniform,
        Family::Exponential,
        Family::Normal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::DiscreteUniform => "discrete_uniform",
            Family::Poisson => "poisson",
            Family::Geometric => "geometric",
            Family::ContinuousUniform => "continuous_uniform",
            Family::Exponential => "exponential",
            Family::Normal => "normal",
        }
    }

    /// Canonical parameter names. Normal also accepts `sd` in place of
    /// `variance`, and `mu` as an alias of `mean`.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::DiscreteUniform => &["k"],
            Family::Poisson | Family::Exponential => &["lambda"],
            Family::Geometric => &["p"],
            Family::ContinuousUniform => &["theta"],
            Family::Normal => &["mean", "variance"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| ParamError::UnknownFamily(s.to_string()))
    }
}

/// Upper guard on the Poisson rate; `e^-lambda` underflows well past this.
pub const POISSON_MAX_LAMBDA: f64 = 100.0;

/// A distribution family with validated parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    /// Uniform on `{1, ..., k}`.
    DiscreteUniform {
        k: u64,
    },
    Poisson {
        lambda: f64,
    },
    /// Failures before the first success.
    Geometric {
        p: f64,
    },
    /// Uniform on `[0, theta)`.
    ContinuousUniform {
        theta: f64,
    },
    Exponential {
        lambda: f64,
    },
    Normal {
        mean: f64,
        sd: f64,
    },
}

impl Distribution {
    pub fn discrete_uniform(k: f64) -> Result<Self, ParamError> {
        if !(k >= 1.0 && k.fract() == 0.0 && k <= u64::MAX as f64) {
            return Err(out_of_domain(Family::DiscreteUniform, "k", k, "integers >= 1"));
        }
        Ok(Distribution::DiscreteUniform { k: k as u64 })
    }

    pub fn poisson(lambda: f64) -> Result<Self, ParamError> {
        if !(lambda > 0.0 && lambda <= POISSON_MAX_LAMBDA) {
            return Err(out_of_domain(Family::Poisson, "lambda", lambda, "(0, 100]"));
        }
        Ok(Distribution::Poisson { lambda })
    }

    pub fn geometric(p: f64) -> Result<Self, ParamError> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(out_of_domain(Family::Geometric, "p", p, "(0, 1]"));
        }
        Ok(Distribution::Geometric { p })
    }

    pub fn continuous_uniform(theta: f64) -> Result<Self, ParamError> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(out_of_domain(Family::ContinuousUniform, "theta", theta, "(0, inf)"));
        }
        Ok(Distribution::ContinuousUniform { theta })
    }

    pub fn exponential(lambda: f64) -> Result<Self, ParamError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(out_of_domain(Family::Exponential, "lambda", lambda, "(0, inf)"));
        }
        Ok(Distribution::Exponential { lambda })
    }

    pub fn normal(mean: f64, sd: f64) -> Result<Self, ParamError> {
        if !mean.is_finite() {
            return Err(out_of_domain(Family::Normal, "mean", mean, "finite reals"));
        }
        if !(sd > 0.0 && sd.is_finite()) {
            return Err(out_of_domain(Family::Normal, "sd", sd, "(0, inf)"));
        }
        Ok(Distribution::Normal { mean, sd })
    }

    /// Builds a distribution from named parameters, e.g. `[("lambda", 2.0)]`.
    pub fn from_params(family: Family, params: &[(&str, f64)]) -> Result<Self, ParamError> {
        let mut mean = None;
        let mut variance = None;
        let mut sd = None;
        let mut single = None;
        for &(name, value) in params {
            let slot = match (family, name) {
                (Family::Normal, "mean" | "mu") => &mut mean,
                (Family::Normal, "variance" | "sigma2") => &mut variance,
                (Family::Normal, "sd" | "sigma") => &mut sd,
                (Family::DiscreteUniform, "k" | "K")
                | (Family::Poisson | Family::Exponential, "lambda")
                | (Family::Geometric, "p" | "P")
                | (Family::ContinuousUniform, "theta") => &mut single,
                _ => {
                    return Err(ParamError::UnknownParam {
                        family,
                        name: name.to_string(),
                        expected: family.param_names().join(", "),
                    })
                }
            };
            *slot = Some(value);
        }
        let need = |v: Option<f64>, name: &'static str| v.ok_or(ParamError::MissingParam { family, name });
        match family {
            Family::DiscreteUniform => Distribution::discrete_uniform(need(single, "k")?),
            Family::Poisson => Distribution::poisson(need(single, "lambda")?),
            Family::Geometric => Distribution::geometric(need(single, "p")?),
            Family::ContinuousUniform => Distribution::continuous_uniform(need(single, "theta")?),
            Family::Exponential => Distribution::exponential(need(single, "lambda")?),
            Family::Normal => {
                let mean = need(mean, "mean")?;
                let sd = match (sd, variance) {
                    (Some(s), _) => s,
                    (None, Some(v)) if v > 0.0 => v.sqrt(),
                    (None, Some(v)) => return Err(out_of_domain(family, "variance", v, "(0, inf)")),
                    (None, None) => {
                        return Err(ParamError::MissingParam {
                            family,
                            name: "variance",
                        })
                    }
                };
                Distribution::normal(mean, sd)
            }
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Distribution::DiscreteUniform { .. } => Family::DiscreteUniform,
            Distribution::Poisson { .. } => Family::Poisson,
            Distribution::Geometric { .. } => Family::Geometric,
            Distribution::ContinuousUniform { .. } => Family::ContinuousUniform,
            Distribution::Exponential { .. } => Family::Exponential,
            Distribution::Normal { .. } => Family::Normal,
        }
    }

    /// Analytic mean and variance.
    pub fn moments(&self) -> (f64, f64) {
        match *self {
            Distribution::DiscreteUniform { k } => {
                let k = k as f64;
                ((k + 1.0) / 2.0, (k * k - 1.0) / 12.0)
            }
            Distribution::Poisson { lambda } => (lambda, lambda),
            Distribution::Geometric { p } => ((1.0 - p) / p, (1.0 - p) / (p * p)),
            Distribution::ContinuousUniform { theta } => (theta / 2.0, theta * theta / 12.0),
            Distribution::Exponential { lambda } => (1.0 / lambda, 1.0 / (lambda * lambda)),
            Distribution::Normal { mean, sd } => (mean, sd * sd),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Distribution::DiscreteUniform { k } => write!(f, "discrete_uniform(k={k})"),
            Distribution::Poisson { lambda } => write!(f, "poisson(lambda={lambda})"),
            Distribution::Geometric { p } => write!(f, "geometric(p={p})"),
            Distribution::ContinuousUniform { theta } => write!(f, "continuous_uniform(theta={theta})"),
            Distribution::Exponential { lambda } => write!(f, "exponential(lambda={lambda})"),
            Distribution::Normal { mean, sd } => write!(f, "normal(mean={mean}, variance={})", sd * sd),
        }
    }
}

fn out_of_domain(family: Family, name: &'static str, value: f64, domain: &'static str) -> ParamError {
    ParamError::OutOfDomain {
        family,
        name,
        value,
        domain,
    }
}

/// `floor(k * u) + 1`, clamped to `k` for `u` rounding up to 1.
pub fn discrete_uniform_from_unit(k: u64, u: f64) -> u64 {
    ((k as f64 * u) as u64 + 1).min(k)
}

/// `floor(ln(1 - u) / ln(1 - p))`; zero when `p == 1`.
pub fn geometric_from_unit(p: f64, u: f64) -> u64 {
    if p >= 1.0 {
        return 0;
    }
    ((1.0 - u).ln() / (1.0 - p).ln()).floor() as u64
}

/// `-ln(1 - u) / lambda`.
pub fn exponential_from_unit(lambda: f64, u: f64) -> f64 {
    -(1.0 - u).ln() / lambda
}

/// Box-Muller pair from `u1 in (0, 1]` and `u2 in [0, 1)`.
pub fn box_muller(u1: f64, u2: f64) -> (f64, f64) {
    let r = (-2.0 * u1.ln()).sqrt();
    let angle = 2.0 * PI * u2;
    (r * angle.cos(), r * angle.sin())
}

/// A generator plus the cached second half of the last Box-Muller pair.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: RngState,
    spare_normal: Option<f64>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: RngState::new(seed),
            spare_normal: None,
        }
    }

    pub fn rng(&mut self) -> &mut RngState {
        &mut self.rng
    }

    pub fn next_unit(&mut self) -> f64 {
        self.rng.next_unit()
    }

    pub fn discrete_uniform(&mut self, k: u64) -> u64 {
        discrete_uniform_from_unit(k, self.rng.next_unit())
    }

    /// Product method: multiply uniforms until the product drops below
    /// `e^-lambda`; the count of factors minus one is the variate.
    pub fn poisson(&mut self, lambda: f64) -> u64 {
        let threshold = (-lambda).exp();
        let mut product = self.rng.next_unit();
        let mut count = 0;
        while product >= threshold {
            product *= self.rng.next_unit();
            count += 1;
        }
        count
    }

    pub fn geometric(&mut self, p: f64) -> u64 {
        if p >= 1.0 {
            return 0;
        }
        geometric_from_unit(p, self.rng.next_unit())
    }

    pub fn continuous_uniform(&mut self, theta: f64) -> f64 {
        theta * self.rng.next_unit()
    }

    pub fn exponential(&mut self, lambda: f64) -> f64 {
        exponential_from_unit(lambda, self.rng.next_unit())
    }

    /// Standard normal; draws come in Box-Muller pairs.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = 1.0 - self.rng.next_unit();
        let u2 = self.rng.next_unit();
        let (z0, z1) = box_muller(u1, u2);
        self.spare_normal = Some(z1);
        z0
    }

    pub fn normal(&mut self, mean: f64, sd: f64) -> f64 {
        mean + sd * self.standard_normal()
    }

    /// One variate from `dist` as a real.
    pub fn sample(&mut self, dist: &Distribution) -> f64 {
        match *dist {
            Distribution::DiscreteUniform { k } => self.discrete_uniform(k) as f64,
            Distribution::Poisson { lambda } => self.poisson(lambda) as f64,
            Distribution::Geometric { p } => self.geometric(p) as f64,
            Distribution::ContinuousUniform { theta } => self.continuous_uniform(theta),
            Distribution::Exponential { lambda } => self.exponential(lambda),
            Distribution::Normal { mean, sd } => self.normal(mean, sd),
        }
    }

    /// One key: rounded down in `int` mode, unchanged in `real` mode.
    ///
    /// Flooring (rather than truncating toward zero) keeps every integer
    /// bucket one unit wide, so shifting a normal mean by an integer shifts
    /// the keys without changing their tie pattern.
    pub fn draw_key(&mut self, dist: &Distribution, mode: KeyMode) -> Key {
        let value = self.sample(dist);
        match mode {
            KeyMode::Int => Key::Int(value.floor() as i64),
            // Samplers never produce NaN for validated parameters.
            KeyMode::Real => Key::Real(RealKey::new(value).expect("sampler produced NaN")),
        }
    }
}
