//! Sort keys.
//!
//! Every array handled by the sorts carries keys of one mode only: variates
//! rounded down to 64-bit integers (`int`, the default) or full-precision
//! reals (`real`).
//! Real keys are NaN-free by construction so that comparison is a total order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KeyError {
    #[error("NaN is not a valid sort key")]
    NaN,
    #[error("unknown key mode `{0}` (expected `int` or `real`)")]
    UnknownMode(String),
    #[error("cannot parse `{0}` as a key in {1} mode")]
    Unparsable(String, KeyMode),
}

/// How variates are stored as keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KeyMode {
    /// Round down to `i64`.
    #[default]
    Int,
    /// Keep the real value.
    Real,
}

impl KeyMode {
    pub fn as_str(self) -> &'static str {
        match self {
            KeyMode::Int => "int",
            KeyMode::Real => "real",
        }
    }
}

impl fmt::Display for KeyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KeyMode {
    type Err = KeyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" => Ok(KeyMode::Int),
            "real" => Ok(KeyMode::Real),
            other => Err(KeyError::UnknownMode(other.to_string())),
        }
    }
}

/// A NaN-free `f64`, totally ordered.
///
/// `-0.0` and `0.0` compare equal, as they do under IEEE comparison.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RealKey(f64);

impl RealKey {
    pub fn new(value: f64) -> Result<Self, KeyError> {
        if value.is_nan() {
            Err(KeyError::NaN)
        } else {
            Ok(RealKey(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl Eq for RealKey {}

impl PartialOrd for RealKey {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealKey {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN is excluded at construction.
        self.0.partial_cmp(&other.0).unwrap_or(Ordering::Equal)
    }
}

impl TryFrom<f64> for RealKey {
    type Error = KeyError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        RealKey::new(value)
    }
}

impl fmt::Display for RealKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// A single key of either mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Key {
    Int(i64),
    Real(RealKey),
}

impl Key {
    pub fn mode(self) -> KeyMode {
        match self {
            Key::Int(_) => KeyMode::Int,
            Key::Real(_) => KeyMode::Real,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Key::Int(v) => v as f64,
            Key::Real(v) => v.get(),
        }
    }

    /// Parses one key in the given mode.
    pub fn parse(text: &str, mode: KeyMode) -> Result<Key, KeyError> {
        let t = text.trim();
        let bad = || KeyError::Unparsable(t.to_string(), mode);
        match mode {
            KeyMode::Int => t.parse::<i64>().map(Key::Int).map_err(|_| bad()),
            KeyMode::Real => {
                let v: f64 = t.parse().map_err(|_| bad())?;
                RealKey::new(v).map(Key::Real)
            }
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Int(v) => write!(f, "{v}"),
            Key::Real(v) => write!(f, "{v}"),
        }
    }
}

/// An array of keys sharing one mode.
#[derive(Debug, Clone, PartialEq)]
pub enum KeyVec {
    Int(Vec<i64>),
    Real(Vec<RealKey>),
}

impl KeyVec {
    pub fn with_capacity(mode: KeyMode, capacity: usize) -> Self {
        match mode {
            KeyMode::Int => KeyVec::Int(Vec::with_capacity(capacity)),
            KeyMode::Real => KeyVec::Real(Vec::with_capacity(capacity)),
        }
    }

    /// Builds a real-mode array, rejecting NaN.
    pub fn from_reals(values: &[f64]) -> Result<Self, KeyError> {
        values
            .iter()
            .map(|&v| RealKey::new(v))
            .collect::<Result<Vec<_>, _>>()
            .map(KeyVec::Real)
    }

    pub fn mode(&self) -> KeyMode {
        match self {
            KeyVec::Int(_) => KeyMode::Int,
            KeyVec::Real(_) => KeyMode::Real,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            KeyVec::Int(v) => v.len(),
            KeyVec::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Appends a key; a key of the other mode is a programming error.
    pub fn push(&mut self, key: Key) {
        match (self, key) {
            (KeyVec::Int(v), Key::Int(k)) => v.push(k),
            (KeyVec::Real(v), Key::Real(k)) => v.push(k),
            (this, key) => panic!("cannot push a {} key into a {} array", key.mode(), this.mode()),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Key> + '_ {
        let (ints, reals) = match self {
            KeyVec::Int(v) => (Some(v.iter().map(|&k| Key::Int(k))), None),
            KeyVec::Real(v) => (None, Some(v.iter().map(|&k| Key::Real(k)))),
        };
        ints.into_iter().flatten().chain(reals.into_iter().flatten())
    }
}
