//! Interchange-free Quicksort ("New Sort") laboratory.
//!
//! The crate is organised around five pieces:
//!
//! - [`sort`]: the two-ended temporary-array partition sort with exact
//!   comparison/write/depth counters, plus an in-place Quicksort baseline.
//! - [`rng`]: a bit-exact splitmix64 generator and the six variate samplers
//!   used to build sweep inputs.
//! - [`harness`]: parameter sweeps at fixed `n` with repeated trials, the
//!   embedded published timing tables, and CSV persistence.
//! - [`regression`]: least-squares polynomial fits, R², degree selection and
//!   dependence verdicts.
//! - [`reproduce`]: the published experiments as sweep configurations, with
//!   the fit and trend checks that compare a fresh run against them.
//! - [`stats`]: small descriptive statistics shared by the above.

pub mod format;
pub mod harness;
pub mod key;
pub mod regression;
pub mod reproduce;
pub mod rng;
pub mod sort;
pub mod stats;

pub use key::{Key, KeyError, KeyMode, KeyVec, RealKey};
pub use sort::{new_sort, quicksort_baseline, verify_sorted_permutation, Algorithm, SortOutcome, SortStats};
