//! Interchange-free partition sort and an in-place Quicksort baseline.
//!
//! New Sort partitions a segment by taking its first element as the pivot and
//! streaming every other element into a scratch array of the same length:
//! elements `<= pivot` fill from the front, elements `> pivot` fill from the
//! back, and the pivot drops into the single slot left between them. The
//! scratch range is copied back and the two sides are sorted the same way.
//!
//! Consequences worth knowing:
//!
//! - Ties go left, so runs of equal keys partition as badly as possible. An
//!   all-equal array of length `n` costs exactly `n(n-1)/2` comparisons.
//! - The right side comes out in reverse encounter order, so the sort is not
//!   stable.
//! - Pivot choice is always the first element; sorted input is quadratic.
//!
//! Recursion is driven by an explicit stack that always processes the smaller
//! side next, so the stack holds `O(log n)` entries even on degenerate input.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::key::KeyVec;

/// Exact operation counters for one sort call.
///
/// `writes` for New Sort counts two per element per partition call (scratch
/// write plus copy-back, pivot included). For the Quicksort baseline it counts
/// element moves, two per exchange of distinct positions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SortStats {
    pub comparisons: u64,
    pub writes: u64,
    pub max_depth: u64,
    /// Wall time of the sort, never part of any determinism guarantee.
    pub elapsed_ns: u64,
}

impl SortStats {
    /// The deterministic part of the stats.
    pub fn counters(&self) -> (u64, u64, u64) {
        (self.comparisons, self.writes, self.max_depth)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SortOutcome<T> {
    pub output: Vec<T>,
    pub stats: SortStats,
}

/// Which sort a trial runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    #[default]
    NewSort,
    QuicksortBaseline,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::NewSort => "new_sort",
            Algorithm::QuicksortBaseline => "quicksort_baseline",
        }
    }

    /// One-line description of the `writes` counter for report headers.
    pub fn writes_convention(self) -> &'static str {
        match self {
            Algorithm::NewSort => "writes = 2 per element per partition call (scratch write + copy-back)",
            Algorithm::QuicksortBaseline => "writes = 2 per exchange of two distinct positions (direct swap)",
        }
    }

    pub fn sort<T: Ord + Copy>(self, input: &[T]) -> SortOutcome<T> {
        match self {
            Algorithm::NewSort => new_sort(input),
            Algorithm::QuicksortBaseline => quicksort_baseline(input),
        }
    }

    pub fn sort_keys(self, input: &KeyVec) -> (KeyVec, SortStats) {
        match input {
            KeyVec::Int(v) => {
                let out = self.sort(v);
                (KeyVec::Int(out.output), out.stats)
            }
            KeyVec::Real(v) => {
                let out = self.sort(v);
                (KeyVec::Real(out.output), out.stats)
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "new_sort" => Ok(Algorithm::NewSort),
            "quicksort_baseline" => Ok(Algorithm::QuicksortBaseline),
            other => Err(format!(
                "unknown algorithm `{other}` (expected `new_sort` or `quicksort_baseline`)"
            )),
        }
    }
}

/// Partitions `segment` around its first element using `scratch` (same
/// length) and copies the result back. Returns the pivot's final index.
///
/// # Panics
///
/// If `segment` is empty or `scratch` has a different length.
fn partition_with<T: Ord + Copy>(segment: &mut [T], scratch: &mut [T], stats: &mut SortStats) -> usize {
    let m = segment.len();
    assert!(m >= 1, "partition of an empty segment");
    assert_eq!(scratch.len(), m);

    let pivot = segment[0];
    let mut front = 0;
    let mut back = m;
    for &e in &segment[1..] {
        if pivot < e {
            back -= 1;
            scratch[back] = e;
        } else {
            scratch[front] = e;
            front += 1;
        }
    }
    debug_assert_eq!(front + 1, back);
    scratch[front] = pivot;
    segment.copy_from_slice(scratch);

    stats.comparisons += (m - 1) as u64;
    stats.writes += 2 * m as u64;
    front
}

/// One New Sort partition step on `segment`, in place.
///
/// The pivot (the original first element) ends at the returned index, which
/// equals the number of other elements `<= pivot`. Before it sit the `<=`
/// elements in encounter order; after it the `>` elements in reverse
/// encounter order.
///
/// # Panics
///
/// If `segment` is empty.
pub fn partition_segment<T: Ord + Copy>(segment: &mut [T], stats: &mut SortStats) -> usize {
    assert!(!segment.is_empty(), "partition of an empty segment");
    let mut scratch = segment.to_vec();
    partition_with(segment, &mut scratch, stats)
}

/// Work item: half-open range plus the depth of the partition call that
/// will process it.
#[derive(Clone, Copy)]
struct Segment {
    lo: usize,
    hi: usize,
    depth: u64,
}

/// Drives `partition` over `data` with an explicit stack, smaller side first.
fn drive<T, F>(data: &mut [T], stats: &mut SortStats, mut partition: F)
where
    F: FnMut(&mut [T], usize, usize, &mut SortStats) -> usize,
{
    let mut stack = Vec::new();
    if data.len() > 1 {
        stack.push(Segment {
            lo: 0,
            hi: data.len(),
            depth: 1,
        });
    }
    while let Some(Segment { lo, hi, depth }) = stack.pop() {
        stats.max_depth = stats.max_depth.max(depth);
        let p = lo + partition(data, lo, hi, stats);
        let left = Segment {
            lo,
            hi: p,
            depth: depth + 1,
        };
        let right = Segment {
            lo: p + 1,
            hi,
            depth: depth + 1,
        };
        let (larger, smaller) = if left.hi - left.lo >= right.hi - right.lo {
            (left, right)
        } else {
            (right, left)
        };
        if larger.hi - larger.lo > 1 {
            stack.push(larger);
        }
        if smaller.hi - smaller.lo > 1 {
            stack.push(smaller);
        }
    }
}

/// Sorts `data` in place with New Sort and returns the counters.
pub fn new_sort_in_place<T: Ord + Copy>(data: &mut [T]) -> SortStats {
    let start = Instant::now();
    let mut stats = SortStats::default();
    let mut scratch = data.to_vec();
    drive(data, &mut stats, |d, lo, hi, st| {
        partition_with(&mut d[lo..hi], &mut scratch[lo..hi], st)
    });
    stats.elapsed_ns = start.elapsed().as_nanos() as u64;
    stats
}

/// Sorts a copy of `input` with New Sort.
pub fn new_sort<T: Ord + Copy>(input: &[T]) -> SortOutcome<T> {
    let mut output = input.to_vec();
    let stats = new_sort_in_place(&mut output);
    SortOutcome { output, stats }
}

/// In-place first-element-pivot partition with exchanges, ties left.
fn exchange_partition<T: Ord + Copy>(segment: &mut [T], stats: &mut SortStats) -> usize {
    let m = segment.len();
    let pivot = segment[0];
    let mut store = 0;
    for i in 1..m {
        if segment[i] <= pivot {
            store += 1;
            if store != i {
                segment.swap(store, i);
                stats.writes += 2;
            }
        }
    }
    if store != 0 {
        segment.swap(0, store);
        stats.writes += 2;
    }
    stats.comparisons += (m - 1) as u64;
    store
}

/// Sorts `data` in place with the exchange-based Quicksort baseline.
pub fn quicksort_baseline_in_place<T: Ord + Copy>(data: &mut [T]) -> SortStats {
    let start = Instant::now();
    let mut stats = SortStats::default();
    drive(data, &mut stats, |d, lo, hi, st| exchange_partition(&mut d[lo..hi], st));
    stats.elapsed_ns = start.elapsed().as_nanos() as u64;
    stats
}

/// Sorts a copy of `input` with the Quicksort baseline.
pub fn quicksort_baseline<T: Ord + Copy>(input: &[T]) -> SortOutcome<T> {
    let mut output = input.to_vec();
    let stats = quicksort_baseline_in_place(&mut output);
    SortOutcome { output, stats }
}

/// True iff `output` is non-decreasing and a permutation of `input`.
pub fn verify_sorted_permutation<T: Ord + Clone>(input: &[T], output: &[T]) -> bool {
    if input.len() != output.len() || !output.windows(2).all(|w| w[0] <= w[1]) {
        return false;
    }
    let mut reference = input.to_vec();
    reference.sort_unstable();
    reference == output
}

/// [`verify_sorted_permutation`] across key modes; mismatched modes fail.
pub fn verify_keys(input: &KeyVec, output: &KeyVec) -> bool {
    match (input, output) {
        (KeyVec::Int(a), KeyVec::Int(b)) => verify_sorted_permutation(a, b),
        (KeyVec::Real(a), KeyVec::Real(b)) => verify_sorted_permutation(a, b),
        _ => false,
    }
}
