//! Exhaustive and sampled scans over pairs and triples of elements.
//!
//! Full scans are partitioned over the first coordinate across rayon workers.
//! The reported witness is always the lexicographically smallest violating
//! tuple, whatever the scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::table::Elem;

pub const DEFAULT_CAP: usize = 128;
pub const DEFAULT_SEED: u64 = 0x6c6f_6f70;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleBudget {
    pub count: u64,
    pub seed: u64,
}

/// How large a loop may be before a full triple scan is refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanPolicy {
    pub cap: usize,
    pub sample: Option<SampleBudget>,
}

impl Default for ScanPolicy {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP, sample: None }
    }
}

impl ScanPolicy {
    pub fn full() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: usize) -> Self {
        Self { cap, sample: None }
    }

    pub fn sampled(count: u64, seed: u64) -> Self {
        Self { cap: DEFAULT_CAP, sample: Some(SampleBudget { count, seed }) }
    }

    /// Decide the scan mode for a loop of order `n`; `None` means the cap
    /// was exceeded without a sampling budget.
    pub fn mode_for(&self, n: usize) -> Option<ScanMode> {
        match self.sample {
            Some(b) => Some(ScanMode::Sampled { count: b.count, seed: b.seed }),
            None if n <= self.cap => Some(ScanMode::Full),
            None => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ScanMode {
    Full,
    Sampled { count: u64, seed: u64 },
}

/// Result of a property scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanOutcome<W> {
    pub holds: bool,
    pub witness: Option<W>,
    pub mode: ScanMode,
}

impl<W> ScanOutcome<W> {
    pub(crate) fn from_witness(witness: Option<W>, mode: ScanMode) -> Self {
        Self { holds: witness.is_none(), witness, mode }
    }
}

/// Smallest `(x, y)` in `0..n × 0..n` for which `ok` is false.
pub fn first_pair_violation<F>(n: usize, ok: F) -> Option<(Elem, Elem)>
where
    F: Fn(Elem, Elem) -> bool + Sync,
{
    (0..n).into_par_iter().find_map_first(|x| (0..n).find(|&y| !ok(x, y)).map(|y| (x, y)))
}

/// Smallest `(x, y, z)` for which `ok` is false.
pub fn first_triple_violation<F>(n: usize, ok: F) -> Option<[Elem; 3]>
where
    F: Fn(Elem, Elem, Elem) -> bool + Sync,
{
    (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                if !ok(x, y, z) {
                    return Some([x, y, z]);
                }
            }
        }
        None
    })
}

/// Deterministic sample of `count` triples from `0..n`.
pub fn sample_triples(n: usize, count: u64, seed: u64) -> Vec<[u32; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| [rng.gen_range(0..n) as u32, rng.gen_range(0..n) as u32, rng.gen_range(0..n) as u32]).collect()
}

/// Smallest violating triple among a seeded sample.
pub fn sampled_triple_violation<F>(n: usize, count: u64, seed: u64, ok: F) -> Option<[Elem; 3]>
where
    F: Fn(Elem, Elem, Elem) -> bool + Sync,
{
    sample_triples(n, count, seed)
        .par_iter()
        .filter(|t| !ok(t[0] as Elem, t[1] as Elem, t[2] as Elem))
        .map(|t| [t[0] as Elem, t[1] as Elem, t[2] as Elem])
        .min()
}

/// Run a triple scan in whatever mode was chosen.
pub fn triple_scan<F>(n: usize, mode: ScanMode, ok: F) -> ScanOutcome<[Elem; 3]>
where
    F: Fn(Elem, Elem, Elem) -> bool + Sync,
{
    let witness = match mode {
        ScanMode::Full => first_triple_violation(n, ok),
        ScanMode::Sampled { count, seed } => sampled_triple_violation(n, count, seed, ok),
    };
    ScanOutcome::from_witness(witness, mode)
}
