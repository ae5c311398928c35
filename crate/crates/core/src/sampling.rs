//! Seeded Monte Carlo over uniform random interleavers.
//!
//! Trials are split into fixed-size blocks. Block `b` runs on its own
//! ChaCha8 generator seeded with `splitmix64(seed + b·0x9E3779B97F4A7C15)`,
//! and block results merge by addition, so every estimate is reproducible
//! bit-for-bit regardless of how many worker threads execute the blocks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::max_spread;
use crate::perm::{spread_windowed_raw, Permutation};

/// Trials per block; part of the deterministic partitioning policy.
pub const TRIAL_BLOCK_SIZE: u64 = 4096;

/// Normal quantile for the 95% Wilson score interval.
const WILSON_Z: f64 = 1.96;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SamplingError {
    #[error("blocklength must be at least 2, got {n}")]
    BlocklengthTooSmall { n: usize },
    #[error("spread target must be at least 2, got {s}")]
    SpreadTooSmall { s: usize },
    #[error("spread {s} exceeds the cap {cap} for blocklength {n}; no such interleaver exists")]
    SpreadExceedsCap { n: usize, s: usize, cap: usize },
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error("at least one attempt is required")]
    ZeroAttempts,
}

/// Monte Carlo estimate of `P(spread >= s)` with a 95% Wilson interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub n: usize,
    pub s: usize,
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

/// Outcome of a rejection search for an interleaver with spread >= s.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub found: Option<Permutation>,
    pub attempts: u64,
    pub seed: u64,
}

/// Uniformly random permutation of blocklength `n >= 2` via an unbiased
/// Fisher-Yates shuffle (rejection-sampled indices, no modulo bias).
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    assert!(n >= 2, "blocklength must be at least 2, got {n}");
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    Permutation::from_trusted(map)
}

/// SplitMix64 finalizer; decorrelates per-block seeds.
fn splitmix64(x: u64) -> u64 {
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial block `b` of a run with master seed `seed`.
fn block_seed(seed: u64, block: u64) -> u64 {
    splitmix64(seed.wrapping_add(block.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn block_sizes(trials: u64) -> impl Iterator<Item = (u64, u64)> {
    let blocks = trials.div_ceil(TRIAL_BLOCK_SIZE);
    (0..blocks).map(move |b| {
        let len = TRIAL_BLOCK_SIZE.min(trials - b * TRIAL_BLOCK_SIZE);
        (b, len)
    })
}

/// Estimates `P(spread >= s)` from `trials` uniform samples.
///
/// Deterministic in `(n, s, trials, seed)`: the block partition is fixed
/// by [`TRIAL_BLOCK_SIZE`] and block tallies merge by addition.
pub fn estimate_spread_prob(
    n: usize,
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<SampleReport, SamplingError> {
    if n < 2 {
        return Err(SamplingError::BlocklengthTooSmall { n });
    }
    if s < 2 {
        return Err(SamplingError::SpreadTooSmall { s });
    }
    if trials == 0 {
        return Err(SamplingError::ZeroTrials);
    }

    let hits: u64 = block_sizes(trials)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(b, len)| {
            let mut rng = ChaCha8Rng::seed_from_u64(block_seed(seed, b));
            let mut buf: Vec<usize> = (0..n).collect();
            let mut hits = 0u64;
            for _ in 0..len {
                // reshuffling the previous draw is still a uniform draw
                buf.shuffle(&mut rng);
                if spread_windowed_raw(&buf) >= s {
                    hits += 1;
                }
            }
            hits
        })
        .sum();

    let estimate = hits as f64 / trials as f64;
    let (ci_low, ci_high) = wilson_interval(hits, trials);
    Ok(SampleReport {
        n,
        s,
        trials,
        hits,
        estimate,
        ci_low,
        ci_high,
        seed,
    })
}

/// Histogram of spread values over `trials` uniform samples.
/// Same determinism contract as [`estimate_spread_prob`].
pub fn empirical_distribution(
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<BTreeMap<usize, u64>, SamplingError> {
    if n < 2 {
        return Err(SamplingError::BlocklengthTooSmall { n });
    }
    if trials == 0 {
        return Err(SamplingError::ZeroTrials);
    }

    let counts = block_sizes(trials)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(b, len)| {
            let mut rng = ChaCha8Rng::seed_from_u64(block_seed(seed, b));
            let mut buf: Vec<usize> = (0..n).collect();
            let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
            for _ in 0..len {
                buf.shuffle(&mut rng);
                *tally.entry(spread_windowed_raw(&buf)).or_insert(0) += 1;
            }
            tally
        })
        .reduce(BTreeMap::new, |mut left, right| {
            for (k, v) in right {
                *left.entry(k).or_insert(0) += v;
            }
            left
        });

    Ok(counts)
}

/// Draws uniform permutations until one has spread at least `s`, or
/// until `max_attempts` draws are exhausted. The expected number of
/// attempts grows like `e^(2(s-2)^2)` for large blocklengths.
pub fn search_spread(
    n: usize,
    s: usize,
    seed: u64,
    max_attempts: u64,
) -> Result<SearchResult, SamplingError> {
    if n < 2 {
        return Err(SamplingError::BlocklengthTooSmall { n });
    }
    if s < 2 {
        return Err(SamplingError::SpreadTooSmall { s });
    }
    let cap = max_spread(n);
    if s > cap {
        return Err(SamplingError::SpreadExceedsCap { n, s, cap });
    }
    if max_attempts == 0 {
        return Err(SamplingError::ZeroAttempts);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buf: Vec<usize> = (0..n).collect();
    for attempt in 1..=max_attempts {
        buf.shuffle(&mut rng);
        if spread_windowed_raw(&buf) >= s {
            return Ok(SearchResult {
                found: Some(Permutation::from_trusted(buf)),
                attempts: attempt,
                seed,
            });
        }
    }
    Ok(SearchResult {
        found: None,
        attempts: max_attempts,
        seed,
    })
}

/// 95% Wilson score interval for `hits` successes in `trials` draws.
/// Robust where the plain normal interval collapses (proportions near
/// 0 or 1), which the small bound probabilities reach quickly.
pub fn wilson_interval(hits: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0, "at least one trial is required");
    assert!(hits <= trials, "hits cannot exceed trials");
    let nf = trials as f64;
    let p = hits as f64 / nf;
    let z2 = WILSON_Z * WILSON_Z;
    let scale = 1.0 / (1.0 + z2 / nf);
    let center = p + z2 / (2.0 * nf);
    let margin = WILSON_Z / (2.0 * nf) * (4.0 * nf * p * (1.0 - p) + z2).sqrt();
    (
        ((center - margin) * scale).clamp(0.0, 1.0),
        ((center + margin) * scale).clamp(0.0, 1.0),
    )
}
