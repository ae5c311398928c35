//! Exact counting of interleavers by spread.
//!
//! `spread_gt2_count` evaluates, in pure integer arithmetic, the
//! inclusion-exclusion count of permutations that avoid every clockwise and
//! counterclockwise 2-sequence on the ring — exactly the permutations with
//! spread above 2. `oracle_distribution` enumerates all `n!` permutations
//! as the independent ground truth.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::perm::Permutation;
use crate::prob::ExactProb;

/// Largest blocklength `oracle_distribution` accepts.
pub const ORACLE_DEFAULT_CAP: usize = 9;
/// Absolute ceiling for `oracle_distribution_extended` (11! spread scans).
pub const ORACLE_HARD_CAP: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("blocklength must be at least 2, got {n}")]
    BlocklengthTooSmall { n: usize },
    #[error("blocklength {n} exceeds the enumeration cap {cap} ({cap}! permutations)")]
    EnumerationCapExceeded { n: usize, cap: usize },
}

/// Exact `n!`.
pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// Exact count of blocklength-`n` permutations with spread above 2.
///
/// A permutation has spread above 2 exactly when no two circularly
/// adjacent positions map to circularly adjacent values. Inclusion-
/// exclusion runs over the `n` adjacencies of the position ring: `k`
/// violated adjacencies group into `a` runs, each run monotone (a sign
/// change would repeat a value), giving
///
/// - `(n/(n-k)) · C(n-k, a) · C(k-1, a-1)` ways to pick the adjacencies
///   (subsets of a ring with `a` maximal runs — an integer),
/// - `2^a` run directions,
/// - `n · (n-k-1)!` placements of the forced value runs and the free
///   values.
///
/// Constraining all `n` adjacencies leaves the `2n` rotations and
/// reversed rotations, signed `(-1)^n`. Everything stays in integers;
/// the division by `n-k` is exact by the subset-count interpretation.
/// `n = 2` is special-cased to 0: both permutations of two symbols have
/// spread exactly 2, and the two positions of a 2-ring are doubly
/// adjacent, which the run argument does not model (the literal sum
/// goes negative).
pub fn spread_gt2_count(n: usize) -> Result<BigUint, CountError> {
    if n < 2 {
        return Err(CountError::BlocklengthTooSmall { n });
    }
    if n == 2 {
        return Ok(BigUint::zero());
    }

    // factorials 0! ..= (n-2)!, reused across the outer sum
    let mut fact = Vec::with_capacity(n - 1);
    fact.push(BigUint::one());
    for k in 1..=(n - 2) as u64 {
        let next = fact.last().unwrap() * k;
        fact.push(next);
    }

    let n_big = BigUint::from(n as u64);
    let mut acc = BigInt::from(factorial(n));

    for k in 1..n {
        let a_max = k.min(n - k);
        // inner sum over the run count a; binomials and the power of two
        // carried incrementally: c1 = C(k-1, a-1), c2 = C(n-k, a), pw = 2^a
        let mut c1 = BigUint::one();
        let mut c2 = BigUint::from((n - k) as u64);
        let mut pw = BigUint::from(2u32);
        let mut inner = BigUint::zero();
        for a in 1..=a_max {
            inner += &pw * &c1 * &c2;
            if a < a_max {
                // C(k-1, a) = C(k-1, a-1) · (k-a) / a
                c1 = c1 * (k - a) as u64 / a as u64;
                // C(n-k, a+1) = C(n-k, a) · (n-k-a) / (a+1)
                c2 = c2 * (n - k - a) as u64 / (a + 1) as u64;
                pw <<= 1;
            }
        }
        let selections = inner * &n_big / BigUint::from((n - k) as u64);
        let term = BigInt::from(selections * &n_big * &fact[n - k - 1]);
        if k % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }

    let full_ring = BigInt::from(2 * n as u64);
    if n % 2 == 1 {
        acc -= full_ring;
    } else {
        acc += full_ring;
    }

    match acc.to_biguint() {
        Some(count) => Ok(count),
        None => panic!("inclusion-exclusion count went negative for n = {n}"),
    }
}

/// Exact count of blocklength-`n` permutations with spread exactly 2:
/// `n! - spread_gt2_count(n)`.
pub fn spread_eq2_count(n: usize) -> Result<BigUint, CountError> {
    let above = spread_gt2_count(n)?;
    Ok(factorial(n) - above)
}

/// Exact probability that a uniformly random interleaver of blocklength
/// `n` has spread above 2, as a reduced rational.
pub fn spread_gt2_probability(n: usize) -> Result<ExactProb, CountError> {
    let above = spread_gt2_count(n)?;
    Ok(ExactProb::new(above, factorial(n)).expect("count <= n!"))
}

/// Limit of `spread_gt2_probability(n)` as the blocklength grows: `e^-2`.
pub fn spread_gt2_limit() -> f64 {
    (-2.0f64).exp()
}

/// Exact spread counts for one blocklength, obtained by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadDistribution {
    n: usize,
    counts: BTreeMap<usize, u64>,
}

impl SpreadDistribution {
    pub fn blocklength(&self) -> usize {
        self.n
    }

    /// Count of permutations per spread value, ascending by spread.
    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    /// Total permutations covered; equals `n!` for a full enumeration.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Permutations with spread exactly `s`.
    pub fn count_exactly(&self, s: usize) -> u64 {
        self.counts.get(&s).copied().unwrap_or(0)
    }

    /// Permutations with spread at least `s`.
    pub fn count_at_least(&self, s: usize) -> u64 {
        self.counts
            .iter()
            .filter(|(&k, _)| k >= s)
            .map(|(_, &c)| c)
            .sum()
    }
}

/// Enumerates all `n!` permutations and tallies their spreads.
/// Refuses `n` above [`ORACLE_DEFAULT_CAP`].
pub fn oracle_distribution(n: usize) -> Result<SpreadDistribution, CountError> {
    oracle_with_cap(n, ORACLE_DEFAULT_CAP)
}

/// Enumeration oracle with the cap raised to [`ORACLE_HARD_CAP`];
/// `n = 11` costs about 4×10^7 spread evaluations.
pub fn oracle_distribution_extended(n: usize) -> Result<SpreadDistribution, CountError> {
    oracle_with_cap(n, ORACLE_HARD_CAP)
}

fn oracle_with_cap(n: usize, cap: usize) -> Result<SpreadDistribution, CountError> {
    if n < 2 {
        return Err(CountError::BlocklengthTooSmall { n });
    }
    if n > cap {
        return Err(CountError::EnumerationCapExceeded { n, cap });
    }

    // one task per value of the first position; the per-task tallies are
    // merged by addition, so the result does not depend on worker count
    let counts = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut buf: Vec<usize> = Vec::with_capacity(n);
            buf.push(first);
            buf.extend((0..n).filter(|&v| v != first));
            let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
            visit_suffix_perms(&mut buf, 1, &mut |map| {
                // the naive quadratic scan keeps the oracle independent of
                // the windowed shortcut it is used to validate
                let p = Permutation::from_trusted(map.to_vec());
                *tally.entry(p.spread()).or_insert(0) += 1;
            });
            tally
        })
        .reduce(BTreeMap::new, merge_counts);

    Ok(SpreadDistribution { n, counts })
}

fn merge_counts(
    mut left: BTreeMap<usize, u64>,
    right: BTreeMap<usize, u64>,
) -> BTreeMap<usize, u64> {
    for (k, v) in right {
        *left.entry(k).or_insert(0) += v;
    }
    left
}

/// Visits every permutation of `buf[k..]` exactly once, in place.
fn visit_suffix_perms(buf: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k + 1 >= buf.len() {
        f(buf);
        return;
    }
    for i in k..buf.len() {
        buf.swap(k, i);
        visit_suffix_perms(buf, k + 1, f);
        buf.swap(k, i);
    }
}
