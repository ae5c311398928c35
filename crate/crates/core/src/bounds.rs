//! Lower bounds on the probability that a random interleaver has spread
//! at least `s`, and on the number of such interleavers.
//!
//! Everything is driven by the per-position success probability: given the
//! image of one position, the images of the positions at circular distance
//! `m` must avoid an interval of `2(s-m)-1` values around it. Chaining the
//! conditional factors over `m = 1..s-1` gives a closed-form rational that
//! is independent of the position, and raising it to an exponent yields
//! the bounds. The tight variant drops every `(s-1)`-th factor, whose
//! constraint is implied by its neighbours.
//!
//! One caveat: the derivation presumes that at least one spread-`s`
//! interleaver of blocklength `n` exists. The cap `⌊√(2n)⌋` is not always
//! attained — at `n = 9` no permutation reaches spread 4 even though the
//! cap allows it — and at such `(n, s)` the true probability is 0 while
//! the bound is a positive vacuous value. `s = 3` is safe for every
//! `n >= 5`, and the enumeration oracle pins down achievability for
//! `n <= 11`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::math::{isqrt_u64, ln_factorial};
use crate::prob::ExactProb;

/// Largest blocklength for which bounds also carry an exact rational.
pub const EXACT_MODE_MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("blocklength must be at least 2, got {n}")]
    BlocklengthTooSmall { n: usize },
    #[error("spread target must be at least 2, got {s}")]
    SpreadTooSmall { s: usize },
    #[error("spread {s} exceeds the cap {cap} for blocklength {n}; no such interleaver exists")]
    SpreadExceedsCap { n: usize, s: usize, cap: usize },
}

/// `⌊√(2n)⌋`, the cap no blocklength-`n` spread can exceed (`n >= 2`).
/// Not every blocklength attains it; see the module note.
pub fn max_spread(n: usize) -> usize {
    assert!(n >= 2, "blocklength must be at least 2, got {n}");
    isqrt_u64(2 * n as u64) as usize
}

/// Probability that one fixed position satisfies the spread-`s` condition
/// against all others, as an exact rational:
/// `(n-2s+3)^(s-1) · (n-2s+2)^(s-1) / ((n-1)(n-2)···(n-2(s-1)))`.
///
/// By circular symmetry the value does not depend on which position or on
/// the image it was conditioned on. `s = 2` yields exactly 1.
pub fn per_position_prob(n: usize, s: usize) -> Result<ExactProb, BoundsError> {
    if n < 2 {
        return Err(BoundsError::BlocklengthTooSmall { n });
    }
    if s < 2 {
        return Err(BoundsError::SpreadTooSmall { s });
    }
    let cap = max_spread(n);
    if s > cap {
        return Err(BoundsError::SpreadExceedsCap { n, s, cap });
    }
    if s == 2 {
        // numerator (n-1)(n-2) equals the denominator; avoids the zero
        // factor n-2 at n = 2
        return Ok(ExactProb::one());
    }
    // s <= ⌊√(2n)⌋ and s >= 3 imply n >= 2s-1, so every factor below is
    // positive; keep the guard for the error contract anyway
    if n < 2 * (s - 1) + 1 {
        return Err(BoundsError::SpreadExceedsCap { n, s, cap });
    }

    let e = (s - 1) as u32;
    let numer =
        BigUint::from((n + 3 - 2 * s) as u64).pow(e) * BigUint::from((n + 2 - 2 * s) as u64).pow(e);
    let mut denom = BigUint::one();
    for k in (n + 2 - 2 * s)..n {
        denom *= k as u64;
    }
    Ok(ExactProb::new(numer, denom).expect("ratio of positive products is in (0, 1]"))
}

/// Unconditional probability that both positions at circular distance `m`
/// from a fixed one avoid the forbidden interval:
/// `(n+1-2(s-m))/(n-1) · (n-2(s-m))/(n-2)`.
/// Test-only stepping stone in the derivation of `per_position_prob`.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn exclusion_pair_prob(n: usize, s: usize, m: usize) -> BigRational {
    let free = n as i64 + 1 - 2 * (s - m) as i64;
    ratio(free, n as i64 - 1) * ratio(free - 1, n as i64 - 2)
}

/// Same event conditioned on the `m-1` closer pairs being placed already:
/// `(n-2s+3)(n-2s+2) / ((n-2m+1)(n-2m))`. The product of these factors
/// over `m = 1..=s-1` telescopes into `per_position_prob`.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn exclusion_pair_prob_conditional(n: usize, s: usize, m: usize) -> BigRational {
    let num = ratio(n as i64 - 2 * s as i64 + 3, n as i64 - 2 * m as i64 + 1);
    let num2 = ratio(n as i64 - 2 * s as i64 + 2, n as i64 - 2 * m as i64);
    num * num2
}

#[cfg_attr(not(test), allow(dead_code))]
fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Which exponent a probability bound was raised with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Per-position probability to the power `n`.
    Basic,
    /// Power `n - ⌊n/(s-1)⌋`; always at least as large as `Basic`.
    Tight,
    /// Blocklength-free limit `e^(-2(s-2)^2)`.
    Asymptotic,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Basic => "basic",
            BoundKind::Tight => "tight",
            BoundKind::Asymptotic => "asymptotic",
        }
    }
}

/// A lower bound on `P(spread >= s)` at blocklength `n`.
///
/// The natural-log field is the canonical value: for large `n` and `s` the
/// bound sits far below the smallest positive `f64`. The rational is
/// populated in exact mode (`n <=` [`EXACT_MODE_MAX_N`]).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub n: usize,
    pub s: usize,
    pub kind: BoundKind,
    /// `ln` of the bound; `-inf` when the bound is zero.
    pub value_log: f64,
    /// Exact rational, present only in exact mode.
    pub value_rational: Option<BigRational>,
}

impl BoundResult {
    /// The bound as a plain double; underflows to 0 below ~1e-308.
    pub fn value(&self) -> f64 {
        self.value_log.exp()
    }
}

/// Lower bound on `P(spread >= s)`: per-position probability raised to
/// the power `n`. Returns 1 for `s = 2` and 0 for `s` above the cap.
pub fn basic_lower_bound(n: usize, s: usize) -> BoundResult {
    powered_bound(n, s, BoundKind::Basic)
}

/// Tightened lower bound: exponent `n - ⌊n/(s-1)⌋` instead of `n`, since
/// every `(s-1)`-th position constraint is implied by its neighbours.
/// Dominates `basic_lower_bound` wherever both are defined. Like the
/// basic bound, it is only meaningful where a spread-`s` interleaver
/// exists (see the module note).
pub fn tight_lower_bound(n: usize, s: usize) -> BoundResult {
    powered_bound(n, s, BoundKind::Tight)
}

fn powered_bound(n: usize, s: usize, kind: BoundKind) -> BoundResult {
    assert!(n >= 2, "blocklength must be at least 2, got {n}");
    assert!(s >= 2, "spread target must be at least 2, got {s}");
    let exponent = match kind {
        BoundKind::Basic => n,
        BoundKind::Tight => n - n / (s - 1),
        BoundKind::Asymptotic => unreachable!("asymptotic bound is not a power"),
    };
    let exact = n <= EXACT_MODE_MAX_N;
    match per_position_prob(n, s) {
        Err(BoundsError::SpreadExceedsCap { .. }) => BoundResult {
            n,
            s,
            kind,
            value_log: f64::NEG_INFINITY,
            value_rational: exact.then(BigRational::zero),
        },
        Err(e) => unreachable!("preconditions checked above: {e}"),
        Ok(base) => BoundResult {
            n,
            s,
            kind,
            value_log: base.log_view() * exponent as f64,
            value_rational: exact.then(|| base.as_ratio().pow(exponent as i32)),
        },
    }
}

/// Lower bound on the number of interleavers with spread at least `s`:
/// `n! ·` [`tight_lower_bound`]. Log-space is canonical; the exact
/// rational accompanies it for `n <=` [`EXACT_MODE_MAX_N`].
#[derive(Debug, Clone, PartialEq)]
pub struct CountBound {
    pub n: usize,
    pub s: usize,
    /// `ln` of the bound; `-inf` when the bound is zero.
    pub value_log: f64,
    pub value_rational: Option<BigRational>,
}

impl CountBound {
    pub fn value(&self) -> f64 {
        self.value_log.exp()
    }
}

pub fn count_lower_bound(n: usize, s: usize) -> CountBound {
    let prob = tight_lower_bound(n, s);
    let ln_total = ln_factorial(n);
    let value_rational = prob
        .value_rational
        .map(|r| r * BigRational::from(BigInt::from(crate::exact::factorial(n))));
    CountBound {
        n,
        s,
        value_log: ln_total + prob.value_log,
        value_rational,
    }
}

/// Large-blocklength limit of the tightened bound: `e^(-2(s-2)^2)`.
pub fn asymptotic_lower_bound(s: usize) -> f64 {
    assert!(s >= 2, "spread target must be at least 2, got {s}");
    let d = (s - 2) as f64;
    (-2.0 * d * d).exp()
}
