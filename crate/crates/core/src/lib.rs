//! Exact and probabilistic analysis of interleaver spread.
//!
//! An interleaver is a permutation `π` on `{0, …, N-1}`. Its *spread* is
//! the minimum over all pairs of distinct positions `i ≠ j` of
//! `|i-j|_N + |π(i)-π(j)|_N`, where `|a-b|_N = min(|a-b|, N-|a-b|)` is the
//! circular distance. Spread is at least 2 and at most `⌊√(2N)⌋`.
//!
//! The crate provides:
//!
//! - [`perm`] — validated permutations, the spread metric (quadratic
//!   reference scan and an `O(N·√N)` windowed scan), witnesses, and the
//!   permutation text format;
//! - [`exact`] — exact big-integer counts of interleavers with spread
//!   above 2, the exact probability as a reduced rational, and a
//!   brute-force enumeration oracle for small blocklengths;
//! - [`bounds`] — per-position probabilities, the basic and tightened
//!   lower bounds on `P(spread >= s)`, the count bound `N!·P`, and the
//!   asymptotic limit `e^(-2(s-2)^2)`;
//! - [`sampling`] — seeded, block-parallel Monte Carlo estimates with
//!   Wilson confidence intervals, and rejection search for high-spread
//!   interleavers;
//! - [`cli`] — the `interleaver-spread` binary: subcommands emitting
//!   CSV or JSON rows for every operation above.
//!
//! The `examples/` directory contains one runnable walkthrough per
//! capability; start with `spread_basics`.
//!
//! ```
//! use interleaver_spread::Permutation;
//!
//! let p: Permutation = "0 2 4 1 3".parse().unwrap();
//! assert_eq!(p.spread(), 3); // the cap ⌊√10⌋ for blocklength 5
//! ```

pub mod bounds;
pub mod cli;
pub mod exact;
mod math;
pub mod perm;
pub mod prob;
pub mod sampling;

pub use bounds::{
    asymptotic_lower_bound, basic_lower_bound, count_lower_bound, max_spread, per_position_prob,
    tight_lower_bound, BoundKind, BoundResult, BoundsError, CountBound,
};
pub use exact::{
    factorial, oracle_distribution, oracle_distribution_extended, spread_eq2_count,
    spread_gt2_count, spread_gt2_limit, spread_gt2_probability, CountError, SpreadDistribution,
};
pub use perm::{circular_distance, Permutation, PermutationError};
pub use prob::{ExactProb, FloatMode};
pub use sampling::{
    empirical_distribution, estimate_spread_prob, random_permutation, search_spread,
    wilson_interval, SampleReport, SamplingError, SearchResult,
};
