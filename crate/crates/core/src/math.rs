//! Small numeric helpers shared across the crate.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Integer square root `⌊√x⌋`, exact for every `u64`.
///
/// A floating-point guess seeds the result; the integer adjustment loops
/// below make it exact even where `f64` cannot represent `x`.
pub(crate) fn isqrt_u64(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).is_none_or(|rr| rr > x) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|rr| rr <= x) {
        r += 1;
    }
    r
}

/// Natural logarithm of a positive big integer.
///
/// Takes the top 53 bits as an exact `f64` and accounts for the discarded
/// low bits with a power-of-two offset; absolute error stays near 1 ulp of
/// the result. Returns `-inf` for zero so that `exp` round-trips to 0.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return (x.to_u64().expect("fits in u64") as f64).ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().expect("53 bits fit in u64") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln(n!)` by compensated summation of `ln k`, k = 2..=n.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for k in 2..=n {
        let term = (k as f64).ln() - carry;
        let next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    sum
}
