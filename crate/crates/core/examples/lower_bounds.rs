//! Lower bounds on P(spread >= s): the per-position probability, the
//! basic and tightened powers, the count bound n!·P, and the asymptotic
//! limit e^(-2(s-2)^2).
//!
//! ```bash
//! cargo run --release -p interleaver-spread --example lower_bounds
//! ```

use interleaver_spread::{
    asymptotic_lower_bound, basic_lower_bound, count_lower_bound, max_spread, per_position_prob,
    spread_gt2_probability, tight_lower_bound,
};

fn main() {
    // the closed-form probability that one position satisfies the
    // spread-s condition, exact
    println!("per-position probabilities:");
    for (n, s) in [(5usize, 3usize), (9, 3), (64, 4)] {
        println!("  n={n:<3} s={s}: {}", per_position_prob(n, s).unwrap());
    }

    // powering it up: the tight exponent n - floor(n/(s-1)) beats the
    // basic exponent n
    println!(
        "\nn=5, s=3: basic = {}, tight = {}",
        basic_lower_bound(5, 3).value_rational.unwrap(),
        tight_lower_bound(5, 3).value_rational.unwrap()
    );

    println!("\nbounds vs the exact probability for s = 3:");
    println!("n      basic         tight         exact");
    for n in [8usize, 16, 64, 256, 1024] {
        println!(
            "{n:<6} {:<13.6e} {:<13.6e} {:.6e}",
            basic_lower_bound(n, 3).value(),
            tight_lower_bound(n, 3).value(),
            spread_gt2_probability(n).unwrap().float_view()
        );
    }

    // the bounds flatten to e^(-2(s-2)^2) as n grows
    println!("\ntight bound at n = 4096 vs the asymptotic limit:");
    for s in 3..=6usize {
        let b = tight_lower_bound(4096, s);
        println!(
            "  s={s}: {:.6e} vs {:.6e}  (log10 = {:.3})",
            b.value(),
            asymptotic_lower_bound(s),
            b.value_log / std::f64::consts::LN_10
        );
    }

    // multiplying by n! bounds the number of such interleavers from below;
    // far beyond double range, so log-space is the canonical form
    println!("\nguaranteed counts of spread >= s interleavers at n = 1024:");
    for s in [3usize, 4, 5] {
        let c = count_lower_bound(1024, s);
        println!(
            "  s={s}: at least 10^{:.1}",
            c.value_log / std::f64::consts::LN_10
        );
    }

    // above the cap floor(sqrt(2n)) nothing exists and the bound is zero
    let s_impossible = max_spread(5) + 1;
    println!(
        "\nn=5, s={s_impossible} is above the cap: bound = {}",
        tight_lower_bound(5, s_impossible).value()
    );
}
