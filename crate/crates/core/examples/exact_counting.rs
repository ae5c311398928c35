//! Exact counts of interleavers by spread: the closed-form count of
//! spread > 2 permutations, its probability, the e^-2 limit, and the
//! brute-force enumeration oracle that everything is checked against.
//!
//! ```bash
//! cargo run --release -p interleaver-spread --example exact_counting
//! ```

use interleaver_spread::{
    factorial, oracle_distribution, spread_gt2_count, spread_gt2_limit, spread_gt2_probability,
};

fn main() {
    println!("n    n!        spread>2   spread=2   P(spread>2)");
    for n in 2..=9usize {
        let above = spread_gt2_count(n).unwrap();
        let total = factorial(n);
        let p = spread_gt2_probability(n).unwrap();
        println!(
            "{n:<4} {total:<9} {above:<10} {:<10} {p} = {:.6}",
            total.clone() - above.clone(),
            p.float_view()
        );
    }

    // the enumeration oracle recomputes the same numbers the slow way
    println!("\nenumeration oracle (exhaustive over n! permutations):");
    for n in [5usize, 7] {
        let d = oracle_distribution(n).unwrap();
        println!("  n={n}: {:?}", d.counts());
        assert_eq!(
            u64::try_from(spread_gt2_count(n).unwrap()).unwrap(),
            d.count_at_least(3)
        );
    }

    // the probability converges to e^-2 as the blocklength grows
    let limit = spread_gt2_limit();
    println!("\nlimit = e^-2 = {limit:.10}");
    println!(
        "so about {:.2}% of all interleavers keep spread 2,",
        (1.0 - limit) * 100.0
    );
    println!("and roughly one in e^2 = {:.2} clears it.\n", 1.0 / limit);

    println!("n      P(spread>2)   |P - e^-2|");
    for n in [16usize, 64, 100, 256, 1024] {
        let p = spread_gt2_probability(n).unwrap().float_view();
        println!("{n:<6} {p:.10}  {:.2e}", (p - limit).abs());
    }
}
