//! Rejection search: draw uniform interleavers until one reaches the
//! target spread. The expected number of draws grows like e^(2(s-2)^2),
//! so spread 3 costs ~8 draws while spread 5 already costs ~10^8.
//!
//! ```bash
//! cargo run --release -p interleaver-spread --example high_spread_search
//! ```

use interleaver_spread::{asymptotic_lower_bound, max_spread, search_spread};

fn main() {
    let n = 1024usize;
    println!("blocklength {n}, spread cap {}", max_spread(n));

    // spread 3: about one draw in e^2 succeeds
    let mut attempts = Vec::new();
    for seed in 0..200u64 {
        let r = search_spread(n, 3, seed, 100_000).unwrap();
        assert!(r.found.is_some());
        attempts.push(r.attempts);
    }
    let mean = attempts.iter().sum::<u64>() as f64 / attempts.len() as f64;
    println!(
        "\ns=3: mean attempts over {} searches = {mean:.2} (predicted ~{:.2})",
        attempts.len(),
        1.0 / asymptotic_lower_bound(3)
    );

    // spread 4: success probability near e^-8, a few thousand draws
    let r = search_spread(n, 4, 12345, 1_000_000).unwrap();
    let p = r.found.expect("s = 4 is reachable in a million draws");
    println!(
        "s=4: found after {} attempts (predicted ~{:.0}); spread checks out at {}",
        r.attempts,
        1.0 / asymptotic_lower_bound(4),
        p.spread_windowed()
    );

    // the found permutation serializes in the text format understood by
    // the `spread` subcommand
    let line = p.to_string();
    println!(
        "\nfirst 60 chars of the found interleaver:\n{}...",
        &line[..60]
    );

    // an impossible target is refused outright
    let err = search_spread(9, 5, 0, 10).unwrap_err();
    println!("\nsearch at n=9, s=5 -> {err}");

    // an exhausted budget reports rather than spins forever
    let r = search_spread(n, 6, 7, 1000).unwrap();
    assert!(r.found.is_none());
    println!("s=6 with a 1000-attempt budget -> exhausted (would need ~e^32 draws)");
}
