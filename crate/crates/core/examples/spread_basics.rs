//! Permutations and the spread metric: construction, parsing, witnesses,
//! and the symmetries that leave spread unchanged.
//!
//! ```bash
//! cargo run --release -p interleaver-spread --example spread_basics
//! ```

use interleaver_spread::{circular_distance, max_spread, Permutation};

fn main() {
    // circular distance treats 0 and n-1 as neighbors
    println!("|0-9|_10  = {}", circular_distance(0, 9, 10).unwrap());
    println!("|3-7|_10  = {}", circular_distance(3, 7, 10).unwrap());

    // the identity maps adjacent positions to adjacent values: spread 2,
    // the minimum any permutation can have
    let id = Permutation::identity(8).unwrap();
    println!("\nidentity n=8: spread = {}", id.spread());

    // this blocklength-5 interleaver reaches the cap floor(sqrt(2n)) = 3
    let p: Permutation = "0 2 4 1 3".parse().unwrap();
    let (s, (i, j)) = p.spread_witness();
    println!(
        "{p}: spread = {s} (cap {}), realized by positions ({i}, {j})",
        max_spread(p.blocklength())
    );

    // the text format accepts comments and arbitrary whitespace
    let parsed = Permutation::parse_text("# interleaver\n4 1 6 3\n0 5 2 7\n").unwrap();
    println!("\nparsed {} symbols: {parsed}", parsed.blocklength());

    // spread is blind to rotations, reflections and inversion
    let s = parsed.spread();
    println!("spread                 = {s}");
    println!(
        "after position shift   = {}",
        parsed.shift_positions(3).spread()
    );
    println!(
        "after value shift      = {}",
        parsed.shift_values(5).spread()
    );
    println!(
        "after reflection       = {}",
        parsed.reflect_positions().spread()
    );
    println!("of the inverse         = {}", parsed.inverse().spread());

    // the windowed scan gives the same value in O(n sqrt n) instead of O(n^2)
    assert_eq!(parsed.spread(), parsed.spread_windowed());

    // validation names what went wrong
    println!("\nvalidation errors:");
    for raw in [vec![0, 0, 1], vec![5], vec![0, 3, 1]] {
        println!(
            "  {raw:?} -> {}",
            Permutation::new(raw.clone()).unwrap_err()
        );
    }
}
