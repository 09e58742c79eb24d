//! Samples random knotoid diagrams and tabulates their state counts
//! against two spanning-tree counts.

use knotoid_clock::generate::{all_knotoid_diagrams, random_knotoid};
use knotoid_clock::polynomial::{count_crossing_realizable_trees, count_states_matrixtree};
use knotoid_clock::state::count_states;
use knotoid_clock::to_kdf;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    for n in 1..=3 {
        println!("{} diagrams with {n} crossing(s)", all_knotoid_diagrams(n).len());
    }
    let mut rng = StdRng::seed_from_u64(1);
    for n in [4, 5, 6] {
        let Some(d) = random_knotoid(&mut rng, n, 1000) else { continue };
        let u = d.universe();
        println!(
            "n={n} states {} matrix-tree {} realizable {:?}",
            count_states(u),
            count_states_matrixtree(u),
            count_crossing_realizable_trees(u)
        );
        print!("{}", to_kdf(&d));
    }
}
