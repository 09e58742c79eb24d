//! Turns each clock state into its trail and rooted spanning tree, then
//! recovers the state from the trail.

use knotoid_clock::parse_kdf;
use knotoid_clock::state::enumerate_states;
use knotoid_clock::trail::{state_to_trail, trail_to_state, trail_to_tree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Trefoil cut open next to a crossing.
    let d = parse_kdf("kdf 1\nx 1 1 5 2 4\nx 2 3 1 4 0\nx 3 5 3 6 2\n")?;
    let u = d.universe();
    for s in enumerate_states(u) {
        let t = state_to_trail(u, &s)?;
        let tree = trail_to_tree(u, &t)?;
        let edges: Vec<String> = tree.edges.iter().map(|e| format!("{}->{}", e.child, e.parent)).collect();
        println!("state {s} trail {} tree rooted at {}: {}", t.fingerprint(), tree.root, edges.join(" "));
        assert_eq!(trail_to_state(u, &t)?, s);
    }
    Ok(())
}
