//! Greedy climbs reach the same clocked and counter-clocked states from
//! every start, whatever order the moves are taken in.

use knotoid_clock::dynamics::{climb, clocked_state, counterclocked_state, removal_check, Extreme, MoveOrder};
use knotoid_clock::parse_kdf;
use knotoid_clock::state::enumerate_states;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = parse_kdf("kdf 1\nx 1 3 1 4 0\nx 2 7 5 8 4\nx 3 5 2 6 3\nx 4 1 6 2 7\n")?;
    let u = d.universe();
    let top = clocked_state(u)?;
    let bottom = counterclocked_state(u)?;
    println!("clocked {top}, counter-clocked {bottom}");
    for s in enumerate_states(u) {
        for seed in 0..5 {
            let up = climb(u, &s, Extreme::Clocked, MoveOrder::Shuffled(seed))?;
            let down = climb(u, &s, Extreme::CounterClocked, MoveOrder::Shuffled(seed))?;
            assert_eq!(up.state, top);
            assert_eq!(down.state, bottom);
        }
    }
    for c in 0..u.crossing_count() {
        println!("removing crossing {}: {:?}", d.crossings()[c].label, removal_check(u, &top, c)?.holds);
    }
    Ok(())
}
