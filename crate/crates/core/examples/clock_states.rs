//! Enumerates clock states and checks the count against the permanent of
//! the corner incidence matrix.

use knotoid_clock::parse_kdf;
use knotoid_clock::state::{count_states, enumerate_states, incidence_matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = parse_kdf("kdf 1\nx 1 0 3 1 2\nx 2 3 2 4 1\n")?;
    let u = d.universe();
    println!("incidence {:?}", incidence_matrix(u));
    let states = enumerate_states(u);
    for s in &states {
        let markers: Vec<String> = s
            .markers(u)
            .iter()
            .map(|m| format!("region {} -> crossing {} corner {}", m.region, d.crossings()[m.crossing].label, m.corner))
            .collect();
        println!("{s}: {}", markers.join(", "));
    }
    assert_eq!(states.len(), count_states(u));
    println!("{} states", states.len());
    Ok(())
}
