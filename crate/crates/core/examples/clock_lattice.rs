//! Builds the clock-move graph, verifies it is a lattice and writes its
//! Hasse diagram as DOT to stdout.

use knotoid_clock::dynamics::{hasse_dot, state_graph, verify_lattice, DEFAULT_STATE_CAP};
use knotoid_clock::parse_kdf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = parse_kdf("kdf 1\nx 1 1 5 2 4\nx 2 3 1 4 0\nx 3 5 3 6 2\n")?;
    let g = state_graph(d.universe(), DEFAULT_STATE_CAP)?;
    let report = verify_lattice(&g);
    eprintln!("{} states, {} clockwise moves, lattice {}", g.len(), g.edges.len(), report.is_lattice());
    for e in &g.edges {
        eprintln!("  {} -> {} by {}", e.from, e.to, e.mv);
    }
    print!("{}", hasse_dot(&g, &report));
    Ok(())
}
