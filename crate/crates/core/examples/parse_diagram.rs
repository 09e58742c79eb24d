//! Reads a KDF diagram and prints its faces, signs and kind.
//!
//! `cargo run --example parse_diagram [file.kdf]`

use knotoid_clock::polynomial::classify;
use knotoid_clock::{parse_kdf, to_kdf};

const FIGURE: &str = "kdf 1\nx 1 0 3 1 2\nx 2 3 2 4 1\nstar tail\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => FIGURE.to_string(),
    };
    let d = parse_kdf(&text)?;
    let u = d.universe();
    println!("{} crossings, {} arcs, {} regions", d.crossing_count(), d.arc_count(), u.region_count());
    println!("kind {:?}, writhe {}", classify(&d), d.writhe());
    for x in d.crossings() {
        println!("crossing {} slots {:?} sign {}", x.label, x.slots, x.sign());
    }
    for r in u.regions() {
        let star = if r.starred { " *" } else { "" };
        println!("region {}{star}: {} corner(s)", r.id, r.corners.len());
    }
    print!("{}", to_kdf(&d));
    Ok(())
}
