//! Evaluates the polynomial as a state sum and as a permanent, with the
//! default table, all ones and a random table.

use knotoid_clock::polynomial::{mock_alexander, permanent_polynomial};
use knotoid_clock::{parse_kdf, WeightTable};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = parse_kdf("kdf 1\nx 1 0 3 1 2\nx 2 3 2 4 1\n")?;
    let mut rng = StdRng::seed_from_u64(7);
    let tables = [
        ("default", WeightTable::default()),
        ("all ones", WeightTable::all_ones()),
        ("random", WeightTable::random(&mut rng)),
    ];
    for (name, w) in tables {
        let sum = mock_alexander(&d, &w);
        let per = permanent_polynomial(&d, &w);
        assert_eq!(sum, per);
        println!("{name}: {sum}");
    }
    let m = d.mirror()?;
    println!("mirror: {}", mock_alexander(&m, &WeightTable::default()));
    Ok(())
}
