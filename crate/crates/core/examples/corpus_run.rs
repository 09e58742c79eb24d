//! Runs every check over the bundled corpus and prints the report.

use std::path::Path;

use knotoid_clock::corpus::{load_corpus, run_corpus, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let corpus = load_corpus(&dir)?;
    let config = RunConfig { all_checks: true, ..RunConfig::default() };
    let report = run_corpus(&corpus, &config);
    print!("{}", report.render_text(false));
    if !report.passed {
        std::process::exit(1);
    }
    Ok(())
}
