use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use knotoid_clock::corpus::{load_corpus, run_corpus, RunConfig};
use knotoid_clock::dynamics::{
    clocked_state, counterclocked_state, hasse_dot, state_graph, verify_lattice, DEFAULT_STATE_CAP,
};
use knotoid_clock::export::{diagram_record, state_record, trail_record};
use knotoid_clock::polynomial::{classify, mock_alexander, permanent_polynomial, Classification};
use knotoid_clock::state::{count_states, enumerate_states_capped};
use knotoid_clock::{parse_kdf, Error, LinkoidDiagram, WeightTable};

const CAP_VAR: &str = "KNOTOID_STATE_CAP";

#[derive(Parser)]
#[command(name = "knotoid-clock", version, about = "Clock states and Mock Alexander polynomials of knotoid diagrams")]
struct Cli {
    /// State cap for enumeration; overrides KNOTOID_STATE_CAP.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a KDF file and report its regions.
    Validate {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Count, list, or find the extremal clock states.
    States {
        path: PathBuf,
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        extremal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check that the clock-move order is a lattice.
    Lattice {
        path: PathBuf,
        /// Write the Hasse diagram here.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Mock Alexander polynomial.
    Poly {
        path: PathBuf,
        /// A file of `weights` lines, or `default`. The diagram's own table is used otherwise.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Sum)]
        method: Method,
        #[arg(long)]
        json: bool,
    },
    /// Trails and rooted trees of every state.
    Trails {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Knot-type or proper.
    Classify {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the checks over a corpus directory.
    Corpus {
        dir: PathBuf,
        #[arg(long)]
        all_checks: bool,
        #[arg(long)]
        json: bool,
        /// List passing checks too.
        #[arg(long)]
        verbose: bool,
        /// Add per-entry run times (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Sum,
    Permanent,
    Both,
}

enum Failure {
    Check(String),
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::TheoryDiscrepancy(_) => Failure::Check(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<LinkoidDiagram, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_kdf(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn state_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{CAP_VAR} is not a number: {v:?}"))),
        Err(_) => Ok(DEFAULT_STATE_CAP),
    }
}

fn kind_name(k: Classification) -> &'static str {
    match k {
        Classification::KnotType => "knot-type",
        Classification::Proper => "proper",
    }
}

fn validate(path: &Path, json: bool) -> Outcome {
    let d = load(path)?;
    if json {
        print_json(&diagram_record(&d));
        return Ok(());
    }
    let u = d.universe();
    println!("valid");
    println!("crossings {}", d.crossing_count());
    println!("arcs {}", d.arc_count());
    println!("closed components {}", d.loops().len());
    println!("regions {} (crossings + 1)", u.region_count());
    println!("star region {}", u.star());
    println!("kind {}", kind_name(classify(&d)));
    Ok(())
}

#[derive(Serialize)]
struct StatesJson {
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    states: Option<Vec<knotoid_clock::export::StateRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clocked: Option<knotoid_clock::export::StateRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterclocked: Option<knotoid_clock::export::StateRecord>,
}

fn states(path: &Path, enumerate: bool, extremal: bool, json: bool, cap: usize) -> Outcome {
    let d = load(path)?;
    let u = d.universe();
    let list = if enumerate { Some(enumerate_states_capped(u, cap)?) } else { None };
    let count = list.as_ref().map_or_else(|| count_states(u), Vec::len);
    let extremes = if extremal { Some((clocked_state(u)?, counterclocked_state(u)?)) } else { None };
    if json {
        print_json(&StatesJson {
            count,
            states: list.as_ref().map(|l| l.iter().map(|s| state_record(&d, s)).collect()),
            clocked: extremes.as_ref().map(|(c, _)| state_record(&d, c)),
            counterclocked: extremes.as_ref().map(|(_, c)| state_record(&d, c)),
        });
        return Ok(());
    }
    println!("count {count}");
    for s in list.iter().flatten() {
        let markers: Vec<String> = s
            .markers(u)
            .iter()
            .map(|m| format!("r{}@{}:{}", m.region, d.crossings()[m.crossing].label, m.corner))
            .collect();
        println!("{} {}", s.fingerprint(), markers.join(" "));
    }
    if let Some((c, cc)) = extremes {
        println!("clocked {c}");
        println!("counterclocked {cc}");
    }
    Ok(())
}

fn lattice(path: &Path, dot: Option<&Path>, json: bool, cap: usize) -> Outcome {
    let d = load(path)?;
    let g = state_graph(d.universe(), cap)?;
    let r = verify_lattice(&g);
    if let Some(out) = dot {
        std::fs::write(out, hasse_dot(&g, &r))
            .map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    }
    if json {
        print_json(&r);
    } else {
        let id = |i: Option<usize>| i.map_or("-".to_string(), |i| format!("{i} ({})", g.states[i]));
        println!("states {}", r.states);
        println!("clockwise edges {}", r.clockwise_edges);
        println!("acyclic {}", r.acyclic);
        println!("connected {}", r.connected);
        println!("top {}", id(r.top));
        println!("bottom {}", id(r.bottom));
        println!("reachable from top {}", r.all_reachable_from_top);
        println!("violations {}", r.violations.len());
        for v in &r.violations {
            println!("  {} {:?}", v.kind, v.witness);
        }
    }
    if r.is_lattice() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} lattice violation(s)", r.violations.len())))
    }
}

#[derive(Serialize)]
struct PolyJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    sum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    permanent: Option<String>,
}

fn poly(path: &Path, weights: Option<&str>, method: Method, json: bool) -> Outcome {
    let d = load(path)?;
    let table = match weights {
        Some("default") => WeightTable::default(),
        Some(file) => {
            let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{file}: {e}")))?;
            WeightTable::parse(&text).map_err(|e| Failure::Input(format!("{file}: {e}")))?
        }
        None => d.weights().cloned().unwrap_or_default(),
    };
    let sum = (method != Method::Permanent).then(|| mock_alexander(&d, &table));
    let perm = (method != Method::Sum).then(|| permanent_polynomial(&d, &table));
    if json {
        print_json(&PolyJson {
            sum: sum.as_ref().map(ToString::to_string),
            permanent: perm.as_ref().map(ToString::to_string),
        });
    } else {
        match (&sum, &perm) {
            (Some(s), Some(p)) => {
                println!("sum {s}");
                println!("permanent {p}");
            }
            (Some(p), None) | (None, Some(p)) => println!("{p}"),
            (None, None) => {}
        }
    }
    match (sum, perm) {
        (Some(s), Some(p)) if s != p => Err(Failure::Check(format!("state sum {s} differs from permanent {p}"))),
        _ => Ok(()),
    }
}

fn trails(path: &Path, json: bool, cap: usize) -> Outcome {
    let d = load(path)?;
    let list = enumerate_states_capped(d.universe(), cap)?;
    let records = list.iter().map(|s| trail_record(&d, s)).collect::<Result<Vec<_>, _>>()?;
    if json {
        print_json(&records);
        return Ok(());
    }
    for r in &records {
        let walk: Vec<String> = r
            .walk
            .iter()
            .map(|w| format!("{}{}", w.arc, if w.forward { "" } else { "'" }))
            .collect();
        let tree: Vec<String> = r
            .tree
            .edges
            .iter()
            .map(|e| format!("{}->{}@{}", e.child, e.parent, e.crossing))
            .collect();
        println!("{} smoothing {} walk {} tree {}", r.state, r.fingerprint, walk.join(" "), tree.join(" "));
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyJson {
    kind: Classification,
    tail_region: usize,
    head_region: usize,
}

fn classify_cmd(path: &Path, json: bool) -> Outcome {
    let d = load(path)?;
    let u = d.universe();
    let kind = classify(&d);
    if json {
        print_json(&ClassifyJson { kind, tail_region: u.tail_region(), head_region: u.head_region() });
    } else {
        println!("{} (tail in region {}, head in region {})", kind_name(kind), u.tail_region(), u.head_region());
    }
    Ok(())
}

fn corpus(dir: &Path, config: RunConfig, json: bool, verbose: bool) -> Outcome {
    let corpus = load_corpus(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let report = run_corpus(&corpus, &config);
    if json {
        print_json(&report);
    } else {
        print!("{}", report.render_text(verbose));
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} failed check(s)", report.failed_checks)))
    }
}

fn run(cli: Cli) -> Outcome {
    let cap = state_cap(cli.cap)?;
    match cli.command {
        Command::Validate { path, json } => validate(&path, json),
        Command::States { path, enumerate, count: _, extremal, json } => states(&path, enumerate, extremal, json, cap),
        Command::Lattice { path, dot, json } => lattice(&path, dot.as_deref(), json, cap),
        Command::Poly { path, weights, method, json } => poly(&path, weights.as_deref(), method, json),
        Command::Trails { path, json } => trails(&path, json, cap),
        Command::Classify { path, json } => classify_cmd(&path, json),
        Command::Corpus { dir, all_checks, json, verbose, timing, seed } => {
            let config = RunConfig { all_checks, cap, timing, seed, ..RunConfig::default() };
            corpus(&dir, config, json, verbose)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("cap: {msg}");
            ExitCode::from(3)
        }
    }
}
