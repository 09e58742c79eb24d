//! Corpus manifests and the checks run over them.
//!
//! A corpus is a directory of KDF files plus `manifest.toml`, whose
//! `[[entry]]` tables record the values each diagram must produce. Without a
//! manifest every `*.kdf` file in the directory is run with no expected
//! values. Reports are ordered by entry name and carry no timing unless asked
//! for, so two runs over the same corpus print the same bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::diagram::{LinkoidDiagram, StarPlacement};
use crate::dynamics::{
    clocked_state, climb, counterclocked_state, factorize_exchange, removal_check, state_graph,
    verify_lattice, Extreme, MoveOrder, DEFAULT_STATE_CAP,
};
use crate::error::{Error, Result};
use crate::kdf::parse_kdf;
use crate::laurent::LaurentPoly;
use crate::moves::{apply_move, legal_moves, Sense};
use crate::polynomial::{
    classify, count_crossing_realizable_trees, count_states_matrixtree, mock_alexander,
    permanent_polynomial, Classification, WeightedIncidenceMatrix,
};
use crate::state::{enumerate_states_capped, ClockState};
use crate::trail::{
    apply_resmoothing, classify_exchange, exchange_diff, state_to_trail, trail_to_state,
    trail_to_tree, ExchangeKind, Smoothed, Trail,
};
use crate::weights::WeightTable;

pub const MANIFEST: &str = "manifest.toml";

/// Where an entry's expected values come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A value printed in the literature.
    Published,
    /// Worked out by hand or by an independent oracle.
    Derived,
    /// Forced by the definitions.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub file: String,
    pub provenance: Option<Provenance>,
    #[serde(default)]
    pub note: String,
    /// Entries sharing a class must have equal polynomials.
    pub class: Option<String>,
    pub kind: Option<Classification>,
    pub states: Option<usize>,
    /// One `+` or `-` per crossing.
    pub signs: Option<String>,
    pub polynomial: Option<String>,
    /// Fingerprints of the extremal states.
    pub clocked: Option<String>,
    pub counterclocked: Option<String>,
}

impl CorpusEntry {
    fn has_expectations(&self) -> bool {
        self.kind.is_some()
            || self.states.is_some()
            || self.signs.is_some()
            || self.polynomial.is_some()
            || self.clocked.is_some()
            || self.counterclocked.is_some()
    }

    fn bare(name: String, file: String) -> Self {
        CorpusEntry {
            name,
            file,
            provenance: None,
            note: String::new(),
            class: None,
            kind: None,
            states: None,
            signs: None,
            polynomial: None,
            clocked: None,
            counterclocked: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    #[serde(default)]
    entry: Vec<CorpusEntry>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub dir: PathBuf,
    /// Sorted by name.
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn path_of(&self, entry: &CorpusEntry) -> PathBuf {
        self.dir.join(&entry.file)
    }

    /// Reads and parses the KDF file of an entry.
    pub fn diagram(&self, entry: &CorpusEntry) -> Result<LinkoidDiagram> {
        let text = std::fs::read_to_string(self.path_of(entry))?;
        Ok(parse_kdf(&text)?.with_name(entry.name.clone()))
    }
}

/// Loads the manifest of `dir`, or lists its KDF files when there is none.
pub fn load_corpus(dir: &Path) -> Result<Corpus> {
    let manifest = dir.join(MANIFEST);
    let mut entries = if manifest.exists() {
        let text = std::fs::read_to_string(&manifest)?;
        let m: Manifest = toml::from_str(&text).map_err(|e| Error::Corpus(e.to_string()))?;
        m.entry
    } else {
        let mut found = Vec::new();
        for item in std::fs::read_dir(dir)? {
            let path = item?.path();
            if path.extension().is_some_and(|e| e == "kdf") {
                if let (Some(stem), Some(file)) = (path.file_stem(), path.file_name()) {
                    found.push(CorpusEntry::bare(
                        stem.to_string_lossy().into_owned(),
                        file.to_string_lossy().into_owned(),
                    ));
                }
            }
        }
        found
    };
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    for pair in entries.windows(2) {
        if pair[0].name == pair[1].name {
            return Err(Error::Corpus(format!("entry {:?} appears twice", pair[0].name)));
        }
    }
    if let Some(e) = entries.iter().find(|e| e.has_expectations() && e.provenance.is_none()) {
        return Err(Error::Corpus(format!(
            "entry {:?} records expected values without a provenance",
            e.name
        )));
    }
    Ok(Corpus { dir: dir.to_path_buf(), entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Run the structural suites as well as the expected-value checks.
    pub all_checks: bool,
    pub cap: usize,
    /// Shuffled move orders tried by the greedy check, per start state.
    pub seeds: u64,
    /// Random weight tables for the dual polynomial check.
    pub random_tables: usize,
    /// Base seed for move orders and random tables.
    pub seed: u64,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            all_checks: false,
            cap: DEFAULT_STATE_CAP,
            seeds: 20,
            random_tables: 10,
            seed: 0,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Spanning-tree counts next to the state count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeCounts {
    pub states: usize,
    /// Kirchhoff count on the edge-dual graph.
    #[serde(serialize_with = "as_decimal")]
    pub matrix_tree: BigInt,
    /// Smoothing choices whose channels form a spanning tree of the regions.
    pub crossing_realizable: Option<u64>,
    pub matrix_tree_agrees: bool,
}

fn as_decimal<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub provenance: Option<Provenance>,
    pub class: Option<String>,
    pub star: Option<StarPlacement>,
    pub states: Option<usize>,
    pub polynomial: Option<String>,
    pub tree_counts: Option<TreeCounts>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: String,
    pub members: Vec<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub entries: Vec<EntryReport>,
    pub classes: Vec<ClassReport>,
    pub failed_checks: usize,
    pub passed: bool,
}

impl RunReport {
    pub fn entry(&self, name: &str) -> Option<&EntryReport> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// One line per entry and class; failing checks are listed under their
    /// entry, and every check when `verbose` is set.
    pub fn render_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = if e.passed() { "ok  " } else { "FAIL" };
            let _ = write!(out, "{status} {} ({} checks", e.name, e.checks.len());
            if let Some(ms) = e.millis {
                let _ = write!(out, ", {ms} ms");
            }
            out.push_str(")\n");
            for c in e.checks.iter().filter(|c| verbose || !c.passed) {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                let _ = write!(out, "  {mark} {}", c.check);
                if !c.detail.is_empty() {
                    let _ = write!(out, ": {}", c.detail);
                }
                out.push('\n');
            }
        }
        for c in &self.classes {
            let status = if c.passed { "ok  " } else { "FAIL" };
            let _ = write!(out, "{status} class {} [{}]", c.class, c.members.join(", "));
            if !c.detail.is_empty() {
                let _ = write!(out, ": {}", c.detail);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} entries, {} classes, {} failed check(s)",
            self.entries.len(),
            self.classes.len(),
            self.failed_checks
        );
        out
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn record(&mut self, check: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = match outcome {
            Ok(r) => r,
            Err(e) => (false, e.to_string()),
        };
        self.0.push(CheckResult { check: check.into(), passed, detail });
    }
}

fn expect<T: PartialEq + std::fmt::Display>(expected: &T, got: &T) -> (bool, String) {
    if expected == got {
        (true, String::new())
    } else {
        (false, format!("expected {expected}, got {got}"))
    }
}

/// Runs every enabled check on one entry.
pub fn run_entry(corpus: &Corpus, entry: &CorpusEntry, config: &RunConfig) -> EntryReport {
    let started = Instant::now();
    let mut checks = Checks(Vec::new());
    let mut report = EntryReport {
        name: entry.name.clone(),
        provenance: entry.provenance,
        class: entry.class.clone(),
        star: None,
        states: None,
        polynomial: None,
        tree_counts: None,
        checks: Vec::new(),
        millis: None,
    };
    let d = match corpus.diagram(entry) {
        Ok(d) => {
            checks.record("parse", Ok((true, String::new())));
            d
        }
        Err(e) => {
            checks.record("parse", Err(e));
            report.checks = checks.0;
            return report;
        }
    };
    report.star = Some(d.star_placement());
    run_diagram(&d, entry, config, &mut checks, &mut report);
    report.checks = checks.0;
    if config.timing {
        report.millis = Some(started.elapsed().as_millis());
    }
    report
}

fn run_diagram(
    d: &LinkoidDiagram,
    entry: &CorpusEntry,
    config: &RunConfig,
    checks: &mut Checks,
    report: &mut EntryReport,
) {
    let u = d.universe();
    let w = WeightTable::default();

    if let Some(signs) = &entry.signs {
        let got: String = d.signs().iter().map(|s| s.to_string()).collect();
        checks.record("signs", Ok(expect(signs, &got)));
    }
    if let Some(kind) = entry.kind {
        let got = classify(d);
        let name = |k| match k {
            Classification::KnotType => "knot_type",
            Classification::Proper => "proper",
        };
        checks.record("kind", Ok(expect(&name(kind), &name(got))));
    }

    let states = match enumerate_states_capped(u, config.cap) {
        Ok(s) => s,
        Err(e) => {
            checks.record("state-count", Err(e));
            return;
        }
    };
    report.states = Some(states.len());
    if let Some(n) = entry.states {
        checks.record("state-count", Ok(expect(&n, &states.len())));
    }
    checks.record("state-count-permanent", Ok(permanent_count(d, states.len())));

    let clocked = clocked_state(u);
    let counter = counterclocked_state(u);
    if let Some(fp) = &entry.clocked {
        checks.record("clocked", clocked.as_ref().map(|s| expect(fp, &s.fingerprint())).map_err(clone_err));
    }
    if let Some(fp) = &entry.counterclocked {
        checks.record(
            "counterclocked",
            counter.as_ref().map(|s| expect(fp, &s.fingerprint())).map_err(clone_err),
        );
    }

    let poly = mock_alexander(d, &w);
    report.polynomial = Some(poly.to_string());
    if let Some(text) = &entry.polynomial {
        checks.record(
            "polynomial",
            text.parse::<LaurentPoly>().map(|expected| expect(&expected, &poly)),
        );
    }
    checks.record("dual-polynomial", Ok(expect(&permanent_polynomial(d, &w), &poly)));
    let ones = mock_alexander(d, &WeightTable::all_ones());
    checks.record("all-ones", Ok(expect(&LaurentPoly::constant(states.len() as i64), &ones)));

    let realizable = count_crossing_realizable_trees(u);
    let matrix_tree = count_states_matrixtree(u);
    report.tree_counts = Some(TreeCounts {
        states: states.len(),
        matrix_tree_agrees: matrix_tree == BigInt::from(states.len()),
        matrix_tree,
        crossing_realizable: realizable,
    });
    if let Some(r) = realizable {
        checks.record("realizable-trees", Ok(expect(&(states.len() as u64), &r)));
    }

    if !config.all_checks {
        return;
    }
    let (Ok(clocked), Ok(counter)) = (clocked, counter) else {
        checks.record("extremes", Err(Error::TheoryDiscrepancy("no extremal state".into())));
        return;
    };
    checks.record("random-tables", random_tables(d, config));
    let trails = bijection(d, &states, checks);
    checks.record("greedy", greedy(d, &states, &clocked, &counter, config));
    checks.record("moves", move_checks(d, &states, &clocked, &counter));
    match state_graph(u, config.cap) {
        Ok(g) => {
            let r = verify_lattice(&g);
            let ends = r.top == g.id(&clocked) && r.bottom == g.id(&counter);
            let detail = r
                .violations
                .iter()
                .take(3)
                .map(|v| format!("{} {:?}", v.kind, v.witness))
                .collect::<Vec<_>>()
                .join("; ");
            checks.record("lattice", Ok((r.is_lattice() && r.acyclic && ends, detail)));
            checks.record(
                "reachability",
                Ok((r.all_reachable_from_top && r.connected, String::new())),
            );
        }
        Err(e) => checks.record("lattice", Err(e)),
    }
    if let Some(trails) = trails {
        checks.record("exchange-parity", exchange_parity(d, &trails));
        checks.record("factorization", factorization(d, &states, &trails));
    }
    checks.record("removal", removal(d, &clocked));
}

fn clone_err(e: &Error) -> Error {
    Error::TheoryDiscrepancy(e.to_string())
}

fn permanent_count(d: &LinkoidDiagram, count: usize) -> (bool, String) {
    let perm = WeightedIncidenceMatrix::new(d, &WeightTable::all_ones()).permanent();
    expect(&LaurentPoly::constant(count as i64), &perm)
}

fn random_tables(d: &LinkoidDiagram, config: &RunConfig) -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(config.seed);
    for i in 0..config.random_tables {
        let w = WeightTable::random(&mut rng);
        let (sum, perm) = (mock_alexander(d, &w), permanent_polynomial(d, &w));
        if sum != perm {
            return Ok((false, format!("table {i}: state sum {sum}, permanent {perm}")));
        }
    }
    Ok((true, String::new()))
}

fn bijection(d: &LinkoidDiagram, states: &[ClockState], checks: &mut Checks) -> Option<Vec<Trail>> {
    let u = d.universe();
    let run = || -> Result<(Vec<Trail>, (bool, String))> {
        let mut trails = Vec::with_capacity(states.len());
        for s in states {
            let t = state_to_trail(u, s)?;
            if t.walk().len() != u.edge_count() {
                return Ok((trails, (false, format!("trail of {s} walks {} edges", t.walk().len()))));
            }
            let tree = trail_to_tree(u, &t)?;
            if tree.edges.len() != u.crossing_count() {
                return Ok((trails, (false, format!("tree of {s} has {} edges", tree.edges.len()))));
            }
            let back = trail_to_state(u, &t)?;
            if &back != s {
                return Ok((trails, (false, format!("{s} comes back as {back}"))));
            }
            trails.push(t);
        }
        let distinct: BTreeSet<String> = trails.iter().map(Trail::fingerprint).collect();
        let ok = distinct.len() == trails.len();
        Ok((trails, (ok, if ok { String::new() } else { "two states share a trail".into() })))
    };
    match run() {
        Ok((trails, outcome)) => {
            let ok = outcome.0;
            checks.record("bijection", Ok(outcome));
            ok.then_some(trails)
        }
        Err(e) => {
            checks.record("bijection", Err(e));
            None
        }
    }
}

fn greedy(
    d: &LinkoidDiagram,
    states: &[ClockState],
    clocked: &ClockState,
    counter: &ClockState,
    config: &RunConfig,
) -> Result<(bool, String)> {
    let u = d.universe();
    for s in states {
        for (toward, target) in [(Extreme::Clocked, clocked), (Extreme::CounterClocked, counter)] {
            let orders = std::iter::once(MoveOrder::LowestCrossing)
                .chain((0..config.seeds).map(|k| MoveOrder::Shuffled(config.seed.wrapping_add(k))));
            for order in orders {
                let end = climb(u, s, toward, order)?.state;
                if &end != target {
                    return Ok((false, format!("{s} climbs to {end} under {order:?}, not {target}")));
                }
            }
        }
    }
    Ok((true, String::new()))
}

fn move_checks(
    d: &LinkoidDiagram,
    states: &[ClockState],
    clocked: &ClockState,
    counter: &ClockState,
) -> Result<(bool, String)> {
    let u = d.universe();
    for s in states {
        let moves = legal_moves(u, s);
        if s != clocked && s != counter && moves.is_empty() {
            return Ok((false, format!("mixed state {s} has no move")));
        }
        if s == clocked && moves.iter().any(|m| m.sense != Sense::Clockwise) {
            return Ok((false, "the clocked state has a counterclockwise move".into()));
        }
        if s == counter && moves.iter().any(|m| m.sense != Sense::Counterclockwise) {
            return Ok((false, "the counter-clocked state has a clockwise move".into()));
        }
        for m in &moves {
            let t = apply_move(u, s, m)?;
            if &apply_move(u, &t, &m.reverse())? != s {
                return Ok((false, format!("{m} on {s} is not undone by its reverse")));
            }
        }
    }
    Ok((true, String::new()))
}

fn exchange_parity(d: &LinkoidDiagram, trails: &[Trail]) -> Result<(bool, String)> {
    let u = d.universe();
    if !d.is_knot_type() {
        return Ok((true, "proper: odd differences allowed".into()));
    }
    for (i, a) in trails.iter().enumerate() {
        for b in &trails[i + 1..] {
            let diff = exchange_diff(a, b)?;
            if diff.len() % 2 == 1 {
                return Ok((false, format!("trails {} and {} differ at {:?}", a.fingerprint(), b.fingerprint(), diff.sites)));
            }
        }
        for c in 0..u.crossing_count() {
            match apply_resmoothing(u, a, &BTreeSet::from([c]))? {
                Smoothed::NotATrail(n) if !n.loops.is_empty() => {}
                _ => {
                    return Ok((false, format!("flipping crossing {c} of {} leaves no closed loop", a.fingerprint())));
                }
            }
        }
    }
    Ok((true, String::new()))
}

fn factorization(d: &LinkoidDiagram, states: &[ClockState], trails: &[Trail]) -> Result<(bool, String)> {
    let u = d.universe();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let one_move: BTreeSet<(usize, usize)> = {
        let index: BTreeMap<&ClockState, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut pairs = BTreeSet::new();
        for (i, s) in states.iter().enumerate() {
            for m in legal_moves(u, s) {
                let j = index[&apply_move(u, s, &m)?];
                pairs.insert((i.min(j), i.max(j)));
            }
        }
        pairs
    };
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let Some(kind) = classify_exchange(u, &trails[i], &trails[j])? else {
                continue;
            };
            let f = factorize_exchange(u, &states[i], &states[j])?;
            if one_move.contains(&(i, j)) && f.moves.len() != 1 {
                return Ok((false, format!("{} and {} are one move apart", states[i], states[j])));
            }
            *counts
                .entry(match kind {
                    ExchangeKind::Single => "single",
                    ExchangeKind::Double => "double",
                })
                .or_default() += 1;
        }
    }
    let detail = counts.iter().map(|(k, n)| format!("{n} {k}")).collect::<Vec<_>>().join(", ");
    Ok((true, detail))
}

fn removal(d: &LinkoidDiagram, clocked: &ClockState) -> Result<(bool, String)> {
    let u = d.universe();
    for c in 0..u.crossing_count() {
        let r = removal_check(u, clocked, c)?;
        if !r.holds {
            return Ok((false, format!("crossing {c}: induced {}, clocked {}", r.induced, r.clocked)));
        }
    }
    Ok((true, String::new()))
}

fn class_reports(entries: &[EntryReport]) -> Vec<ClassReport> {
    let mut classes: BTreeMap<&str, Vec<&EntryReport>> = BTreeMap::new();
    for e in entries {
        if let Some(c) = &e.class {
            classes.entry(c).or_default().push(e);
        }
    }
    classes
        .into_iter()
        .map(|(class, members)| {
            let names = members.iter().map(|e| e.name.clone()).collect();
            let mut detail = String::new();
            if let Some(e) = members.iter().find(|e| e.star.is_some_and(|s| s != StarPlacement::Tail)) {
                detail = format!("{} is not starred at the tail", e.name);
            } else if let Some(e) = members.iter().find(|e| e.polynomial.is_none()) {
                detail = format!("{} has no polynomial", e.name);
            } else {
                let first = &members[0];
                if let Some(e) = members.iter().find(|e| e.polynomial != first.polynomial) {
                    detail = format!(
                        "{} gives {}, {} gives {}",
                        first.name,
                        first.polynomial.as_deref().unwrap_or_default(),
                        e.name,
                        e.polynomial.as_deref().unwrap_or_default()
                    );
                }
            }
            ClassReport { class: class.to_string(), members: names, passed: detail.is_empty(), detail }
        })
        .collect()
}

/// Runs the corpus. Entries are spread over the available cores; the report
/// keeps them in name order.
pub fn run_corpus(corpus: &Corpus, config: &RunConfig) -> RunReport {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(corpus.entries.len().max(1));
    let mut slots: Vec<Option<EntryReport>> = vec![None; corpus.entries.len()];
    std::thread::scope(|scope| {
        let chunk = corpus.entries.len().div_ceil(workers).max(1);
        for (entries, out) in corpus.entries.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (e, slot) in entries.iter().zip(out) {
                    *slot = Some(run_entry(corpus, e, config));
                }
            });
        }
    });
    let entries: Vec<EntryReport> = slots.into_iter().flatten().collect();
    let classes = class_reports(&entries);
    let failed_checks = entries.iter().flat_map(|e| &e.checks).filter(|c| !c.passed).count()
        + classes.iter().filter(|c| !c.passed).count();
    RunReport { entries, classes, failed_checks, passed: failed_checks == 0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_corpus(files: &[(&str, &str)]) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        for (name, text) in files {
            std::fs::write(dir.path().join(name), text).unwrap();
        }
        dir
    }

    #[test]
    fn empty_directory_has_no_entries() {
        let dir = write_corpus(&[]);
        let corpus = load_corpus(dir.path()).unwrap();
        let report = run_corpus(&corpus, &RunConfig::default());
        assert!(report.entries.is_empty());
        assert!(report.passed);
    }

    #[test]
    fn files_without_manifest_run_bare() {
        let dir = write_corpus(&[("curl.kdf", "kdf 1\nx 1 0 1 1 2\n"), ("notes.txt", "x")]);
        let corpus = load_corpus(dir.path()).unwrap();
        assert_eq!(corpus.entries.len(), 1);
        let config = RunConfig { all_checks: true, ..RunConfig::default() };
        let report = run_corpus(&corpus, &config);
        assert!(report.passed, "{}", report.render_text(true));
        assert_eq!(report.entries[0].states, Some(1));
    }

    #[test]
    fn expected_values_need_provenance() {
        let dir = write_corpus(&[
            ("a.kdf", "kdf 1\n"),
            ("manifest.toml", "[[entry]]\nname = \"a\"\nfile = \"a.kdf\"\nstates = 1\n"),
        ]);
        assert!(matches!(load_corpus(dir.path()), Err(Error::Corpus(_))));
    }

    #[test]
    fn wrong_value_fails_only_its_check() {
        let manifest = "[[entry]]\nname = \"curl\"\nfile = \"curl.kdf\"\nprovenance = \"derived\"\n\
                        states = 1\npolynomial = \"W\"\nsigns = \"-\"\n";
        let dir = write_corpus(&[("curl.kdf", "kdf 1\nx 1 0 1 1 2\n"), ("manifest.toml", manifest)]);
        let report = run_corpus(&load_corpus(dir.path()).unwrap(), &RunConfig::default());
        let failed: Vec<_> = report.entries[0].checks.iter().filter(|c| !c.passed).map(|c| &c.check).collect();
        assert_eq!(failed, ["polynomial"]);
        assert_eq!(report.failed_checks, 1);
    }

    #[test]
    fn missing_file_fails_parse() {
        let manifest = "[[entry]]\nname = \"gone\"\nfile = \"gone.kdf\"\n";
        let dir = write_corpus(&[("manifest.toml", manifest)]);
        let report = run_corpus(&load_corpus(dir.path()).unwrap(), &RunConfig::default());
        assert!(!report.passed);
        assert!(!report.entries[0].check("parse").unwrap().passed);
    }
}
