//! Acceptance suite over the shipped corpus. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any criterion fails.
//!
//! The oracles here are written against the universe directly (corner
//! regions, legal moves) rather than through the library's own summaries.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::path::Path;
use std::process::ExitCode;

use knotoid_clock::corpus::{load_corpus, Corpus, CorpusEntry};
use knotoid_clock::dynamics::{
    climb, clocked_state, factorize_exchange, removal_check, state_graph,
    verify_lattice, Extreme, MoveOrder, DEFAULT_STATE_CAP,
};
use knotoid_clock::moves::{apply_move, legal_moves};
use knotoid_clock::polynomial::{count_crossing_realizable_trees, count_states_matrixtree, mock_alexander, permanent_polynomial};
use knotoid_clock::state::enumerate_states;
use knotoid_clock::trail::{classify_exchange, exchange_diff, state_to_trail, trail_to_state, Trail};
use knotoid_clock::{ClockState, LaurentPoly, LinkoidDiagram, Sense, StarPlacement, Universe, WeightTable};
use rand::rngs::StdRng;
use rand::SeedableRng;

const SEEDS: u64 = 20;
const RANDOM_TABLES: usize = 10;

struct Item {
    entry: CorpusEntry,
    d: LinkoidDiagram,
    states: Vec<ClockState>,
}

fn load() -> (Corpus, Vec<Item>) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let corpus = load_corpus(&dir).expect("shipped corpus loads");
    let items = corpus
        .entries
        .iter()
        .map(|e| {
            let d = corpus.diagram(e).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            let states = enumerate_states(d.universe());
            Item { entry: e.clone(), d, states }
        })
        .collect();
    (corpus, items)
}

/// Unstarred regions as rows, crossings as columns, entries from a callback
/// on the marked corner.
fn corner_matrix<T: Clone>(u: &Universe, zero: T, mut cell: impl FnMut(T, usize, usize) -> T) -> Vec<Vec<T>> {
    let rows: Vec<usize> = (0..u.region_count()).filter(|&r| r != u.star()).collect();
    rows.iter()
        .map(|&r| {
            (0..u.crossing_count())
                .map(|c| {
                    (0..4)
                        .filter(|&k| u.corner_region(c, k) == r)
                        .fold(zero.clone(), |acc, k| cell(acc, c, k))
                })
                .collect()
        })
        .collect()
}

/// Sum over all permutations, by plain recursion.
fn brute_permanent<T: Clone>(m: &[Vec<T>], one: T, add: &dyn Fn(T, T) -> T, mul: &dyn Fn(&T, &T) -> T, zero: T) -> T {
    fn go<T: Clone>(
        m: &[Vec<T>],
        row: usize,
        used: &mut Vec<bool>,
        acc: T,
        add: &dyn Fn(T, T) -> T,
        mul: &dyn Fn(&T, &T) -> T,
        total: &mut Option<T>,
    ) {
        if row == m.len() {
            *total = Some(match total.take() {
                Some(t) => add(t, acc),
                None => acc,
            });
            return;
        }
        for c in 0..m.len() {
            if !used[c] {
                used[c] = true;
                go(m, row + 1, used, mul(&acc, &m[row][c]), add, mul, total);
                used[c] = false;
            }
        }
    }
    let mut total = None;
    go(m, 0, &mut vec![false; m.len()], one, add, mul, &mut total);
    total.unwrap_or(zero)
}

fn count_permanent(m: &[Vec<u64>]) -> u64 {
    brute_permanent(m, 1u64, &|a, b| a + b, &|a, b| a * b, 0)
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { passed: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { passed: false, detail: detail.into() }
}

fn criterion_1(items: &[Item]) -> Outcome {
    let mut multiplicity = Vec::new();
    for it in items {
        let u = it.d.universe();
        let m = corner_matrix(u, 0u64, |acc, _, _| acc + 1);
        let perm = count_permanent(&m);
        if perm != it.states.len() as u64 {
            return fail(format!("{}: {} states, permanent {perm}", it.entry.name, it.states.len()));
        }
        let ones: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| u64::from(x > 0)).collect()).collect();
        let binary = count_permanent(&ones);
        // forgetting the corner leaves the region -> crossing bijection
        let maps: BTreeSet<Vec<(usize, usize)>> = it
            .states
            .iter()
            .map(|s| s.markers(u).iter().map(|m| (m.region, m.crossing)).collect())
            .collect();
        if binary != maps.len() as u64 {
            return fail(format!("{}: {} bijections, 0/1 permanent {binary}", it.entry.name, maps.len()));
        }
        if binary != perm {
            multiplicity.push(format!("{} ({binary} vs {perm})", it.entry.name));
        }
    }
    pass(format!(
        "{} diagrams; |states| equals the corner-multiplicity permanent and the number of distinct \
         region-crossing bijections equals the 0/1 permanent on every diagram; the two differ on {} \
         diagram(s) where a region meets a crossing at two corners: {}",
        items.len(),
        multiplicity.len(),
        multiplicity.join(", ")
    ))
}

fn trail_covers_every_edge_once(u: &Universe, t: &Trail) -> bool {
    let mut seen = vec![0usize; u.edge_count()];
    for step in t.walk() {
        seen[step.arc] += 1;
    }
    seen.iter().all(|&n| n == 1)
}

fn criterion_2(items: &[Item]) -> Outcome {
    let mut total = 0;
    for it in items {
        let u = it.d.universe();
        let mut trails = BTreeSet::new();
        for s in &it.states {
            let t = match state_to_trail(u, s) {
                Ok(t) => t,
                Err(e) => return fail(format!("{} state {s}: {e}", it.entry.name)),
            };
            if !trail_covers_every_edge_once(u, &t) {
                return fail(format!("{} state {s}: trail misses or repeats an edge", it.entry.name));
            }
            match trail_to_state(u, &t) {
                Ok(back) if &back == s => {}
                Ok(back) => return fail(format!("{}: {s} returns as {back}", it.entry.name)),
                Err(e) => return fail(format!("{}: {e}", it.entry.name)),
            }
            trails.insert(t.fingerprint());
            total += 1;
        }
        if trails.len() != it.states.len() {
            return fail(format!("{}: distinct states share a trail", it.entry.name));
        }
    }
    pass(format!("{total} states round-trip through their trails"))
}

fn criterion_3(items: &[Item]) -> Outcome {
    let mut climbs = 0;
    for it in items {
        let u = it.d.universe();
        for toward in [Extreme::Clocked, Extreme::CounterClocked] {
            let mut ends = BTreeSet::new();
            for s in &it.states {
                let orders = std::iter::once(MoveOrder::LowestCrossing).chain((0..SEEDS).map(MoveOrder::Shuffled));
                for order in orders {
                    match climb(u, s, toward, order) {
                        Ok(c) => {
                            ends.insert(c.state.fingerprint());
                        }
                        Err(e) => return fail(format!("{}: {e}", it.entry.name)),
                    }
                    climbs += 1;
                }
            }
            if ends.len() != 1 {
                return fail(format!("{}: {toward:?} climbs end in {ends:?}", it.entry.name));
            }
            let end = ClockState::from_fingerprint(u, ends.first().unwrap()).unwrap();
            let wrong = match toward {
                Extreme::Clocked => Sense::Counterclockwise,
                Extreme::CounterClocked => Sense::Clockwise,
            };
            if legal_moves(u, &end).iter().any(|m| m.sense == wrong) {
                return fail(format!("{}: {toward:?} end {end} still has a {wrong} move", it.entry.name));
            }
        }
    }
    pass(format!("{climbs} climbs, lowest-crossing order plus {SEEDS} shuffled seeds per start"))
}

/// Successor lists of the clockwise relation, built from legal moves.
fn clockwise_successors(u: &Universe, states: &[ClockState]) -> Vec<Vec<usize>> {
    let index: HashMap<&ClockState, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    states
        .iter()
        .map(|s| {
            legal_moves(u, s)
                .iter()
                .filter(|m| m.sense == Sense::Clockwise)
                .map(|m| index[&apply_move(u, s, m).unwrap()])
                .collect()
        })
        .collect()
}

/// `below[a]` holds every state reachable from `a` by clockwise moves, `a` included.
fn down_sets(succ: &[Vec<usize>]) -> Vec<BTreeSet<usize>> {
    (0..succ.len())
        .map(|a| {
            let mut seen = BTreeSet::from([a]);
            let mut queue = VecDeque::from([a]);
            while let Some(v) = queue.pop_front() {
                for &w in &succ[v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            seen
        })
        .collect()
}

fn criterion_4(items: &[Item]) -> Outcome {
    let mut pairs = 0usize;
    for it in items.iter().filter(|it| it.states.len() <= DEFAULT_STATE_CAP) {
        let u = it.d.universe();
        let n = it.states.len();
        let below = down_sets(&clockwise_successors(u, &it.states));
        for a in 0..n {
            for b in &below[a] {
                if *b != a && below[*b].contains(&a) {
                    return fail(format!("{}: cycle through {} and {}", it.entry.name, it.states[a], it.states[*b]));
                }
            }
        }
        let tops: Vec<usize> = (0..n).filter(|&a| below[a].len() == n).collect();
        let bottoms: Vec<usize> = (0..n).filter(|&a| (0..n).all(|x| below[x].contains(&a))).collect();
        if tops.len() != 1 || bottoms.len() != 1 {
            return fail(format!("{}: {} tops, {} bottoms", it.entry.name, tops.len(), bottoms.len()));
        }
        for a in 0..n {
            for b in a..n {
                let upper: Vec<usize> = (0..n).filter(|&x| below[x].contains(&a) && below[x].contains(&b)).collect();
                let least: Vec<usize> = upper.iter().copied().filter(|&j| upper.iter().all(|&x| below[x].contains(&j))).collect();
                let lower: Vec<usize> = below[a].intersection(&below[b]).copied().collect();
                let greatest: Vec<usize> = lower.iter().copied().filter(|&m| lower.iter().all(|&x| below[m].contains(&x))).collect();
                if least.len() != 1 || greatest.len() != 1 {
                    return fail(format!(
                        "{}: {} and {} have {} joins, {} meets",
                        it.entry.name,
                        it.states[a],
                        it.states[b],
                        least.len(),
                        greatest.len()
                    ));
                }
                pairs += 1;
            }
        }
        let report = verify_lattice(&state_graph(u, DEFAULT_STATE_CAP).unwrap());
        if !report.is_lattice() {
            return fail(format!("{}: library reports {:?}", it.entry.name, report.violations));
        }
    }
    pass(format!("{pairs} state pairs with a unique join and meet; library report agrees"))
}

fn criterion_5(items: &[Item]) -> Outcome {
    for it in items {
        let u = it.d.universe();
        let succ = clockwise_successors(u, &it.states);
        let top = clocked_state(u).unwrap();
        let start = it.states.iter().position(|s| *s == top).unwrap();
        let reached = down_sets(&succ).swap_remove(start);
        if reached.len() != it.states.len() {
            return fail(format!("{}: {} of {} states reached", it.entry.name, reached.len(), it.states.len()));
        }
    }
    pass(format!("{} diagrams fully reached from the clocked state", items.len()))
}

fn criterion_6(items: &[Item]) -> Outcome {
    let (mut even_pairs, mut factored) = (0usize, BTreeMap::<String, usize>::new());
    for it in items {
        let u = it.d.universe();
        let trails: Vec<Trail> = it.states.iter().map(|s| state_to_trail(u, s).unwrap()).collect();
        for i in 0..trails.len() {
            for j in i + 1..trails.len() {
                let diff = exchange_diff(&trails[i], &trails[j]).unwrap();
                if it.d.is_knot_type() {
                    if diff.len() % 2 == 1 {
                        return fail(format!("{}: odd difference {:?}", it.entry.name, diff.sites));
                    }
                    even_pairs += 1;
                }
                let Some(kind) = classify_exchange(u, &trails[i], &trails[j]).unwrap() else { continue };
                let f = match factorize_exchange(u, &it.states[i], &it.states[j]) {
                    Ok(f) => f,
                    Err(e) => return fail(format!("{}: {e}", it.entry.name)),
                };
                let mut s = it.states[i].clone();
                for m in &f.moves {
                    if Some(m.sense) != f.sense {
                        return fail(format!("{}: mixed senses", it.entry.name));
                    }
                    s = apply_move(u, &s, m).unwrap();
                }
                if s != it.states[j] || f.moves.is_empty() {
                    return fail(format!("{}: replay misses {}", it.entry.name, it.states[j]));
                }
                *factored.entry(format!("{kind:?}").to_lowercase()).or_default() += 1;
            }
        }
    }
    let counts: Vec<String> = factored.iter().map(|(k, n)| format!("{n} {k}")).collect();
    pass(format!(
        "{even_pairs} knot-type trail pairs all even; factorized and replayed {}",
        counts.join(", ")
    ))
}

fn criterion_7(items: &[Item]) -> Outcome {
    let mut checks = 0;
    for it in items {
        let u = it.d.universe();
        let top = clocked_state(u).unwrap();
        for c in 0..u.crossing_count() {
            let r = removal_check(u, &top, c).unwrap();
            if !r.holds {
                return fail(format!("{} crossing {c}: induced {} vs {}", it.entry.name, r.induced, r.clocked));
            }
            checks += 1;
        }
    }
    pass(format!("{checks} crossing removals keep the clocked state"))
}

fn poly_permanent(d: &LinkoidDiagram, w: &WeightTable) -> LaurentPoly {
    let u = d.universe();
    let m = corner_matrix(u, LaurentPoly::default(), |acc, c, k| {
        let mut acc = acc;
        acc += w.get(d.sign(c), k).to_poly();
        acc
    });
    brute_permanent(
        &m,
        LaurentPoly::constant(1),
        &|a, b| {
            let mut a = a;
            a += b;
            a
        },
        &|a, b| a * b,
        LaurentPoly::default(),
    )
}

fn criterion_8(items: &[Item]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut tables = vec![WeightTable::default()];
    tables.extend((0..RANDOM_TABLES).map(|_| WeightTable::random(&mut rng)));
    for it in items {
        for (i, w) in tables.iter().enumerate() {
            let sum = mock_alexander(&it.d, w);
            let perm = permanent_polynomial(&it.d, w);
            if sum != perm {
                return fail(format!("{} table {i}: {sum} vs {perm}", it.entry.name));
            }
            if it.d.crossing_count() <= 8 && poly_permanent(&it.d, w) != sum {
                return fail(format!("{} table {i}: brute-force permanent differs", it.entry.name));
            }
        }
    }
    pass(format!("{} diagrams x {} tables (default + {RANDOM_TABLES} random)", items.len(), tables.len()))
}

fn criterion_9(items: &[Item]) -> Outcome {
    let w = WeightTable::default();
    let mut classes: BTreeMap<&str, Vec<(&str, LaurentPoly)>> = BTreeMap::new();
    for it in items {
        if let Some(c) = &it.entry.class {
            if it.d.star_placement() != StarPlacement::Tail {
                return fail(format!("{} is in class {c} but not starred at the tail", it.entry.name));
            }
            classes.entry(c).or_default().push((&it.entry.name, mock_alexander(&it.d, &w)));
        }
    }
    let mut members = 0;
    for (c, list) in &classes {
        if let Some((name, p)) = list.iter().find(|(_, p)| *p != list[0].1) {
            return fail(format!("class {c}: {} gives {}, {name} gives {p}", list[0].0, list[0].1));
        }
        members += list.len();
    }
    pass(format!("{} classes, {members} diagrams, equal within each class", classes.len()))
}

fn criterion_10(items: &[Item]) -> Outcome {
    let expected: LaurentPoly = "W^2 - W^-1 + W".parse().unwrap();
    let w = WeightTable::default();
    let Some(fig) = items.iter().find(|it| it.entry.name == "figure1") else {
        return fail("no figure1 entry");
    };
    let got = mock_alexander(&fig.d, &w);
    if got != expected {
        return fail(format!("figure1 gives {got}"));
    }
    let others: Vec<&str> = items
        .iter()
        .filter(|it| it.entry.name != "figure1" && it.d.crossing_count() == 2 && mock_alexander(&it.d, &w) == expected)
        .map(|it| it.entry.name.as_str())
        .collect();
    pass(format!("figure1 gives {got}; other two-crossing corpus diagrams with this value: {}", others.join(", ")))
}

fn criterion_11(items: &[Item]) -> Outcome {
    let archive = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/tree_counts.tsv");
    let mut table = String::from("name\tstates\tmatrix_tree\tcrossing_realizable\n");
    let mut agree = 0;
    for it in items {
        let u = it.d.universe();
        let mt = count_states_matrixtree(u);
        let cr = count_crossing_realizable_trees(u).map_or("-".to_string(), |n| n.to_string());
        if mt == it.states.len().into() {
            agree += 1;
        }
        table.push_str(&format!("{}\t{}\t{mt}\t{cr}\n", it.entry.name, it.states.len()));
    }
    print!("{}", table.lines().map(|l| format!("    {l}\n")).collect::<String>());
    let archived = std::fs::read_to_string(&archive).unwrap_or_default();
    if archived != table {
        return fail(format!("table differs from {}", archive.display()));
    }
    pass(format!(
        "matrix-tree count of the edge dual equals the state count on {agree} of {} diagrams; table matches the archive",
        items.len()
    ))
}

type Criterion = fn(&[Item]) -> Outcome;

fn main() -> ExitCode {
    let (_corpus, items) = load();
    let criteria: [(&str, Criterion); 11] = [
        ("state count vs brute-force permanent", criterion_1),
        ("state/trail bijection round trip", criterion_2),
        ("unique extremal states under 20+ move orders", criterion_3),
        ("lattice of the clockwise order", criterion_4),
        ("reachability from the clocked state", criterion_5),
        ("exchange parity and monotone factorization", criterion_6),
        ("removal of a crossing keeps the clocked state", criterion_7),
        ("state sum equals permanent", criterion_8),
        ("invariance within equivalence classes", criterion_9),
        ("figure1 value", criterion_10),
        ("matrix-tree comparison", criterion_11),
    ];
    let mut failed = 0;
    println!("acceptance over {} corpus diagrams", items.len());
    for (i, (title, run)) in criteria.iter().enumerate() {
        let out = run(&items);
        let mark = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark} {title}: {}", i + 1, out.detail);
        failed += usize::from(!out.passed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
