//! Extremal states, the state graph, its lattice structure, and monotone
//! factorization of exchanges.
//!
//! Order: `t < s` when `t` is reached from `s` by clockwise moves. The
//! clocked state is the top (no counterclockwise move left) and the
//! counter-clocked state the bottom.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moves::{apply_move, legal_moves, moves_in_sense, ClockMove, Sense};
use crate::state::{enumerate_states_capped, first_state, ClockState};
use crate::trail::{classify_exchange, exchange_diff, state_to_trail};
use crate::universe::{CrossingIdx, Smoothing, Universe};

pub const DEFAULT_STATE_CAP: usize = 10_000;

/// Meet and join tables are kept for graphs up to this many states.
pub const TABLE_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extreme {
    Clocked,
    CounterClocked,
}

impl Extreme {
    /// The sense of the moves that climb towards this extreme.
    pub fn climbing_sense(self) -> Sense {
        match self {
            Extreme::Clocked => Sense::Counterclockwise,
            Extreme::CounterClocked => Sense::Clockwise,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveOrder {
    /// The move touching the lowest crossing first.
    LowestCrossing,
    /// A uniformly random available move, seeded.
    Shuffled(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Climb {
    pub state: ClockState,
    pub steps: usize,
}

/// Applies moves of one sense from `start` until none is left.
pub fn climb(u: &Universe, start: &ClockState, toward: Extreme, order: MoveOrder) -> Result<Climb> {
    start.validate(u)?;
    let sense = toward.climbing_sense();
    let mut rng = match order {
        MoveOrder::Shuffled(seed) => Some(StdRng::seed_from_u64(seed)),
        MoveOrder::LowestCrossing => None,
    };
    let mut state = start.clone();
    let mut visited = HashSet::from([state.clone()]);
    let mut steps = 0;
    loop {
        let moves = moves_in_sense(u, &state, sense);
        if moves.is_empty() {
            return Ok(Climb { state, steps });
        }
        let pick = match rng.as_mut() {
            Some(r) => r.gen_range(0..moves.len()),
            None => 0,
        };
        state = apply_move(u, &state, &moves[pick])?;
        steps += 1;
        if !visited.insert(state.clone()) {
            return Err(Error::TheoryDiscrepancy(format!(
                "{sense} moves return to state {state} after {steps} steps"
            )));
        }
    }
}

fn extreme(u: &Universe, toward: Extreme) -> Result<ClockState> {
    let start = first_state(u)
        .ok_or_else(|| Error::TheoryDiscrepancy("the universe has no clock state".into()))?;
    Ok(climb(u, &start, toward, MoveOrder::LowestCrossing)?.state)
}

/// The state admitting only clockwise moves.
pub fn clocked_state(u: &Universe) -> Result<ClockState> {
    extreme(u, Extreme::Clocked)
}

/// The state admitting only counterclockwise moves.
pub fn counterclocked_state(u: &Universe) -> Result<ClockState> {
    extreme(u, Extreme::CounterClocked)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "move")]
    pub mv: ClockMove,
}

/// All states with their clockwise moves as directed edges.
#[derive(Clone, Debug)]
pub struct StateGraph {
    pub states: Vec<ClockState>,
    /// Clockwise edges sorted by (from, to).
    pub edges: Vec<GraphEdge>,
    index: HashMap<ClockState, usize>,
    /// States whose counterclockwise moves do not mirror the clockwise edges.
    pub reversal_failures: Vec<usize>,
}

impl StateGraph {
    pub fn id(&self, s: &ClockState) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for e in &self.edges {
            out[e.from].push(e.to);
        }
        out
    }
}

pub fn state_graph(u: &Universe, cap: usize) -> Result<StateGraph> {
    let states = enumerate_states_capped(u, cap)?;
    let index: HashMap<ClockState, usize> =
        states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut edges = Vec::new();
    let mut incoming: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); states.len()];
    let mut ccw_sources: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); states.len()];
    for (i, s) in states.iter().enumerate() {
        for mv in legal_moves(u, s) {
            let t = apply_move(u, s, &mv)?;
            let j = *index.get(&t).ok_or_else(|| {
                Error::TheoryDiscrepancy(format!("move {mv} leads outside the enumerated states"))
            })?;
            match mv.sense {
                Sense::Clockwise => {
                    incoming[j].insert(i);
                    edges.push(GraphEdge { from: i, to: j, mv });
                }
                Sense::Counterclockwise => {
                    ccw_sources[i].insert(j);
                }
            }
        }
    }
    edges.sort_by_key(|e| (e.from, e.to));
    let reversal_failures = (0..states.len()).filter(|&i| incoming[i] != ccw_sources[i]).collect();
    Ok(StateGraph { states, edges, index, reversal_failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub states: usize,
    pub clockwise_edges: usize,
    pub acyclic: bool,
    pub connected: bool,
    pub top: Option<usize>,
    pub bottom: Option<usize>,
    pub all_reachable_from_top: bool,
    /// Edges of the Hasse diagram, `(upper, lower)`.
    pub hasse: Vec<(usize, usize)>,
    /// `joins[a][b]`, present when there are at most `TABLE_LIMIT` states.
    pub joins: Option<Vec<Vec<usize>>>,
    pub meets: Option<Vec<Vec<usize>>>,
    pub violations: Vec<Violation>,
}

impl LatticeReport {
    pub fn is_lattice(&self) -> bool {
        self.violations.is_empty()
    }
}

fn violation(kind: &str, witness: Vec<usize>) -> Violation {
    Violation { kind: kind.into(), witness }
}

fn undirected_connected(g: &StateGraph) -> bool {
    if g.is_empty() {
        return true;
    }
    let mut adj = vec![Vec::new(); g.len()];
    for e in &g.edges {
        adj[e.from].push(e.to);
        adj[e.to].push(e.from);
    }
    let mut seen = vec![false; g.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !std::mem::replace(&mut seen[w], true) {
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Kahn order from the sources, or `None` on a cycle.
fn topological_order(g: &StateGraph) -> Option<Vec<usize>> {
    let succ = g.successors();
    let mut indegree = vec![0usize; g.len()];
    for e in &g.edges {
        indegree[e.to] += 1;
    }
    let mut ready: VecDeque<usize> = (0..g.len()).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(g.len());
    while let Some(v) = ready.pop_front() {
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push_back(w);
            }
        }
    }
    (order.len() == g.len()).then_some(order)
}

/// Checks that the clockwise order is a lattice with the clocked state on top.
pub fn verify_lattice(g: &StateGraph) -> LatticeReport {
    let n = g.len();
    let mut report = LatticeReport {
        states: n,
        clockwise_edges: g.edges.len(),
        acyclic: false,
        connected: undirected_connected(g),
        top: None,
        bottom: None,
        all_reachable_from_top: false,
        hasse: Vec::new(),
        joins: None,
        meets: None,
        violations: Vec::new(),
    };
    if !report.connected {
        report.violations.push(violation("disconnected", Vec::new()));
    }
    for &s in &g.reversal_failures {
        report.violations.push(violation("move reversal", vec![s]));
    }
    let Some(order) = topological_order(g) else {
        report.violations.push(violation("clockwise cycle", Vec::new()));
        return report;
    };
    report.acyclic = true;

    // bitsets indexed by topological position, top first
    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let succ = g.successors();
    let mut desc = vec![FixedBitSet::with_capacity(n); n];
    for &v in order.iter().rev() {
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(pos[v]);
        for &w in &succ[v] {
            set.union_with(&desc[w]);
        }
        desc[v] = set;
    }
    let mut anc = vec![FixedBitSet::with_capacity(n); n];
    let mut pred = vec![Vec::new(); n];
    for e in &g.edges {
        pred[e.to].push(e.from);
    }
    for &v in &order {
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(pos[v]);
        for &p in &pred[v] {
            set.union_with(&anc[p]);
        }
        anc[v] = set;
    }

    let sources: Vec<usize> = (0..n).filter(|&v| pred[v].is_empty()).collect();
    let sinks: Vec<usize> = (0..n).filter(|&v| succ[v].is_empty()).collect();
    match sources.as_slice() {
        [t] => report.top = Some(*t),
        _ => report.violations.push(violation("top is not unique", sources.clone())),
    }
    match sinks.as_slice() {
        [b] => report.bottom = Some(*b),
        _ => report.violations.push(violation("bottom is not unique", sinks.clone())),
    }
    if let Some(t) = report.top {
        report.all_reachable_from_top = desc[t].count_ones(..) == n;
        if !report.all_reachable_from_top {
            let missed = (0..n).find(|&v| !desc[t].contains(pos[v])).unwrap();
            report.violations.push(violation("unreachable from top", vec![t, missed]));
        }
    }

    for e in &g.edges {
        if desc[e.from].intersection(&anc[e.to]).count() == 2 {
            report.hasse.push((e.from, e.to));
        }
    }
    report.hasse.dedup();

    let keep = n <= TABLE_LIMIT;
    let mut joins = vec![vec![0; if keep { n } else { 0 }]; if keep { n } else { 0 }];
    let mut meets = joins.clone();
    for a in 0..n {
        for b in a..n {
            let upper: FixedBitSet = anc[a].intersection(&anc[b]).collect();
            let join = upper.maximum().map(|p| order[p]);
            match join {
                Some(j) if upper.count_ones(..) == anc[j].count_ones(..) => {
                    if keep {
                        joins[a][b] = j;
                        joins[b][a] = j;
                    }
                }
                _ => report.violations.push(violation("no least upper bound", vec![a, b])),
            }
            let lower: FixedBitSet = desc[a].intersection(&desc[b]).collect();
            let meet = lower.minimum().map(|p| order[p]);
            match meet {
                Some(m) if lower.count_ones(..) == desc[m].count_ones(..) => {
                    if keep {
                        meets[a][b] = m;
                        meets[b][a] = m;
                    }
                }
                _ => report.violations.push(violation("no greatest lower bound", vec![a, b])),
            }
        }
    }
    if keep {
        report.joins = Some(joins);
        report.meets = Some(meets);
    }
    report
}

/// Graphviz source of the Hasse diagram; the top is drawn on top.
pub fn hasse_dot(g: &StateGraph, report: &LatticeReport) -> String {
    let mut out = String::from("digraph clock_lattice {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, s) in g.states.iter().enumerate() {
        let (top, bottom) = (Some(i) == report.top, Some(i) == report.bottom);
        let style = if top && bottom {
            ", style=filled, fillcolor=\"#93c47d\", xlabel=\"clocked = counter-clocked\""
        } else if top {
            ", style=filled, fillcolor=\"#f4c542\", xlabel=\"clocked\""
        } else if bottom {
            ", style=filled, fillcolor=\"#6fa8dc\", xlabel=\"counter-clocked\""
        } else {
            ""
        };
        let _ = writeln!(out, "  s{i} [label=\"{i}: {s}\"{style}];");
    }
    for &(a, b) in &report.hasse {
        let _ = writeln!(out, "  s{a} -> s{b};");
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// Sense of every move, `None` for equal states.
    pub sense: Option<Sense>,
    pub moves: Vec<ClockMove>,
    /// States visited by the search.
    pub explored: usize,
}

fn monotone_path(
    u: &Universe,
    from: &ClockState,
    to: &ClockState,
    sense: Sense,
) -> Result<(Option<Vec<ClockMove>>, usize)> {
    let mut parent: HashMap<ClockState, Option<(ClockState, ClockMove)>> =
        HashMap::from([(from.clone(), None)]);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(s) = queue.pop_front() {
        if &s == to {
            let mut moves = Vec::new();
            let mut cur = s;
            while let Some(Some((prev, mv))) = parent.get(&cur).cloned() {
                moves.push(mv);
                cur = prev;
            }
            moves.reverse();
            return Ok((Some(moves), parent.len()));
        }
        for mv in moves_in_sense(u, &s, sense) {
            let t = apply_move(u, &s, &mv)?;
            if !parent.contains_key(&t) {
                parent.insert(t.clone(), Some((s.clone(), mv)));
                queue.push_back(t);
            }
        }
    }
    Ok((None, parent.len()))
}

/// Writes the passage from `s1` to `s2`, whose trails differ by a single or
/// double exchange, as clock moves of one sense, verified by replay.
pub fn factorize_exchange(u: &Universe, s1: &ClockState, s2: &ClockState) -> Result<Factorization> {
    if s1 == s2 {
        return Ok(Factorization { sense: None, moves: Vec::new(), explored: 1 });
    }
    let (t1, t2) = (state_to_trail(u, s1)?, state_to_trail(u, s2)?);
    if classify_exchange(u, &t1, &t2)?.is_none() {
        return Err(Error::NotAnExchange(exchange_diff(&t1, &t2)?.len()));
    }
    let mut explored = 0;
    for sense in [Sense::Clockwise, Sense::Counterclockwise] {
        let (path, seen) = monotone_path(u, s1, s2, sense)?;
        explored += seen;
        if let Some(moves) = path {
            let mut replay = s1.clone();
            for mv in &moves {
                replay = apply_move(u, &replay, mv)?;
            }
            if &replay != s2 {
                return Err(Error::TheoryDiscrepancy("replay does not reach the target".into()));
            }
            return Ok(Factorization { sense: Some(sense), moves, explored });
        }
    }
    Err(Error::TheoryDiscrepancy(format!(
        "no monotone clock-move path from {s1} to {s2} ({explored} states searched)"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalCheck {
    pub crossing: CrossingIdx,
    pub smoothing: Smoothing,
    /// The surviving markers, on the smaller universe.
    pub induced: ClockState,
    /// Clocked state of the smaller universe.
    pub clocked: ClockState,
    pub induced_is_state: bool,
    pub holds: bool,
}

/// Smooths out `crossing` through its marker in `state` and compares the
/// surviving markers with the clocked state of the smaller universe.
pub fn removal_check(u: &Universe, state: &ClockState, crossing: CrossingIdx) -> Result<RemovalCheck> {
    state.validate(u)?;
    if crossing >= u.crossing_count() {
        return Err(Error::UnknownCrossing(crossing));
    }
    let smoothing = Smoothing::through_corner(state.corner(crossing));
    let (small, renumber) = u.smooth_out(crossing, smoothing)?;
    let mut corners = vec![0; small.crossing_count()];
    for (c, new) in renumber.iter().enumerate() {
        if let Some(n) = new {
            corners[*n] = state.corner(c);
        }
    }
    let induced = ClockState::from_corners_unchecked(&corners);
    let induced_is_state = induced.validate(&small).is_ok();
    let clocked = clocked_state(&small)?;
    Ok(RemovalCheck {
        crossing,
        smoothing,
        holds: induced_is_state && induced == clocked,
        induced,
        clocked,
        induced_is_state,
    })
}
