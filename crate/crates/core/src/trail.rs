//! Trails, their rooted trees, and resmoothing.
//!
//! A trail picks a smoothing at every crossing such that the result is a
//! single open arc from tail to head. Each smoothing opens a channel between
//! two regions; for a trail these channels form a spanning tree of the
//! regions, rooted at the star.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::ClockState;
use crate::universe::{CrossingIdx, Port, RegionId, Smoothing, UnionFind, Universe};

/// One traversal of an arc; `forward` when it follows the arc's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WalkStep {
    pub arc: usize,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Trail {
    smoothings: Vec<Smoothing>,
    walk: Vec<WalkStep>,
}

/// A full smoothing that is not a trail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotATrail {
    pub smoothings: Vec<Smoothing>,
    /// The open arc starting at the tail.
    pub walk: Vec<WalkStep>,
    /// Arcs of every closed loop left over, each in traversal order.
    pub loops: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Smoothed {
    Trail(Trail),
    NotATrail(NotATrail),
}

/// Walks the smoothed diagram starting from the far end of `start`.
fn walk_from(u: &Universe, smoothings: &[Smoothing], start: usize, seen: &mut [bool]) -> Vec<WalkStep> {
    let mut walk = Vec::new();
    let mut d = start;
    while !seen[d / 2] {
        seen[d / 2] = true;
        walk.push(WalkStep { arc: d / 2, forward: d.is_multiple_of(2) });
        match u.port(d ^ 1) {
            Port::Slot { crossing, slot } => {
                d = u.slot_dart(crossing, smoothings[crossing].partner_slot(slot));
            }
            Port::Tail | Port::Head => break,
        }
    }
    walk
}

/// Applies a smoothing at every crossing and classifies the result.
pub fn smooth_all(u: &Universe, smoothings: &[Smoothing]) -> Result<Smoothed> {
    if smoothings.len() != u.crossing_count() {
        return Err(Error::MismatchedDiagrams(format!(
            "{} smoothings for {} crossings",
            smoothings.len(),
            u.crossing_count()
        )));
    }
    let mut seen = vec![false; u.edge_count()];
    let walk = walk_from(u, smoothings, u.tail_dart(), &mut seen);
    let mut loops = Vec::new();
    for e in 0..u.edge_count() {
        if !seen[e] {
            loops.push(walk_from(u, smoothings, 2 * e, &mut seen).iter().map(|s| s.arc).collect());
        }
    }
    let smoothings = smoothings.to_vec();
    Ok(if loops.is_empty() {
        Smoothed::Trail(Trail { smoothings, walk })
    } else {
        Smoothed::NotATrail(NotATrail { smoothings, walk, loops })
    })
}

impl Trail {
    /// Builds a trail, failing when the smoothing leaves closed loops.
    pub fn from_smoothings(u: &Universe, smoothings: &[Smoothing]) -> Result<Trail> {
        match smooth_all(u, smoothings)? {
            Smoothed::Trail(t) => Ok(t),
            Smoothed::NotATrail(bad) => Err(Error::InvalidTrail(format!(
                "{} closed loop(s), first through arcs {:?}",
                bad.loops.len(),
                bad.loops[0]
            ))),
        }
    }

    pub fn smoothings(&self) -> &[Smoothing] {
        &self.smoothings
    }

    pub fn smoothing(&self, crossing: CrossingIdx) -> Smoothing {
        self.smoothings[crossing]
    }

    pub fn walk(&self) -> &[WalkStep] {
        &self.walk
    }

    /// Region pairs opened by the smoothings, one per crossing.
    pub fn merges(&self, u: &Universe) -> Vec<(RegionId, RegionId)> {
        (0..self.smoothings.len())
            .map(|c| u.merged_regions(c, self.smoothings[c]))
            .collect()
    }

    /// `'0'` for `Corners02`, `'1'` for `Corners13`, in crossing order.
    pub fn fingerprint(&self) -> String {
        self.smoothings
            .iter()
            .map(|s| match s {
                Smoothing::Corners02 => '0',
                Smoothing::Corners13 => '1',
            })
            .collect()
    }
}

/// True when the merges form a spanning tree of the regions.
pub fn merges_form_spanning_tree(u: &Universe, merges: &[(RegionId, RegionId)]) -> bool {
    let mut uf = UnionFind::new(u.region_count());
    merges.iter().all(|&(a, b)| uf.union(a, b)) && merges.len() + 1 == u.region_count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreeEdge {
    pub child: RegionId,
    pub parent: RegionId,
    pub crossing: CrossingIdx,
}

/// Spanning tree of the regions with every edge directed towards the star.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedTree {
    pub root: RegionId,
    pub vertices: usize,
    /// Sorted by child.
    pub edges: Vec<TreeEdge>,
}

impl RootedTree {
    pub fn parent(&self, region: RegionId) -> Option<&TreeEdge> {
        self.edges.iter().find(|e| e.child == region)
    }

    pub fn depth(&self) -> usize {
        (0..self.vertices)
            .map(|mut v| {
                let mut d = 0;
                while let Some(e) = self.parent(v) {
                    v = e.parent;
                    d += 1;
                }
                d
            })
            .max()
            .unwrap_or(0)
    }
}

pub fn trail_to_tree(u: &Universe, trail: &Trail) -> Result<RootedTree> {
    let merges = trail.merges(u);
    if !merges_form_spanning_tree(u, &merges) {
        return Err(Error::TheoryDiscrepancy(
            "trail smoothings do not open a spanning tree of the regions".into(),
        ));
    }
    let mut adjacency = vec![Vec::new(); u.region_count()];
    for (c, &(a, b)) in merges.iter().enumerate() {
        adjacency[a].push((b, c));
        adjacency[b].push((a, c));
    }
    let mut edges = Vec::new();
    let mut reached = vec![false; u.region_count()];
    reached[u.star()] = true;
    let mut queue = VecDeque::from([u.star()]);
    while let Some(v) = queue.pop_front() {
        for &(w, c) in &adjacency[v] {
            if !reached[w] {
                reached[w] = true;
                edges.push(TreeEdge { child: w, parent: v, crossing: c });
                queue.push_back(w);
            }
        }
    }
    edges.sort();
    Ok(RootedTree {
        root: u.star(),
        vertices: u.region_count(),
        edges,
    })
}

/// Smooths every crossing through its marked corner.
pub fn state_to_trail(u: &Universe, state: &ClockState) -> Result<Trail> {
    state.validate(u)?;
    let smoothings: Vec<Smoothing> = state.corners().map(Smoothing::through_corner).collect();
    for (c, &s) in smoothings.iter().enumerate() {
        let (a, b) = u.merged_regions(c, s);
        if a == b {
            return Err(Error::TheoryDiscrepancy(format!(
                "marker at crossing {c} opens region {a} into itself"
            )));
        }
    }
    match smooth_all(u, &smoothings)? {
        Smoothed::Trail(t) => Ok(t),
        Smoothed::NotATrail(bad) => Err(Error::TheoryDiscrepancy(format!(
            "state {state} smooths to {} closed loop(s)",
            bad.loops.len()
        ))),
    }
}

/// Marks, at every tree edge, the corner of its crossing in the child region.
pub fn trail_to_state(u: &Universe, trail: &Trail) -> Result<ClockState> {
    let tree = trail_to_tree(u, trail)?;
    let mut corners = vec![0usize; u.crossing_count()];
    for e in &tree.edges {
        let (a, b) = trail.smoothing(e.crossing).merged_corners();
        corners[e.crossing] = if u.corner_region(e.crossing, a) == e.child { a } else { b };
    }
    let state = ClockState::from_corners_unchecked(&corners);
    state
        .validate(u)
        .map_err(|e| Error::TheoryDiscrepancy(format!("tree marking is not a clock state: {e}")))?;
    Ok(state)
}

/// Crossings where two trails smooth differently.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExchangeDiff {
    pub sites: BTreeSet<CrossingIdx>,
}

impl ExchangeDiff {
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }
}

pub fn exchange_diff(t1: &Trail, t2: &Trail) -> Result<ExchangeDiff> {
    if t1.smoothings.len() != t2.smoothings.len() || t1.walk.len() != t2.walk.len() {
        return Err(Error::MismatchedDiagrams(
            "trails belong to diagrams of different size".into(),
        ));
    }
    let sites = (0..t1.smoothings.len())
        .filter(|&c| t1.smoothings[c] != t2.smoothings[c])
        .collect();
    Ok(ExchangeDiff { sites })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExchangeKind {
    Single,
    /// Two sites, at least one of which alone closes off a loop.
    Double,
}

/// How `t2` arises from `t1` by one exchange, or `None` when it takes more:
/// more than two differing sites, or two sites each of which is a single
/// exchange on its own.
pub fn classify_exchange(u: &Universe, t1: &Trail, t2: &Trail) -> Result<Option<ExchangeKind>> {
    let diff = exchange_diff(t1, t2)?;
    Ok(match diff.len() {
        1 => Some(ExchangeKind::Single),
        2 => {
            let mut alone_valid = 0;
            for &c in &diff.sites {
                if let Smoothed::Trail(_) = apply_resmoothing(u, t1, &BTreeSet::from([c]))? {
                    alone_valid += 1;
                }
            }
            (alone_valid < 2).then_some(ExchangeKind::Double)
        }
        _ => None,
    })
}

/// Flips the smoothing at every site and classifies the result.
pub fn apply_resmoothing(u: &Universe, trail: &Trail, sites: &BTreeSet<CrossingIdx>) -> Result<Smoothed> {
    if sites.is_empty() {
        return Err(Error::InvalidTrail("resmoothing needs at least one site".into()));
    }
    if let Some(&c) = sites.iter().find(|&&c| c >= u.crossing_count()) {
        return Err(Error::UnknownCrossing(c));
    }
    let mut smoothings = trail.smoothings.clone();
    for &c in sites {
        smoothings[c] = smoothings[c].flipped();
    }
    smooth_all(u, &smoothings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kdf::parse_kdf;
    use crate::state::enumerate_states;

    #[test]
    fn curl_trail_and_tree() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\n").unwrap();
        let u = d.universe();
        let s = &enumerate_states(u)[0];
        let t = state_to_trail(u, s).unwrap();
        assert_eq!(t.smoothings(), &[Smoothing::Corners13]);
        assert_eq!(t.walk().len(), 3);
        let tree = trail_to_tree(u, &t).unwrap();
        assert_eq!(tree.edges.len(), 1);
        assert_eq!(tree.edges[0].parent, u.star());
        assert_eq!(trail_to_state(u, &t).unwrap(), *s);
    }

    #[test]
    fn trivial_trail() {
        let d = parse_kdf("kdf 1\n").unwrap();
        let u = d.universe();
        let t = state_to_trail(u, &ClockState::empty()).unwrap();
        assert_eq!(t.walk(), &[WalkStep { arc: 0, forward: true }]);
        let tree = trail_to_tree(u, &t).unwrap();
        assert!(tree.edges.is_empty());
        assert_eq!(trail_to_state(u, &t).unwrap(), ClockState::empty());
    }

    #[test]
    fn curl_resmoothing_closes_a_loop() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\n").unwrap();
        let u = d.universe();
        let t = Trail::from_smoothings(u, &[Smoothing::Corners13]).unwrap();
        let site = BTreeSet::from([0]);
        match apply_resmoothing(u, &t, &site).unwrap() {
            Smoothed::NotATrail(bad) => assert_eq!(bad.loops, vec![vec![1]]),
            other => panic!("{other:?}"),
        }
        assert!(matches!(apply_resmoothing(u, &t, &BTreeSet::new()), Err(Error::InvalidTrail(_))));
        assert!(matches!(
            apply_resmoothing(u, &t, &BTreeSet::from([4])),
            Err(Error::UnknownCrossing(4))
        ));
        assert!(Trail::from_smoothings(u, &[Smoothing::Corners02]).is_err());
    }

    #[test]
    fn diff_with_itself_is_empty() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\n").unwrap();
        let t = Trail::from_smoothings(d.universe(), &[Smoothing::Corners13]).unwrap();
        assert!(exchange_diff(&t, &t).unwrap().is_empty());
    }
}
