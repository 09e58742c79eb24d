//! Clock moves.
//!
//! Corner indices grow counterclockwise, so a rotation `k -> k + 1` is
//! counterclockwise and `k -> k - 1` clockwise.
//!
//! A paired move turns two markers by one corner in the same sense so that
//! they swap the two regions they serve. The regions share the edges the
//! markers turn across; those edges need not be the same, since a curl
//! hanging off the common boundary splits it at the curl's crossing. A
//! single move turns one marker across an edge that has the same region on
//! both sides, so the marker stays in its region.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::ClockState;
use crate::universe::{CrossingIdx, RegionId, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Clockwise,
    Counterclockwise,
}

impl Sense {
    pub fn reversed(self) -> Sense {
        match self {
            Sense::Clockwise => Sense::Counterclockwise,
            Sense::Counterclockwise => Sense::Clockwise,
        }
    }

    fn step(self) -> usize {
        match self {
            Sense::Clockwise => 3,
            Sense::Counterclockwise => 1,
        }
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Clockwise => "cw",
            Sense::Counterclockwise => "ccw",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Paired,
    Single,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Rotation {
    pub crossing: CrossingIdx,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClockMove {
    pub kind: MoveKind,
    pub sense: Sense,
    /// Sorted by crossing.
    pub rotations: Vec<Rotation>,
}

impl ClockMove {
    fn new(kind: MoveKind, sense: Sense, mut rotations: Vec<Rotation>) -> Self {
        rotations.sort();
        Self { kind, sense, rotations }
    }

    /// The move undoing this one.
    pub fn reverse(&self) -> ClockMove {
        ClockMove {
            kind: self.kind,
            sense: self.sense.reversed(),
            rotations: self
                .rotations
                .iter()
                .map(|r| Rotation { crossing: r.crossing, from: r.to, to: r.from })
                .collect(),
        }
    }

    pub fn lowest_crossing(&self) -> CrossingIdx {
        self.rotations[0].crossing
    }

    fn apply_unchecked(&self, state: &ClockState) -> ClockState {
        let mut next = state.clone();
        for r in &self.rotations {
            next.set_corner(r.crossing, r.to);
        }
        next
    }
}

impl fmt::Display for ClockMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            MoveKind::Paired => "paired",
            MoveKind::Single => "single",
        };
        write!(f, "{kind} {}", self.sense)?;
        for r in &self.rotations {
            write!(f, " c{}:{}->{}", r.crossing, r.from, r.to)?;
        }
        Ok(())
    }
}

/// Every clock move available on `state`, ordered by lowest crossing, then
/// kind and sense. Moves with the same outcome are reported once.
pub fn legal_moves(u: &Universe, state: &ClockState) -> Vec<ClockMove> {
    let mut moves = Vec::new();
    for sense in [Sense::Clockwise, Sense::Counterclockwise] {
        // each marker turned one corner, with the regions it leaves and enters
        let turns: Vec<(Rotation, RegionId, RegionId)> = (0..state.len())
            .filter_map(|c| {
                let from = state.corner(c);
                let to = (from + sense.step()) % 4;
                let (a, b) = (u.corner_region(c, from), u.corner_region(c, to));
                (a != b).then_some((Rotation { crossing: c, from, to }, a, b))
            })
            .collect();
        for (i, &(r1, a1, b1)) in turns.iter().enumerate() {
            for &(r2, a2, b2) in &turns[i + 1..] {
                if a1 == b2 && b1 == a2 {
                    moves.push(ClockMove::new(MoveKind::Paired, sense, vec![r1, r2]));
                }
            }
        }
    }
    for c in 0..state.len() {
        let k = state.corner(c);
        let region = u.corner_region(c, k);
        for sense in [Sense::Clockwise, Sense::Counterclockwise] {
            let to = (k + sense.step()) % 4;
            if u.corner_region(c, to) == region {
                moves.push(ClockMove::new(
                    MoveKind::Single,
                    sense,
                    vec![Rotation { crossing: c, from: k, to }],
                ));
            }
        }
    }
    moves.sort_by(|a, b| {
        (a.lowest_crossing(), a.kind, a.sense, &a.rotations)
            .cmp(&(b.lowest_crossing(), b.kind, b.sense, &b.rotations))
    });
    let mut seen = std::collections::HashSet::new();
    moves.retain(|m| seen.insert(m.apply_unchecked(state)));
    moves
}

/// Legal moves of one sense.
pub fn moves_in_sense(u: &Universe, state: &ClockState, sense: Sense) -> Vec<ClockMove> {
    legal_moves(u, state).into_iter().filter(|m| m.sense == sense).collect()
}

/// Applies a move after checking that it is legal on `state`.
pub fn apply_move(u: &Universe, state: &ClockState, mv: &ClockMove) -> Result<ClockState> {
    if !legal_moves(u, state).contains(mv) {
        return Err(Error::IllegalMove);
    }
    let next = mv.apply_unchecked(state);
    next.validate(u)
        .map_err(|e| Error::TheoryDiscrepancy(format!("move {mv} leaves a non-state: {e}")))?;
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kdf::parse_kdf;
    use crate::state::enumerate_states;

    #[test]
    fn curl_state_has_no_moves() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\n").unwrap();
        let s = &enumerate_states(d.universe())[0];
        assert!(legal_moves(d.universe(), s).is_empty());
    }

    #[test]
    fn reverse_undoes() {
        let d = parse_kdf("kdf 1\nx 1 1 5 2 4\nx 2 3 1 4 0\nx 3 5 3 6 2\n").unwrap();
        let u = d.universe();
        for s in enumerate_states(u) {
            for m in legal_moves(u, &s) {
                let t = apply_move(u, &s, &m).unwrap();
                assert_eq!(apply_move(u, &t, &m.reverse()).unwrap(), s);
            }
        }
    }
}
