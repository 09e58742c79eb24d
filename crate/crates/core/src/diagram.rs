//! Oriented starred 1-linkoid diagrams.
//!
//! Arcs run between consecutive crossing passages. The open component uses
//! arcs `0..=h` from tail to head, every closed component a declared range
//! `first..=last` whose last arc is followed by the first. Each crossing
//! lists its four arcs counterclockwise starting with the incoming
//! under-strand.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::universe::{CrossingIdx, Port, StarDart, Universe};
use crate::weights::WeightTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StarPlacement {
    /// The region containing the tail.
    Tail,
    /// The region containing the head.
    Head,
    /// The region on one side of an arc, relative to its direction.
    Arc { arc: usize, side: Side },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Identifier as written in the source.
    pub label: i64,
    /// Arcs in counterclockwise order, slot 0 the incoming under-strand.
    pub slots: [usize; 4],
    /// Slot (1 or 3) of the incoming over-strand.
    pub over_in: usize,
}

impl Crossing {
    /// Positive when the outgoing over-strand sits in slot 1.
    pub fn sign(&self) -> Sign {
        if self.over_in == 3 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn over_out(&self) -> usize {
        4 - self.over_in
    }
}

#[derive(Clone, Debug)]
pub struct LinkoidDiagram {
    name: String,
    crossings: Vec<Crossing>,
    head_arc: usize,
    loops: Vec<(usize, usize)>,
    star: StarPlacement,
    weights: Option<WeightTable>,
    universe: Universe,
}

fn successor(arc: usize, head_arc: usize, loops: &[(usize, usize)]) -> Option<usize> {
    if arc < head_arc {
        return Some(arc + 1);
    }
    if arc == head_arc {
        return None;
    }
    loops
        .iter()
        .find(|(f, l)| (*f..=*l).contains(&arc))
        .map(|&(f, l)| if arc == l { f } else { arc + 1 })
}

impl LinkoidDiagram {
    /// Validates and builds a diagram from crossing slot lists (`(label,
    /// [a, b, c, d])`), closed component ranges, and a star placement.
    pub fn new(
        crossings: Vec<(i64, [usize; 4])>,
        loops: Vec<(usize, usize)>,
        star: StarPlacement,
    ) -> Result<Self> {
        let n = crossings.len();
        let arc_count = 2 * n + 1;

        for (i, (label, _)) in crossings.iter().enumerate() {
            if crossings[..i].iter().any(|(l, _)| l == label) {
                return Err(Error::Malformed(format!("crossing id {label} is used twice")));
            }
        }
        for (i, &(f, l)) in loops.iter().enumerate() {
            if f > l || l >= arc_count {
                return Err(Error::Malformed(format!(
                    "closed component {f}..{l} is not a range of arcs 0..{}",
                    arc_count - 1
                )));
            }
            if loops[..i].iter().any(|&(f2, l2)| f <= l2 && f2 <= l) {
                return Err(Error::Malformed(format!("closed component {f}..{l} overlaps another")));
            }
        }
        let in_loop = |a: usize| loops.iter().any(|&(f, l)| (f..=l).contains(&a));
        let head_arc = (0..arc_count).take_while(|&a| !in_loop(a)).last().ok_or_else(|| {
            Error::Malformed("arc 0 must start the open component".into())
        })?;
        if let Some(a) = (head_arc + 1..arc_count).find(|&a| !in_loop(a)) {
            return Err(Error::Malformed(format!(
                "arc {a} belongs to no component: open arcs must be 0..={head_arc}"
            )));
        }

        let mut count = vec![0usize; arc_count];
        for (label, slots) in &crossings {
            for &a in slots {
                if a >= arc_count {
                    return Err(Error::Malformed(format!(
                        "crossing {label} refers to arc {a}, but {n} crossings use arcs 0..={}",
                        arc_count - 1
                    )));
                }
                count[a] += 1;
            }
        }
        for (a, &found) in count.iter().enumerate() {
            let expected = if a == 0 || a == head_arc {
                if head_arc == 0 {
                    0
                } else {
                    1
                }
            } else {
                2
            };
            if found != expected {
                return Err(Error::ArcMultiplicity { arc: a, found, expected });
            }
        }

        let succ = |a: usize| successor(a, head_arc, &loops);
        for (label, s) in &crossings {
            if succ(s[0]) != Some(s[2]) {
                return Err(Error::Malformed(format!(
                    "crossing {label}: under-strand arc {} does not continue as arc {}",
                    s[0], s[2]
                )));
            }
        }

        let over_in = resolve_over_strands(&crossings, &succ)?;
        let crossings: Vec<Crossing> = crossings
            .into_iter()
            .zip(over_in)
            .map(|((label, slots), over_in)| Crossing { label, slots, over_in })
            .collect();

        // dart 2a sits where arc a starts, 2a+1 where it ends
        let mut ports: Vec<Option<Port>> = vec![None; 2 * arc_count];
        ports[0] = Some(Port::Tail);
        ports[2 * head_arc + 1] = Some(Port::Head);
        for (c, x) in crossings.iter().enumerate() {
            for slot in 0..4 {
                let incoming = slot == 0 || slot == x.over_in;
                let dart = 2 * x.slots[slot] + usize::from(incoming);
                if ports[dart].is_some() {
                    return Err(Error::Malformed(format!(
                        "arc {} {} twice",
                        x.slots[slot],
                        if incoming { "ends" } else { "starts" }
                    )));
                }
                ports[dart] = Some(Port::Slot { crossing: c, slot });
            }
        }
        let ports = ports
            .into_iter()
            .enumerate()
            .map(|(d, p)| {
                p.ok_or_else(|| {
                    Error::Malformed(format!(
                        "arc {} has no {}",
                        d / 2,
                        if d % 2 == 0 { "start" } else { "end" }
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let star_dart = match star {
            StarPlacement::Tail => 0,
            StarPlacement::Head => 2 * head_arc + 1,
            StarPlacement::Arc { arc, side } => {
                if arc >= arc_count {
                    return Err(Error::UnresolvableStar(format!("arc {arc} does not exist")));
                }
                match side {
                    Side::Left => 2 * arc,
                    Side::Right => 2 * arc + 1,
                }
            }
        };
        let universe = Universe::from_ports(ports, StarDart(star_dart))?;

        Ok(Self {
            name: String::new(),
            crossings,
            head_arc,
            loops,
            star,
            weights: None,
            universe,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_weights(mut self, weights: Option<WeightTable>) -> Self {
        self.weights = weights;
        self
    }

    /// The same diagram with the star moved.
    pub fn restarred(&self, star: StarPlacement) -> Result<Self> {
        let raw = self.crossings.iter().map(|c| (c.label, c.slots)).collect();
        Ok(Self::new(raw, self.loops.clone(), star)?
            .with_name(self.name.clone())
            .with_weights(self.weights.clone()))
    }

    /// The mirror image: every crossing listed clockwise, which swaps
    /// slots 1 and 3 and flips every sign.
    pub fn mirror(&self) -> Result<Self> {
        let raw = self
            .crossings
            .iter()
            .map(|c| (c.label, [c.slots[0], c.slots[3], c.slots[2], c.slots[1]]))
            .collect();
        let star = match self.star {
            StarPlacement::Arc { arc, side } => StarPlacement::Arc {
                arc,
                side: match side {
                    Side::Left => Side::Right,
                    Side::Right => Side::Left,
                },
            },
            other => other,
        };
        Ok(Self::new(raw, self.loops.clone(), star)?
            .with_name(format!("{} (mirror)", self.name))
            .with_weights(self.weights.clone()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len() + 1
    }

    pub fn head_arc(&self) -> usize {
        self.head_arc
    }

    pub fn loops(&self) -> &[(usize, usize)] {
        &self.loops
    }

    pub fn star_placement(&self) -> StarPlacement {
        self.star
    }

    pub fn weights(&self) -> Option<&WeightTable> {
        self.weights.as_ref()
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn sign(&self, crossing: CrossingIdx) -> Sign {
        self.crossings[crossing].sign()
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.crossings.iter().map(Crossing::sign).collect()
    }

    pub fn crossing_index(&self, label: i64) -> Option<CrossingIdx> {
        self.crossings.iter().position(|c| c.label == label)
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign().as_i32()).sum()
    }

    /// Endpoints in the same region.
    pub fn is_knot_type(&self) -> bool {
        self.universe.is_knot_type()
    }
}

/// Finds, for every crossing, which of slots 1 and 3 carries the incoming
/// over-strand. Closed components with two arcs can make a single crossing
/// ambiguous; those are settled by where each arc starts or ends elsewhere,
/// and if a whole component stays undetermined its first ambiguous crossing
/// is read with slot 1 incoming.
fn resolve_over_strands(
    crossings: &[(i64, [usize; 4])],
    succ: &dyn Fn(usize) -> Option<usize>,
) -> Result<Vec<usize>> {
    let mut over_in: Vec<Option<usize>> = vec![None; crossings.len()];
    for (c, (label, s)) in crossings.iter().enumerate() {
        let forward = succ(s[1]) == Some(s[3]);
        let backward = succ(s[3]) == Some(s[1]);
        over_in[c] = match (forward, backward) {
            (true, false) => Some(1),
            (false, true) => Some(3),
            (true, true) => None,
            (false, false) => {
                return Err(Error::Malformed(format!(
                    "crossing {label}: over-strand arcs {} and {} are not consecutive",
                    s[1], s[3]
                )))
            }
        };
    }
    loop {
        // arcs whose end (resp. start) is already placed
        let mut ends = Vec::new();
        let mut starts = Vec::new();
        for (c, (_, s)) in crossings.iter().enumerate() {
            ends.push((c, s[0]));
            starts.push((c, s[2]));
            if let Some(k) = over_in[c] {
                ends.push((c, s[k]));
                starts.push((c, s[4 - k]));
            }
        }
        let mut progress = false;
        for (c, (_, s)) in crossings.iter().enumerate() {
            if over_in[c].is_some() {
                continue;
            }
            let ends_elsewhere = |a: usize| ends.iter().any(|&(c2, e)| c2 != c && e == a);
            let starts_elsewhere = |a: usize| starts.iter().any(|&(c2, e)| c2 != c && e == a);
            if ends_elsewhere(s[1]) || starts_elsewhere(s[3]) {
                over_in[c] = Some(3);
                progress = true;
            } else if ends_elsewhere(s[3]) || starts_elsewhere(s[1]) {
                over_in[c] = Some(1);
                progress = true;
            }
        }
        if progress {
            continue;
        }
        match over_in.iter().position(Option::is_none) {
            Some(c) => over_in[c] = Some(1),
            None => break,
        }
    }
    Ok(over_in.into_iter().map(Option::unwrap).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curl() -> LinkoidDiagram {
        LinkoidDiagram::new(vec![(1, [0, 1, 1, 2])], vec![], StarPlacement::Tail).unwrap()
    }

    #[test]
    fn curl_is_negative_and_its_mirror_positive() {
        let d = curl();
        assert_eq!(d.signs(), vec![Sign::Negative]);
        let m = LinkoidDiagram::new(vec![(1, [0, 2, 1, 1])], vec![], StarPlacement::Tail).unwrap();
        assert_eq!(m.signs(), vec![Sign::Positive]);
        assert_eq!(d.mirror().unwrap().signs(), vec![Sign::Positive]);
    }

    #[test]
    fn trivial_knotoid() {
        let d = LinkoidDiagram::new(vec![], vec![], StarPlacement::Tail).unwrap();
        assert_eq!(d.arc_count(), 1);
        assert_eq!(d.universe().region_count(), 1);
        assert!(d.is_knot_type());
    }

    #[test]
    fn multiplicity_violation() {
        let err = LinkoidDiagram::new(vec![(1, [0, 1, 1, 1])], vec![], StarPlacement::Tail)
            .unwrap_err();
        assert!(matches!(err, Error::ArcMultiplicity { arc: 1, found: 3, expected: 2 }), "{err}");
    }

    #[test]
    fn under_strand_must_continue() {
        let err = LinkoidDiagram::new(vec![(1, [0, 1, 2, 1])], vec![], StarPlacement::Tail)
            .unwrap_err();
        assert!(matches!(err, Error::Malformed(_)), "{err}");
    }

    #[test]
    fn duplicate_crossing_ids() {
        let err = LinkoidDiagram::new(
            vec![(1, [0, 3, 1, 4]), (1, [4, 1, 3, 2])],
            vec![(3, 4)],
            StarPlacement::Tail,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
    }

    #[test]
    fn hopf_linkoid_orientation_is_propagated() {
        // the closed component 3 -> 4 -> 3 is ambiguous at crossing 1 alone
        let d = LinkoidDiagram::new(
            vec![(1, [0, 3, 1, 4]), (2, [4, 1, 3, 2])],
            vec![(3, 4)],
            StarPlacement::Tail,
        )
        .unwrap();
        // arc 4 ends at crossing 2 (slot 0), so it leaves crossing 1
        assert_eq!(d.crossings()[0].over_in, 1);
        assert_eq!(d.crossings()[1].over_in, 1);
        assert_eq!(d.signs(), vec![Sign::Negative, Sign::Negative]);
        assert_eq!(d.universe().region_count(), 3);
    }

    #[test]
    fn explicit_star_sides() {
        let d = curl();
        let left = d.restarred(StarPlacement::Arc { arc: 1, side: Side::Left }).unwrap();
        let right = d.restarred(StarPlacement::Arc { arc: 1, side: Side::Right }).unwrap();
        assert_ne!(left.universe().star(), right.universe().star());
        assert!(d
            .restarred(StarPlacement::Arc { arc: 9, side: Side::Left })
            .is_err());
    }
}
