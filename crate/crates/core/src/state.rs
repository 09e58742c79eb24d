//! Clock states: one marker per unstarred region, placed at a corner of an
//! incident crossing, with every crossing marked exactly once.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::universe::{CrossingIdx, RegionId, Universe};

/// Stored as the marked corner of each crossing; the marked region of a
/// crossing is the region at that corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClockState {
    corners: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Marker {
    pub region: RegionId,
    pub crossing: CrossingIdx,
    pub corner: usize,
}

impl ClockState {
    /// Builds and validates a state from the marked corner of each crossing.
    pub fn from_corners(u: &Universe, corners: &[usize]) -> Result<Self> {
        let s = Self::from_corners_unchecked(corners);
        s.validate(u)?;
        Ok(s)
    }

    pub(crate) fn from_corners_unchecked(corners: &[usize]) -> Self {
        Self {
            corners: corners.iter().map(|&k| (k % 4) as u8).collect(),
        }
    }

    /// The empty state of a crossingless diagram.
    pub fn empty() -> Self {
        Self { corners: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn corner(&self, crossing: CrossingIdx) -> usize {
        self.corners[crossing] as usize
    }

    pub fn corners(&self) -> impl Iterator<Item = usize> + '_ {
        self.corners.iter().map(|&k| k as usize)
    }

    pub(crate) fn set_corner(&mut self, crossing: CrossingIdx, corner: usize) {
        self.corners[crossing] = (corner % 4) as u8;
    }

    pub fn region_of(&self, u: &Universe, crossing: CrossingIdx) -> RegionId {
        u.corner_region(crossing, self.corner(crossing))
    }

    /// Markers sorted by region.
    pub fn markers(&self, u: &Universe) -> Vec<Marker> {
        let mut m: Vec<Marker> = (0..self.len())
            .map(|c| Marker {
                region: self.region_of(u, c),
                crossing: c,
                corner: self.corner(c),
            })
            .collect();
        m.sort();
        m
    }

    /// Canonical sort key: (crossing, corner) of each region in region order.
    pub fn canonical_key(&self, u: &Universe) -> Vec<(CrossingIdx, usize)> {
        self.markers(u).into_iter().map(|m| (m.crossing, m.corner)).collect()
    }

    /// Checks the bijection between crossings and unstarred regions.
    pub fn validate(&self, u: &Universe) -> Result<()> {
        if self.len() != u.crossing_count() {
            return Err(Error::InvalidState(format!(
                "{} markers for {} crossings",
                self.len(),
                u.crossing_count()
            )));
        }
        let mut owner: Vec<Option<CrossingIdx>> = vec![None; u.region_count()];
        for c in 0..self.len() {
            let r = self.region_of(u, c);
            if r == u.star() {
                return Err(Error::InvalidState(format!(
                    "crossing {c} marks the starred region"
                )));
            }
            if let Some(prev) = owner[r].replace(c) {
                return Err(Error::InvalidState(format!(
                    "region {r} is marked at crossings {prev} and {c}"
                )));
            }
        }
        Ok(())
    }

    /// Marked corner digits in crossing order, e.g. `"1302"`.
    pub fn fingerprint(&self) -> String {
        self.corners.iter().map(|k| char::from(b'0' + k)).collect()
    }

    pub fn from_fingerprint(u: &Universe, s: &str) -> Result<Self> {
        let corners = s
            .chars()
            .map(|ch| match ch.to_digit(10) {
                Some(k) if k < 4 => Ok(k as usize),
                _ => Err(Error::InvalidState(format!("bad fingerprint {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_corners(u, &corners)
    }
}

impl fmt::Display for ClockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.corners.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&self.fingerprint())
        }
    }
}

/// Serialized as its fingerprint.
impl Serialize for ClockState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.fingerprint())
    }
}

/// Candidate marker corners of every unstarred region, visited in
/// increasing candidate count.
fn search_order(u: &Universe) -> Vec<(RegionId, Vec<(CrossingIdx, usize)>)> {
    let mut regions: Vec<(RegionId, Vec<(CrossingIdx, usize)>)> = u
        .incidence()
        .by_region
        .into_iter()
        .map(|(r, corners)| (r, corners.into_iter().map(|c| (c.crossing, c.corner)).collect()))
        .collect();
    regions.sort_by_key(|(r, cands)| (cands.len(), *r));
    regions
}

/// Backtracking over regions with forward checking on the crossings left.
struct Search<'a> {
    order: &'a [(RegionId, Vec<(CrossingIdx, usize)>)],
    used: Vec<bool>,
    corners: Vec<usize>,
}

impl Search<'_> {
    fn viable(&self, depth: usize) -> bool {
        self.order[depth..]
            .iter()
            .all(|(_, cands)| cands.iter().any(|&(c, _)| !self.used[c]))
    }

    /// Stops early once `visit` returns false.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.corners);
        }
        for &(c, k) in &self.order[depth].1 {
            if self.used[c] {
                continue;
            }
            self.used[c] = true;
            self.corners[c] = k;
            let go_on = !self.viable(depth + 1) || self.run(depth + 1, visit);
            self.used[c] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn for_each_state(u: &Universe, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let order = search_order(u);
    let mut search = Search {
        order: &order,
        used: vec![false; u.crossing_count()],
        corners: vec![0; u.crossing_count()],
    };
    search.run(0, visit);
}

/// Some clock state, if any exists.
pub fn first_state(u: &Universe) -> Option<ClockState> {
    let order = search_order(u);
    let mut search = Search {
        order: &order,
        used: vec![false; u.crossing_count()],
        corners: vec![0; u.crossing_count()],
    };
    let mut found = None;
    search.run(0, &mut |corners| {
        found = Some(ClockState::from_corners_unchecked(corners));
        false
    });
    found
}

/// All clock states in canonical order.
pub fn enumerate_states(u: &Universe) -> Vec<ClockState> {
    let mut out = Vec::new();
    for_each_state(u, &mut |corners| {
        out.push(ClockState::from_corners_unchecked(corners));
        true
    });
    out.sort_by_cached_key(|s| s.canonical_key(u));
    out
}

/// Number of clock states, without storing them.
pub fn count_states(u: &Universe) -> usize {
    let mut n = 0usize;
    for_each_state(u, &mut |_| {
        n += 1;
        true
    });
    n
}

/// Enumerates unless more than `cap` states exist.
pub fn enumerate_states_capped(u: &Universe, cap: usize) -> Result<Vec<ClockState>> {
    let count = count_states(u);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    Ok(enumerate_states(u))
}

/// Number of corners at which each unstarred region (rows, by id) meets
/// each crossing (columns).
pub fn incidence_matrix(u: &Universe) -> Vec<Vec<usize>> {
    u.incidence()
        .by_region
        .iter()
        .map(|(_, corners)| {
            let mut row = vec![0; u.crossing_count()];
            for c in corners {
                row[c.crossing] += 1;
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kdf::parse_kdf;

    #[test]
    fn curl_has_one_state() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\n").unwrap();
        let states = enumerate_states(d.universe());
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].fingerprint(), "1");
        assert_eq!(count_states(d.universe()), 1);
    }

    #[test]
    fn trivial_has_the_empty_state() {
        let d = parse_kdf("kdf 1\n").unwrap();
        let states = enumerate_states(d.universe());
        assert_eq!(states, vec![ClockState::empty()]);
        assert!(states[0].validate(d.universe()).is_ok());
    }

    #[test]
    fn validation_rejects_bad_states() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\n").unwrap();
        let u = d.universe();
        assert!(ClockState::from_corners(u, &[1]).is_ok());
        assert!(ClockState::from_corners(u, &[0]).is_err());
        assert!(ClockState::from_corners(u, &[]).is_err());
        assert!(ClockState::from_fingerprint(u, "7").is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\n").unwrap();
        assert!(matches!(
            enumerate_states_capped(d.universe(), 0),
            Err(Error::CapExceeded { count: 1, cap: 0 })
        ));
    }
}
