//! The universe of a diagram as a combinatorial map.
//!
//! Every edge `e` owns the two darts `2e` and `2e + 1`; a dart sits at a
//! port, which is either one of the four slots of a crossing (listed
//! counterclockwise) or one of the two endpoints. Faces are the orbits of
//! `next(d) = cw(twin(d))`, so each face lies on the left of its darts.
//! Corner `k` of a crossing is the sector between slots `k` and `k + 1`.

use serde::Serialize;

use crate::error::{Error, Result};

pub type Dart = usize;
pub type RegionId = usize;
pub type CrossingIdx = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Port {
    Slot { crossing: CrossingIdx, slot: usize },
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Tail,
    Head,
}

/// A crossing corner: crossing index and corner index `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Corner {
    pub crossing: CrossingIdx,
    pub corner: usize,
}

/// One of the two planar reconnections of a crossing, named by the pair of
/// opposite corners it opens into a single region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothing {
    /// Joins slots 1-2 and 3-0; corners 0 and 2 merge.
    Corners02,
    /// Joins slots 0-1 and 2-3; corners 1 and 3 merge.
    Corners13,
}

impl Smoothing {
    /// The smoothing that opens a channel through corner `k`.
    pub fn through_corner(k: usize) -> Smoothing {
        if k.is_multiple_of(2) {
            Smoothing::Corners02
        } else {
            Smoothing::Corners13
        }
    }

    pub fn flipped(self) -> Smoothing {
        match self {
            Smoothing::Corners02 => Smoothing::Corners13,
            Smoothing::Corners13 => Smoothing::Corners02,
        }
    }

    /// The two merged corners.
    pub fn merged_corners(self) -> (usize, usize) {
        match self {
            Smoothing::Corners02 => (0, 2),
            Smoothing::Corners13 => (1, 3),
        }
    }

    /// The slot that the strand entering at `slot` leaves by.
    pub fn partner_slot(self, slot: usize) -> usize {
        match (self, slot) {
            (Smoothing::Corners02, 0) => 3,
            (Smoothing::Corners02, 3) => 0,
            (Smoothing::Corners02, 1) => 2,
            (Smoothing::Corners02, 2) => 1,
            (Smoothing::Corners13, 0) => 1,
            (Smoothing::Corners13, 1) => 0,
            (Smoothing::Corners13, 2) => 3,
            (Smoothing::Corners13, 3) => 2,
            _ => unreachable!("slot index out of range"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub id: RegionId,
    pub starred: bool,
    /// Crossing corners in boundary-walk order.
    pub corners: Vec<Corner>,
    pub endpoints: Vec<Endpoint>,
    #[serde(skip)]
    pub darts: Vec<Dart>,
}

#[derive(Clone, Debug)]
pub struct Universe {
    ports: Vec<Port>,
    slots: Vec<[Dart; 4]>,
    dart_face: Vec<RegionId>,
    regions: Vec<Region>,
    corner_region: Vec<[RegionId; 4]>,
    star: RegionId,
    tail: Dart,
    head: Dart,
}

/// Region × crossing incidence of the unstarred regions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Incidence {
    /// Corners of every unstarred region, keyed by region id, sorted.
    pub by_region: Vec<(RegionId, Vec<Corner>)>,
    /// Region at each corner of each crossing.
    pub by_crossing: Vec<[RegionId; 4]>,
}

impl Incidence {
    pub fn corners_of(&self, region: RegionId) -> &[Corner] {
        self.by_region
            .iter()
            .find(|(r, _)| *r == region)
            .map(|(_, c)| c.as_slice())
            .unwrap_or(&[])
    }

    pub fn total_corners(&self) -> usize {
        self.by_region.iter().map(|(_, c)| c.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    /// The diagram edge crossed by this dual edge.
    pub edge: usize,
    pub left: RegionId,
    pub right: RegionId,
}

/// Regions as vertices, one edge per diagram edge separating two distinct
/// regions. Diagram edges with the same region on both sides are kept as
/// loops but never take part in spanning trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub vertices: usize,
    pub root: RegionId,
    pub edges: Vec<DualEdge>,
    pub loops: Vec<DualEdge>,
    /// Per crossing, the region pairs merged by `Corners02` and `Corners13`.
    pub crossing_merges: Vec<[(RegionId, RegionId); 2]>,
}

impl DualGraph {
    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertices);
        for e in &self.edges {
            uf.union(e.left, e.right);
        }
        (0..self.vertices).all(|v| uf.find(v) == uf.find(0))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Which face carries the star, given as a dart lying on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct StarDart(pub Dart);

impl Universe {
    /// Builds the map from the port of every dart. The star is the face on
    /// the left of `star`.
    pub(crate) fn from_ports(ports: Vec<Port>, star: StarDart) -> Result<Universe> {
        if !ports.len().is_multiple_of(2) {
            return Err(Error::Malformed("odd number of darts".into()));
        }
        let n = ports
            .iter()
            .filter_map(|p| match p {
                Port::Slot { crossing, .. } => Some(crossing + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let mut slots = vec![[usize::MAX; 4]; n];
        let (mut tail, mut head) = (None, None);
        for (d, p) in ports.iter().enumerate() {
            match *p {
                Port::Slot { crossing, slot } => {
                    if slot > 3 || slots[crossing][slot] != usize::MAX {
                        return Err(Error::Malformed(format!(
                            "slot {slot} of crossing {crossing} assigned twice"
                        )));
                    }
                    slots[crossing][slot] = d;
                }
                Port::Tail => {
                    if tail.replace(d).is_some() {
                        return Err(Error::Malformed("two tails".into()));
                    }
                }
                Port::Head => {
                    if head.replace(d).is_some() {
                        return Err(Error::Malformed("two heads".into()));
                    }
                }
            }
        }
        if let Some(c) = slots.iter().position(|s| s.contains(&usize::MAX)) {
            return Err(Error::Malformed(format!("crossing {c} has an empty slot")));
        }
        let tail = tail.ok_or_else(|| Error::Malformed("no tail".into()))?;
        let head = head.ok_or_else(|| Error::Malformed("no head".into()))?;

        // vertices: crossings 0..n, tail n, head n+1
        let vertex = |p: Port| match p {
            Port::Slot { crossing, .. } => crossing,
            Port::Tail => n,
            Port::Head => n + 1,
        };
        let mut uf = UnionFind::new(n + 2);
        for e in 0..ports.len() / 2 {
            uf.union(vertex(ports[2 * e]), vertex(ports[2 * e + 1]));
        }
        if (0..n + 2).any(|v| uf.find(v) != uf.find(0)) {
            return Err(Error::Disconnected);
        }

        let mut u = Universe {
            ports,
            slots,
            dart_face: Vec::new(),
            regions: Vec::new(),
            corner_region: Vec::new(),
            star: 0,
            tail,
            head,
        };
        u.trace_faces();
        if u.regions.len() != n + 1 {
            return Err(Error::NonSpherical {
                found: u.regions.len(),
                expected: n + 1,
                crossings: n,
            });
        }
        if star.0 >= u.ports.len() {
            return Err(Error::UnresolvableStar(format!("dart {} does not exist", star.0)));
        }
        u.star = u.dart_face[star.0];
        u.regions[u.star].starred = true;
        Ok(u)
    }

    fn next_in_face(&self, d: Dart) -> Dart {
        let t = d ^ 1;
        match self.ports[t] {
            Port::Slot { crossing, slot } => self.slots[crossing][(slot + 3) % 4],
            Port::Tail | Port::Head => t,
        }
    }

    fn trace_faces(&mut self) {
        let darts = self.ports.len();
        self.dart_face = vec![usize::MAX; darts];
        self.regions.clear();
        for start in 0..darts {
            if self.dart_face[start] != usize::MAX {
                continue;
            }
            let id = self.regions.len();
            let mut region = Region {
                id,
                starred: false,
                corners: Vec::new(),
                endpoints: Vec::new(),
                darts: Vec::new(),
            };
            let mut d = start;
            loop {
                self.dart_face[d] = id;
                region.darts.push(d);
                match self.ports[d] {
                    Port::Slot { crossing, slot } => region.corners.push(Corner {
                        crossing,
                        corner: slot,
                    }),
                    Port::Tail => region.endpoints.push(Endpoint::Tail),
                    Port::Head => region.endpoints.push(Endpoint::Head),
                }
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            self.regions.push(region);
        }
        self.corner_region = self
            .slots
            .iter()
            .map(|s| [0, 1, 2, 3].map(|k| self.dart_face[s[k]]))
            .collect();
    }

    pub fn crossing_count(&self) -> usize {
        self.slots.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ports.len() / 2
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn star(&self) -> RegionId {
        self.star
    }

    pub fn unstarred_regions(&self) -> impl Iterator<Item = RegionId> + '_ {
        (0..self.regions.len()).filter(move |&r| r != self.star)
    }

    pub fn port(&self, d: Dart) -> Port {
        self.ports[d]
    }

    pub fn slot_dart(&self, crossing: CrossingIdx, slot: usize) -> Dart {
        self.slots[crossing][slot % 4]
    }

    pub fn tail_dart(&self) -> Dart {
        self.tail
    }

    pub fn head_dart(&self) -> Dart {
        self.head
    }

    /// Region on the left of dart `d` (traversed away from its port).
    pub fn dart_region(&self, d: Dart) -> RegionId {
        self.dart_face[d]
    }

    pub fn corner_region(&self, crossing: CrossingIdx, corner: usize) -> RegionId {
        self.corner_region[crossing][corner % 4]
    }

    pub fn tail_region(&self) -> RegionId {
        self.dart_face[self.tail]
    }

    pub fn head_region(&self) -> RegionId {
        self.dart_face[self.head]
    }

    /// Endpoints in the same region.
    pub fn is_knot_type(&self) -> bool {
        self.tail_region() == self.head_region()
    }

    pub fn incidence(&self) -> Incidence {
        let by_region = self
            .unstarred_regions()
            .map(|r| {
                let mut corners = self.regions[r].corners.clone();
                corners.sort();
                (r, corners)
            })
            .collect();
        Incidence {
            by_region,
            by_crossing: self.corner_region.clone(),
        }
    }

    pub fn dual_graph(&self) -> DualGraph {
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        for e in 0..self.edge_count() {
            let de = DualEdge {
                edge: e,
                left: self.dart_face[2 * e],
                right: self.dart_face[2 * e + 1],
            };
            if de.left == de.right {
                loops.push(de);
            } else {
                edges.push(de);
            }
        }
        let crossing_merges = self
            .corner_region
            .iter()
            .map(|r| [(r[0], r[2]), (r[1], r[3])])
            .collect();
        DualGraph {
            vertices: self.regions.len(),
            root: self.star,
            edges,
            loops,
            crossing_merges,
        }
    }

    /// Regions joined by smoothing `crossing` with `smoothing`.
    pub fn merged_regions(&self, crossing: CrossingIdx, smoothing: Smoothing) -> (RegionId, RegionId) {
        let (a, b) = smoothing.merged_corners();
        (self.corner_region[crossing][a], self.corner_region[crossing][b])
    }

    /// Removes `crossing` by reconnecting its strands with `smoothing`.
    ///
    /// Returns the smaller universe and the new index of every surviving
    /// crossing. Corner indices of the surviving crossings are unchanged and
    /// the star follows its region.
    pub fn smooth_out(
        &self,
        crossing: CrossingIdx,
        smoothing: Smoothing,
    ) -> Result<(Universe, Vec<Option<CrossingIdx>>)> {
        if crossing >= self.crossing_count() {
            return Err(Error::UnknownCrossing(crossing));
        }
        let at_removed =
            |d: Dart| matches!(self.ports[d], Port::Slot { crossing: c, .. } if c == crossing);
        let renumber: Vec<Option<CrossingIdx>> = (0..self.crossing_count())
            .map(|c| match c.cmp(&crossing) {
                std::cmp::Ordering::Less => Some(c),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(c - 1),
            })
            .collect();
        let remap = |p: Port| match p {
            Port::Slot { crossing: c, slot } => Port::Slot {
                crossing: renumber[c].expect("surviving crossing"),
                slot,
            },
            other => other,
        };

        let mut visited = vec![false; self.edge_count()];
        let mut new_dart = vec![usize::MAX; self.ports.len()];
        let mut ports = Vec::new();
        for start in 0..self.ports.len() {
            if at_removed(start) || visited[start / 2] {
                continue;
            }
            let mut far = start ^ 1;
            visited[start / 2] = true;
            while let Port::Slot { crossing: c, slot } = self.ports[far] {
                if c != crossing {
                    break;
                }
                let out = self.slots[c][smoothing.partner_slot(slot)];
                visited[out / 2] = true;
                far = out ^ 1;
            }
            new_dart[start] = ports.len();
            new_dart[far] = ports.len() + 1;
            ports.push(remap(self.ports[start]));
            ports.push(remap(self.ports[far]));
        }
        if visited.iter().any(|v| !v) {
            return Err(Error::TheoryDiscrepancy(format!(
                "smoothing crossing {crossing} leaves a free circle"
            )));
        }
        let star_dart = self.regions[self.star]
            .darts
            .iter()
            .copied()
            .find(|&d| !at_removed(d))
            .ok_or_else(|| {
                Error::UnresolvableStar(format!(
                    "starred region lies entirely at crossing {crossing}"
                ))
            })?;
        let smaller = Universe::from_ports(ports, StarDart(new_dart[star_dart]))?;
        Ok((smaller, renumber))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curl() -> Universe {
        // arcs 0,1,2: 0 tail->x.0, 1 x.2->x.1 (loop), 2 x.3->head
        let ports = vec![
            Port::Tail,
            Port::Slot { crossing: 0, slot: 0 },
            Port::Slot { crossing: 0, slot: 2 },
            Port::Slot { crossing: 0, slot: 1 },
            Port::Slot { crossing: 0, slot: 3 },
            Port::Head,
        ];
        Universe::from_ports(ports, StarDart(0)).unwrap()
    }

    #[test]
    fn trivial_has_one_region() {
        let u = Universe::from_ports(vec![Port::Tail, Port::Head], StarDart(0)).unwrap();
        assert_eq!(u.region_count(), 1);
        assert_eq!(u.star(), 0);
        assert!(u.is_knot_type());
        assert!(u.incidence().by_region.is_empty());
        let g = u.dual_graph();
        assert_eq!(g.vertices, 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn curl_faces() {
        let u = curl();
        assert_eq!(u.region_count(), 2);
        let inner = u.unstarred_regions().next().unwrap();
        // the loop runs from slot 2 to slot 1, enclosing corner 1
        assert_eq!(u.regions()[inner].corners, vec![Corner { crossing: 0, corner: 1 }]);
        assert_eq!(u.regions()[u.star()].corners.len(), 3);
        assert_eq!(u.incidence().total_corners(), 1);
    }

    #[test]
    fn curl_dual_graph() {
        let u = curl();
        let g = u.dual_graph();
        assert_eq!(g.vertices, 2);
        // only the loop arc separates the two regions
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.loops.len(), 2);
        let inner = u.unstarred_regions().next().unwrap();
        let [a, b] = g.crossing_merges[0];
        assert!(a == (u.star(), u.star()) || b == (u.star(), u.star()));
        assert!(a.0 == inner || a.1 == inner || b.0 == inner || b.1 == inner);
        assert!(g.is_connected());
    }

    #[test]
    fn smoothing_out_curl_gives_trivial() {
        let u = curl();
        let (small, map) = u.smooth_out(0, Smoothing::Corners13).unwrap();
        assert_eq!(small.crossing_count(), 0);
        assert_eq!(small.region_count(), 1);
        assert_eq!(map, vec![None]);
        assert!(matches!(
            u.smooth_out(0, Smoothing::Corners02),
            Err(Error::TheoryDiscrepancy(_))
        ));
    }

    #[test]
    fn partner_slots_are_involutions() {
        for s in [Smoothing::Corners02, Smoothing::Corners13] {
            for slot in 0..4 {
                assert_eq!(s.partner_slot(s.partner_slot(slot)), slot);
                assert_ne!(s.partner_slot(slot), slot);
            }
        }
    }

    #[test]
    fn non_spherical_map_is_rejected() {
        // two crossings wired as a torus-like figure: arcs pair slots 0-2 and 1-3 at both
        let ports = vec![
            Port::Tail,
            Port::Slot { crossing: 0, slot: 0 },
            Port::Slot { crossing: 0, slot: 2 },
            Port::Slot { crossing: 1, slot: 0 },
            Port::Slot { crossing: 1, slot: 2 },
            Port::Slot { crossing: 0, slot: 1 },
            Port::Slot { crossing: 0, slot: 3 },
            Port::Slot { crossing: 1, slot: 1 },
            Port::Slot { crossing: 1, slot: 3 },
            Port::Head,
        ];
        let err = Universe::from_ports(ports, StarDart(0)).unwrap_err();
        assert!(matches!(err, Error::NonSpherical { .. }), "{err}");
    }
}
