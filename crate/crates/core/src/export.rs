//! Serializable views for JSON output. Crossings are named by their labels
//! in the source; regions by the ids of face tracing.

use serde::Serialize;

use crate::diagram::{LinkoidDiagram, Sign, StarPlacement};
use crate::error::Result;
use crate::polynomial::{classify, Classification};
use crate::state::{incidence_matrix, ClockState};
use crate::trail::{state_to_trail, trail_to_tree, WalkStep};
use crate::universe::{Endpoint, RegionId, Smoothing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerRecord {
    pub crossing: i64,
    pub corner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionRecord {
    pub id: RegionId,
    pub starred: bool,
    pub corners: Vec<CornerRecord>,
    pub endpoints: Vec<Endpoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingRecord {
    pub label: i64,
    pub slots: [usize; 4],
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramRecord {
    pub crossings: Vec<CrossingRecord>,
    pub arcs: usize,
    pub loops: Vec<(usize, usize)>,
    pub star: StarPlacement,
    pub star_region: RegionId,
    pub kind: Classification,
    pub regions: Vec<RegionRecord>,
    /// Unstarred region ids, the rows of `incidence`.
    pub incidence_rows: Vec<RegionId>,
    /// Corners at which each unstarred region meets each crossing.
    pub incidence: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkerRecord {
    pub region: RegionId,
    pub crossing: i64,
    pub corner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateRecord {
    pub fingerprint: String,
    pub markers: Vec<MarkerRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothingRecord {
    pub crossing: i64,
    pub smoothing: Smoothing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeEdgeRecord {
    pub child: RegionId,
    pub parent: RegionId,
    pub crossing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeRecord {
    pub root: RegionId,
    pub edges: Vec<TreeEdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrailRecord {
    pub state: String,
    pub fingerprint: String,
    pub smoothings: Vec<SmoothingRecord>,
    pub walk: Vec<WalkStep>,
    pub tree: TreeRecord,
}

fn label(d: &LinkoidDiagram, c: usize) -> i64 {
    d.crossings()[c].label
}

pub fn diagram_record(d: &LinkoidDiagram) -> DiagramRecord {
    let u = d.universe();
    DiagramRecord {
        crossings: d
            .crossings()
            .iter()
            .map(|x| CrossingRecord { label: x.label, slots: x.slots, sign: x.sign() })
            .collect(),
        arcs: d.arc_count(),
        loops: d.loops().to_vec(),
        star: d.star_placement(),
        star_region: u.star(),
        kind: classify(d),
        regions: u
            .regions()
            .iter()
            .map(|r| RegionRecord {
                id: r.id,
                starred: r.starred,
                corners: r
                    .corners
                    .iter()
                    .map(|c| CornerRecord { crossing: label(d, c.crossing), corner: c.corner })
                    .collect(),
                endpoints: r.endpoints.clone(),
            })
            .collect(),
        incidence_rows: u.unstarred_regions().collect(),
        incidence: incidence_matrix(u),
    }
}

pub fn state_record(d: &LinkoidDiagram, s: &ClockState) -> StateRecord {
    StateRecord {
        fingerprint: s.fingerprint(),
        markers: s
            .markers(d.universe())
            .into_iter()
            .map(|m| MarkerRecord { region: m.region, crossing: label(d, m.crossing), corner: m.corner })
            .collect(),
    }
}

/// The trail of a state together with its rooted tree.
pub fn trail_record(d: &LinkoidDiagram, s: &ClockState) -> Result<TrailRecord> {
    let u = d.universe();
    let t = state_to_trail(u, s)?;
    let tree = trail_to_tree(u, &t)?;
    Ok(TrailRecord {
        state: s.fingerprint(),
        fingerprint: t.fingerprint(),
        smoothings: t
            .smoothings()
            .iter()
            .enumerate()
            .map(|(c, &smoothing)| SmoothingRecord { crossing: label(d, c), smoothing })
            .collect(),
        walk: t.walk().to_vec(),
        tree: TreeRecord {
            root: tree.root,
            edges: tree
                .edges
                .iter()
                .map(|e| TreeEdgeRecord { child: e.child, parent: e.parent, crossing: label(d, e.crossing) })
                .collect(),
        },
    })
}
