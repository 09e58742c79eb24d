//! The Mock Alexander polynomial, by state sum and by permanent, and
//! spanning-tree counts of the dual graph.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::LinkoidDiagram;
use crate::laurent::LaurentPoly;
use crate::state::{enumerate_states, ClockState};
use crate::trail::merges_form_spanning_tree;
use crate::universe::{RegionId, Smoothing, Universe};
use crate::weights::WeightTable;

/// Product of the table entries at the marked corners.
pub fn state_weight(d: &LinkoidDiagram, weights: &WeightTable, state: &ClockState) -> LaurentPoly {
    let (coef, exp) = (0..state.len()).fold((1i64, 0i64), |(coef, exp), c| {
        let m = weights.get(d.sign(c), state.corner(c));
        (coef * m.coef, exp + m.exp)
    });
    LaurentPoly::monomial(coef, exp)
}

/// Sum of the state weights over all clock states.
pub fn mock_alexander(d: &LinkoidDiagram, weights: &WeightTable) -> LaurentPoly {
    enumerate_states(d.universe())
        .iter()
        .map(|s| state_weight(d, weights, s))
        .sum()
}

/// Unstarred regions (rows) against crossings (columns); each entry sums
/// the weights of the corners where the region meets the crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedIncidenceMatrix {
    pub rows: Vec<RegionId>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl WeightedIncidenceMatrix {
    pub fn new(d: &LinkoidDiagram, weights: &WeightTable) -> Self {
        let u = d.universe();
        let incidence = u.incidence();
        let mut rows = Vec::new();
        let mut entries = Vec::new();
        for (r, corners) in incidence.by_region {
            let mut row = vec![LaurentPoly::zero(); u.crossing_count()];
            for c in corners {
                row[c.crossing] += weights.get(d.sign(c.crossing), c.corner).to_poly();
            }
            rows.push(r);
            entries.push(row);
        }
        Self { rows, entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Full expansion up to 8 columns, Ryser's formula above.
    pub fn permanent(&self) -> LaurentPoly {
        if self.size() <= 8 {
            permanent_by_expansion(&self.entries)
        } else {
            permanent_by_ryser(&self.entries)
        }
    }
}

impl Serialize for WeightedIncidenceMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        let mut st = serializer.serialize_struct("WeightedIncidenceMatrix", 2)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("entries", &cells)?;
        st.end()
    }
}

/// Expansion along rows, skipping zero entries.
pub fn permanent_by_expansion(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    fn go(m: &[Vec<LaurentPoly>], row: usize, used: &mut [bool]) -> LaurentPoly {
        if row == m.len() {
            return LaurentPoly::one();
        }
        let mut total = LaurentPoly::zero();
        for (j, entry) in m[row].iter().enumerate() {
            if used[j] || entry.is_zero() {
                continue;
            }
            used[j] = true;
            total += entry * &go(m, row + 1, used);
            used[j] = false;
        }
        total
    }
    go(m, 0, &mut vec![false; m.len()])
}

/// Ryser's inclusion-exclusion formula, visiting column subsets in Gray
/// code order so each step updates the row sums by one column.
pub fn permanent_by_ryser(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut row_sums = vec![LaurentPoly::zero(); n];
    let mut in_subset = vec![false; n];
    let mut total = LaurentPoly::zero();
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        in_subset[j] = !in_subset[j];
        for (i, sum) in row_sums.iter_mut().enumerate() {
            if in_subset[j] {
                *sum += &m[i][j];
            } else {
                *sum -= &m[i][j];
            }
        }
        let size = in_subset.iter().filter(|&&b| b).count();
        let term: LaurentPoly = row_sums.iter().product();
        if (n - size).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// The Mock Alexander polynomial as a permanent.
pub fn permanent_polynomial(d: &LinkoidDiagram, weights: &WeightTable) -> LaurentPoly {
    WeightedIncidenceMatrix::new(d, weights).permanent()
}

/// Fraction-free determinant.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Spanning trees of the dual graph by the Matrix-Tree theorem.
pub fn count_states_matrixtree(u: &Universe) -> BigInt {
    let g = u.dual_graph();
    let keep: Vec<RegionId> = (0..g.vertices).filter(|&v| v != g.root).collect();
    let pos = |v: RegionId| keep.iter().position(|&k| k == v);
    let mut lap = vec![vec![BigInt::zero(); keep.len()]; keep.len()];
    for e in &g.edges {
        let (a, b) = (pos(e.left), pos(e.right));
        if let Some(a) = a {
            lap[a][a] += 1;
        }
        if let Some(b) = b {
            lap[b][b] += 1;
        }
        if let (Some(a), Some(b)) = (a, b) {
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
    }
    bareiss_determinant(lap)
}

/// Smoothing choices whose opened channels form a spanning tree of the
/// regions; `None` above 24 crossings.
pub fn count_crossing_realizable_trees(u: &Universe) -> Option<u64> {
    let n = u.crossing_count();
    if n > 24 {
        return None;
    }
    let merges: Vec<[(RegionId, RegionId); 2]> = (0..n)
        .map(|c| {
            [
                u.merged_regions(c, Smoothing::Corners02),
                u.merged_regions(c, Smoothing::Corners13),
            ]
        })
        .collect();
    let count = (0u64..1 << n)
        .filter(|mask| {
            let chosen: Vec<_> = (0..n).map(|c| merges[c][((mask >> c) & 1) as usize]).collect();
            merges_form_spanning_tree(u, &chosen)
        })
        .count();
    Some(count as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    KnotType,
    Proper,
}

/// Knot-type when the endpoints share a region.
pub fn classify(d: &LinkoidDiagram) -> Classification {
    if d.is_knot_type() {
        Classification::KnotType
    } else {
        Classification::Proper
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kdf::parse_kdf;
    use crate::weights::Monomial;
    use proptest::prelude::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(c, e)| (e, c)))
    }

    #[test]
    fn trivial_is_one() {
        let d = parse_kdf("kdf 1\n").unwrap();
        let w = WeightTable::default();
        assert_eq!(mock_alexander(&d, &w), LaurentPoly::one());
        assert_eq!(permanent_polynomial(&d, &w), LaurentPoly::one());
        assert_eq!(count_states_matrixtree(d.universe()), BigInt::one());
    }

    #[test]
    fn curl_is_its_single_entry() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\n").unwrap();
        let w = WeightTable::default();
        let expected = w.get(d.sign(0), 1).to_poly();
        assert_eq!(mock_alexander(&d, &w), expected);
        assert_eq!(permanent_polynomial(&d, &w), expected);
        assert_eq!(count_states_matrixtree(d.universe()), BigInt::one());
        assert_eq!(count_crossing_realizable_trees(d.universe()), Some(1));
    }

    #[test]
    fn bareiss_matches_small_determinants() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(bareiss_determinant(m(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(bareiss_determinant(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(bareiss_determinant(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
        assert_eq!(bareiss_determinant(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<LaurentPoly>>> {
        (0usize..6).prop_flat_map(|n| {
            proptest::collection::vec(
                proptest::collection::vec((-2i64..=2, -2i64..=2), n),
                n,
            )
            .prop_map(|rows| {
                rows.into_iter()
                    .map(|r| r.into_iter().map(|(c, e)| Monomial::new(c, e).to_poly()).collect())
                    .collect()
            })
        })
    }

    proptest! {
        #[test]
        fn ryser_agrees_with_expansion(m in small_matrix()) {
            prop_assert_eq!(permanent_by_ryser(&m), permanent_by_expansion(&m));
        }
    }

    #[test]
    fn all_ones_permanent_of_two_by_two() {
        let one = poly(&[(1, 0)]);
        let m = vec![vec![one.clone(), one.clone()], vec![one.clone(), one]];
        assert_eq!(permanent_by_ryser(&m), LaurentPoly::from(2));
    }
}
