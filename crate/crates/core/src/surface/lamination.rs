//! Integral normal coordinates for multiarcs and multicurves.
//!
//! A lamination on a triangulation assigns an integer weight to every edge:
//! the number of transverse crossings in minimal position. A component that
//! is isotopic onto an edge crosses nothing and is recorded as weight `-1` on
//! that edge; at most one such component per edge, and a `-1` edge carries no
//! crossings.
//!
//! Inside a triangle the crossings resolve uniquely into *corner arcs*
//! (cutting off one corner) and *terminal ends* (running from a side to the
//! opposite ideal vertex, where an arc of the lamination ends at the
//! puncture). Writing `w0, w1, w2` for the side weights, the corner count at
//! corner `c` is `(w[c+1] + w[c+2] - w[c]) / 2` when all three triangle
//! inequalities hold (which forces an even sum), and a violation `w[c] >
//! w[c+1] + w[c+2]` puts `w[c] - w[c+1] - w[c+2]` terminal ends at corner
//! `c` instead. At most one corner can violate, so the resolution is unique.

use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Arc,
    Curve,
}

/// One connected component of a lamination, in its own standalone coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    pub weights: Vec<i64>,
}

/// The unique per-triangle resolution of side weights into corner arcs and
/// terminal ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleData {
    /// Corner-arc counts; `corners[c]` cuts off corner `c` (opposite side `c`).
    pub corners: [i64; 3],
    /// `(corner, count)` of terminal ends, if any.
    pub terminal: Option<(usize, i64)>,
}

impl TriangleData {
    pub fn solve(w: [i64; 3]) -> Option<TriangleData> {
        if w.iter().any(|&x| x < 0) {
            return None;
        }
        let mut violated = None;
        for c in 0..3 {
            if w[c] > w[(c + 1) % 3] + w[(c + 2) % 3] {
                violated = Some(c);
            }
        }
        match violated {
            Some(c) => {
                let t = w[c] - w[(c + 1) % 3] - w[(c + 2) % 3];
                let mut corners = [0i64; 3];
                corners[(c + 1) % 3] = w[(c + 2) % 3];
                corners[(c + 2) % 3] = w[(c + 1) % 3];
                Some(TriangleData {
                    corners,
                    terminal: Some((c, t)),
                })
            }
            None => {
                if (w[0] + w[1] + w[2]) % 2 != 0 {
                    return None;
                }
                let x = |c: usize| (w[(c + 1) % 3] + w[(c + 2) % 3] - w[c]) / 2;
                Some(TriangleData {
                    corners: [x(0), x(1), x(2)],
                    terminal: None,
                })
            }
        }
    }

    /// Terminal ends crossing side `i` (nonzero only when the terminal corner
    /// is `i`).
    pub fn terminals_through(&self, side: usize) -> i64 {
        match self.terminal {
            Some((c, t)) if c == side => t,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Lamination {
    tri: Arc<Triangulation>,
    weights: Vec<i64>,
    components: Vec<Component>,
}

impl PartialEq for Lamination {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && *self.tri == *other.tri
    }
}
impl Eq for Lamination {}

impl PartialOrd for Lamination {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.weights.cmp(&other.weights))
    }
}
impl Ord for Lamination {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weights.cmp(&other.weights)
    }
}

impl std::hash::Hash for Lamination {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.weights.hash(state);
    }
}

impl Lamination {
    /// Validate edge weights and classify the components. Rejects weights
    /// below `-1`, local corner-condition failures, and inessential or
    /// peripheral components.
    pub fn new(tri: Arc<Triangulation>, weights: Vec<i64>) -> Result<Lamination> {
        let lam = Self::new_unchecked_essential(tri, weights)?;
        for comp in &lam.components {
            let single = Lamination {
                tri: lam.tri.clone(),
                weights: comp.weights.clone(),
                components: vec![comp.clone()],
            };
            super::overlay::check_component_essential(&single, comp.kind)?;
        }
        Ok(lam)
    }

    /// Validate local conditions and trace components, without the
    /// essentiality check. Used internally where the caller verifies
    /// essentiality differently (or knows it already holds).
    pub(crate) fn new_unchecked_essential(
        tri: Arc<Triangulation>,
        weights: Vec<i64>,
    ) -> Result<Lamination> {
        if weights.len() != tri.n_edges() {
            return Err(Error::WeightCount {
                expected: tri.n_edges(),
                got: weights.len(),
            });
        }
        for (e, &w) in weights.iter().enumerate() {
            if w < -1 {
                return Err(Error::WeightBelowFloor { edge: e, weight: w });
            }
        }
        for t in 0..tri.n_triangles() {
            if Self::triangle_data_at(&tri, &weights, t).is_none() {
                return Err(Error::CornerConditions { triangle: t });
            }
        }
        let components = super::trace::trace_components(&tri, &weights);
        Ok(Lamination {
            tri,
            weights,
            components,
        })
    }

    pub fn empty(tri: Arc<Triangulation>) -> Lamination {
        let n = tri.n_edges();
        Lamination {
            tri,
            weights: vec![0; n],
            components: Vec::new(),
        }
    }

    pub(crate) fn triangle_data_at(
        tri: &Triangulation,
        weights: &[i64],
        t: usize,
    ) -> Option<TriangleData> {
        let w = [0, 1, 2].map(|i| weights[tri.edge_of_slot(3 * t + i)].max(0));
        TriangleData::solve(w)
    }

    pub fn triangle_data(&self, t: usize) -> TriangleData {
        Self::triangle_data_at(&self.tri, &self.weights, t)
            .expect("validated lamination has solvable triangles")
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }
    pub fn weight(&self, e: usize) -> i64 {
        self.weights[e]
    }
    /// Crossing count on an edge (a `-1` edge carries no crossings).
    pub fn crossings(&self, e: usize) -> i64 {
        self.weights[e].max(0)
    }
    pub fn components(&self) -> &[Component] {
        &self.components
    }
    pub fn n_components(&self) -> usize {
        self.components.len()
    }
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
    pub fn total_weight(&self) -> i64 {
        self.weights.iter().map(|w| (*w).max(0)).sum()
    }

    pub fn is_single(&self, kind: ComponentKind) -> bool {
        self.components.len() == 1 && self.components[0].kind == kind
    }
    pub fn is_arc(&self) -> bool {
        self.is_single(ComponentKind::Arc)
    }
    pub fn is_curve(&self) -> bool {
        self.is_single(ComponentKind::Curve)
    }

    pub fn same_triangulation(&self, other: &Lamination) -> Result<()> {
        if *self.tri == *other.tri {
            Ok(())
        } else {
            Err(Error::TriangulationMismatch)
        }
    }

    /// Rebind to a structurally equal triangulation value.
    pub(crate) fn with_weights(&self, weights: Vec<i64>) -> Result<Lamination> {
        Self::new_unchecked_essential(self.tri.clone(), weights)
    }
}

/// Spec-level entry point: validate weights on a triangulation.
pub fn validate_lamination(tri: &Arc<Triangulation>, weights: Vec<i64>) -> Result<Lamination> {
    Lamination::new(tri.clone(), weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::canonical::canonical_surface;

    #[test]
    fn triangle_solutions() {
        assert_eq!(
            TriangleData::solve([0, 1, 1]),
            Some(TriangleData {
                corners: [1, 0, 0],
                terminal: None
            })
        );
        // Parity failure with strict triangle inequalities.
        assert_eq!(TriangleData::solve([1, 1, 1]), None);
        // Violation puts terminals at the violating corner.
        assert_eq!(
            TriangleData::solve([5, 1, 1]),
            Some(TriangleData {
                corners: [0, 1, 1],
                terminal: Some((0, 3))
            })
        );
        assert_eq!(
            TriangleData::solve([0, 0, 1]),
            Some(TriangleData {
                corners: [0, 0, 0],
                terminal: Some((2, 1))
            })
        );
    }

    #[test]
    fn empty_lamination_is_valid() {
        let t = canonical_surface("S_1_1").unwrap();
        let lam = validate_lamination(&t, vec![0, 0, 0]).unwrap();
        assert_eq!(lam.n_components(), 0);
    }

    #[test]
    fn bad_weight_counts_and_floors() {
        let t = canonical_surface("S_1_1").unwrap();
        assert!(matches!(
            validate_lamination(&t, vec![0, 0]),
            Err(Error::WeightCount { .. })
        ));
        assert!(matches!(
            validate_lamination(&t, vec![-2, 0, 0]),
            Err(Error::WeightBelowFloor { .. })
        ));
        assert!(matches!(
            validate_lamination(&t, vec![1, 1, 1]),
            Err(Error::CornerConditions { .. })
        ));
    }
}
