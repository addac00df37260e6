//! Shortening arcs to edge-parallel form by flips.
//!
//! Every arc can be carried onto an edge by a sequence of flips that never
//! increases its total weight. Greedy single-flip descent almost always
//! works; a shallow breadth-first escape covers the plateau cases. The flip
//! path doubles as an exact intersection routine: push the other lamination
//! through the same flips and read its weight on the final edge.

use super::lamination::Lamination;
use super::triangulation::{FlipTransition, Triangulation};
use crate::error::{Error, Result};
use std::sync::Arc;

pub struct ArcShortening {
    pub stages: Vec<Arc<Triangulation>>,
    pub flipped_edges: Vec<usize>,
    pub transitions: Vec<FlipTransition>,
    /// Edge carrying `-1` for the shortened arc in the final stage.
    pub edge: usize,
}

impl ArcShortening {
    /// Push arbitrary weights on the start triangulation through the flip
    /// path.
    pub fn push(&self, weights: &[i64]) -> Result<Vec<i64>> {
        let mut w = weights.to_vec();
        for tr in &self.transitions {
            w = tr.apply(&w)?;
        }
        Ok(w)
    }

    pub fn final_stage(&self) -> &Arc<Triangulation> {
        self.stages.last().unwrap()
    }
}

/// Carry a single arc onto an edge. `frozen` edges are never flipped (used
/// when shortening systems arc by arc).
pub(crate) fn shorten_arc_frozen(arc: &Lamination, frozen: &[bool]) -> Result<ArcShortening> {
    if !arc.is_arc() {
        return Err(Error::NotAnArc);
    }
    let mut stages = vec![arc.triangulation().clone()];
    let mut flipped_edges = Vec::new();
    let mut transitions: Vec<FlipTransition> = Vec::new();
    let mut w = arc.weights().to_vec();

    let total = |w: &[i64]| -> i64 { w.iter().map(|x| x.max(&0)).sum() };

    while total(&w) > 0 {
        let tri = stages.last().unwrap().clone();
        // Greedy: the flip with the largest strict weight decrease.
        let mut best: Option<(i64, usize, FlipTransition)> = None;
        for e in tri.edges() {
            if frozen.get(e).copied().unwrap_or(false) || !tri.is_flippable(e) {
                continue;
            }
            let (_, tr) = tri.flip(e)?;
            let delta = tr.new_weight(&w)? - w[e];
            if delta < 0 && best.as_ref().map_or(true, |(d, _, _)| delta < *d) {
                best = Some((delta, e, tr));
            }
        }
        let word = match best {
            Some((_, e, tr)) => vec![(e, tr)],
            None => escape_plateau(&tri, &w, frozen)?,
        };
        for (e, tr) in word {
            let tri = stages.last().unwrap();
            let (next, _) = tri.flip(e)?;
            w = tr.apply(&w)?;
            stages.push(next.into_arc());
            flipped_edges.push(e);
            transitions.push(tr);
        }
    }
    let edge = w
        .iter()
        .position(|&x| x == -1)
        .expect("zero-weight arc is edge-parallel");
    Ok(ArcShortening {
        stages,
        flipped_edges,
        transitions,
        edge,
    })
}

pub fn shorten_arc(arc: &Lamination) -> Result<ArcShortening> {
    shorten_arc_frozen(arc, &[])
}

/// Breadth-first search for a short flip word that strictly reduces total
/// weight, for the rare plateau where no single flip does.
fn escape_plateau(
    tri: &Triangulation,
    w: &[i64],
    frozen: &[bool],
) -> Result<Vec<(usize, FlipTransition)>> {
    let start_total: i64 = w.iter().map(|x| x.max(&0)).sum();
    #[derive(Clone)]
    struct State {
        tri: Arc<Triangulation>,
        w: Vec<i64>,
        word: Vec<usize>,
    }
    let mut frontier = vec![State {
        tri: Arc::new(tri.clone()),
        w: w.to_vec(),
        word: Vec::new(),
    }];
    let mut seen = std::collections::HashSet::new();
    for _depth in 0..4 {
        let mut next = Vec::new();
        for st in frontier {
            for e in st.tri.edges() {
                if frozen.get(e).copied().unwrap_or(false) || !st.tri.is_flippable(e) {
                    continue;
                }
                let (nt, tr) = st.tri.flip(e)?;
                let nw = tr.apply(&st.w)?;
                let ntotal: i64 = nw.iter().map(|x| x.max(&0)).sum();
                let mut word = st.word.clone();
                word.push(e);
                if ntotal < start_total {
                    // Re-derive the transitions along the word.
                    let mut out = Vec::new();
                    let mut cur = Arc::new(tri.clone());
                    for &fe in &word {
                        let (nt, tr) = cur.flip(fe)?;
                        out.push((fe, tr));
                        cur = nt.into_arc();
                    }
                    return Ok(out);
                }
                let key: (Vec<i64>, Vec<i64>) = (
                    (0..nt.n_slots()).map(|s| nt.edge_of_slot(s) as i64).collect(),
                    nw.clone(),
                );
                if seen.insert(key) {
                    next.push(State {
                        tri: nt.into_arc(),
                        w: nw,
                        word,
                    });
                }
            }
        }
        frontier = next;
    }
    Err(Error::Malformed(
        "arc shortening stalled: no weight-reducing flip word within depth 4".into(),
    ))
}

/// Exact intersection number when `a` is an arc: shorten `a` to an edge and
/// read `b`'s crossings there.
pub(crate) fn intersection_with_arc(a: &Lamination, b: &Lamination) -> Result<i64> {
    let sh = shorten_arc(a)?;
    let bw = sh.push(b.weights())?;
    Ok(bw[sh.edge].max(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::canonical::canonical_surface;
    use crate::surface::lamination::validate_lamination;

    #[test]
    fn shorten_small_arc_on_torus() {
        let tri = canonical_surface("S_1_1").unwrap();
        // (1,0,0) is a single arc crossing edge 0 once.
        let arc = validate_lamination(&tri, vec![1, 0, 0]).unwrap();
        assert!(arc.is_arc());
        let sh = shorten_arc(&arc).unwrap();
        assert_eq!(sh.transitions.len(), 1);
        // Pushing the arc's own weights lands on -1.
        let w = sh.push(arc.weights()).unwrap();
        assert_eq!(w[sh.edge], -1);
    }

    #[test]
    fn already_short_arc() {
        let tri = canonical_surface("S_1_1").unwrap();
        let arc = validate_lamination(&tri, vec![-1, 0, 0]).unwrap();
        let sh = shorten_arc(&arc).unwrap();
        assert!(sh.transitions.is_empty());
        assert_eq!(sh.edge, 0);
    }
}
