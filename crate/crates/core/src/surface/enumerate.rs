//! Exhaustive enumeration of laminations under a weight cap.
//!
//! Weight vectors are generated by a depth-first sweep with per-triangle
//! pruning; arcs and curves are the single-component essential survivors.
//! Results are deterministic (lexicographic in the weight vector) and
//! memoized per `(triangulation, cap)` since distance queries re-enumerate
//! heavily.

use super::lamination::{ComponentKind, Lamination, TriangleData};
use super::triangulation::Triangulation;
use crate::error::Result;
use std::sync::{Arc, Mutex, OnceLock};

/// All locally valid weight vectors with entries in `[-1, cap]` (corner
/// conditions hold in every triangle). No essentiality or component
/// filtering.
pub fn enumerate_weight_vectors(tri: &Triangulation, cap: i64) -> Vec<Vec<i64>> {
    let n = tri.n_edges();
    // Triangles become checkable once their last edge is assigned.
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in 0..tri.n_triangles() {
        let edges = tri.triangle_edges(t);
        let last = *edges.iter().max().unwrap();
        check_at[last].push(t);
    }
    let mut out = Vec::new();
    let mut w = vec![0i64; n];
    fn rec(
        tri: &Triangulation,
        cap: i64,
        check_at: &[Vec<usize>],
        w: &mut Vec<i64>,
        e: usize,
        out: &mut Vec<Vec<i64>>,
    ) {
        if e == w.len() {
            out.push(w.clone());
            return;
        }
        for x in -1..=cap {
            w[e] = x;
            let ok = check_at[e].iter().all(|&t| {
                let ws = [0, 1, 2].map(|i| w[tri.edge_of_slot(3 * t + i)].max(0));
                TriangleData::solve(ws).is_some()
            });
            if ok {
                rec(tri, cap, check_at, w, e + 1, out);
            }
        }
        w[e] = 0;
    }
    rec(tri, cap, &check_at, &mut w, 0, &mut out);
    out
}

fn enumeration_key(tri: &Triangulation) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    for s in 0..tri.n_slots() {
        tri.edge_of_slot(s).hash(&mut h);
        tri.slot_is_forward(s).hash(&mut h);
    }
    h.finish()
}

type Cache = Mutex<std::collections::HashMap<(u64, i64, u8), Arc<Vec<Lamination>>>>;
fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()))
}

fn enumerate_kind(
    tri: &Arc<Triangulation>,
    cap: i64,
    kind: ComponentKind,
) -> Result<Arc<Vec<Lamination>>> {
    let tag = match kind {
        ComponentKind::Arc => 0u8,
        ComponentKind::Curve => 1u8,
    };
    let key = (enumeration_key(tri), cap, tag);
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let mut found = Vec::new();
    for w in enumerate_weight_vectors(tri, cap) {
        let Ok(lam) = Lamination::new(tri.clone(), w) else {
            continue;
        };
        if lam.is_single(kind) {
            found.push(lam);
        }
    }
    let found = Arc::new(found);
    cache().lock().unwrap().insert(key, found.clone());
    Ok(found)
}

/// Every essential arc class with all edge weights `<= cap`, exactly once,
/// in lexicographic order of normalized coordinates.
pub fn enumerate_arcs(tri: &Arc<Triangulation>, cap: i64) -> Result<Arc<Vec<Lamination>>> {
    enumerate_kind(tri, cap, ComponentKind::Arc)
}

/// Every essential curve class with all edge weights `<= cap`.
pub fn enumerate_curves(tri: &Arc<Triangulation>, cap: i64) -> Result<Arc<Vec<Lamination>>> {
    enumerate_kind(tri, cap, ComponentKind::Curve)
}

/// Every valid lamination (any number of components) under the cap.
pub fn enumerate_laminations(tri: &Arc<Triangulation>, cap: i64) -> Result<Vec<Lamination>> {
    Ok(enumerate_weight_vectors(tri, cap)
        .into_iter()
        .filter_map(|w| Lamination::new(tri.clone(), w).ok())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::canonical::canonical_surface;

    #[test]
    fn torus_cap_one_arcs() {
        let tri = canonical_surface("S_1_1").unwrap();
        let arcs = enumerate_arcs(&tri, 1).unwrap();
        // Three edge-parallel arcs plus the three arcs crossing one edge
        // once.
        let expect: Vec<Vec<i64>> = vec![
            vec![-1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, -1],
            vec![0, 0, 1],
            vec![0, 1, 0],
            vec![1, 0, 0],
        ];
        let got: Vec<Vec<i64>> = arcs.iter().map(|a| a.weights().to_vec()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn torus_cap_one_curves() {
        let tri = canonical_surface("S_1_1").unwrap();
        let curves = enumerate_curves(&tri, 1).unwrap();
        let got: Vec<Vec<i64>> = curves.iter().map(|a| a.weights().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }
}
