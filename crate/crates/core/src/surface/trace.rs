//! Resolving normal coordinates into explicit chords and walking components.
//!
//! Every triangle contributes chords: corner arcs, terminal ends, and (for a
//! `-1` edge) one corner-to-corner chord hugging the edge, drawn in the
//! triangle of the edge's forward slot. Crossing points along an edge are
//! numbered by position; glued sides identify position `k` with `w-1-k`.

use super::lamination::{Component, ComponentKind};
use super::route::Route;
use super::triangulation::Triangulation;

/// Endpoint of a chord, in the lamination's own position space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pt {
    /// Crossing of a side; `pos` counts along the slot's ccw direction.
    Side { slot: usize, pos: i64 },
    /// End at the ideal vertex of a corner; `rank` is the walk-order index
    /// among this lamination's entries at that corner.
    Corner { tri: usize, corner: usize, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Chord {
    pub tri: usize,
    pub a: Pt,
    pub b: Pt,
    /// Set for the corner-to-corner chord realizing a `-1` edge.
    pub hug: Option<usize>,
}

/// All chords of a lamination, plus per-corner entry counts.
pub(crate) struct ChordSet {
    pub chords: Vec<Chord>,
    /// Entry count per corner slot (`3t + c`).
    pub corner_entries: Vec<usize>,
}

pub(crate) fn chord_set(tri: &Triangulation, weights: &[i64]) -> ChordSet {
    let crossings = |slot: usize| weights[tri.edge_of_slot(slot)].max(0);
    let mut chords = Vec::new();
    let mut corner_entries = vec![0usize; tri.n_slots()];

    let parallel_here = |t: usize, i: usize| -> bool {
        let slot = 3 * t + i;
        let e = tri.edge_of_slot(slot);
        weights[e] == -1 && tri.slots_of_edge(e)[0] == slot
    };

    for t in 0..tri.n_triangles() {
        let data = super::lamination::Lamination::triangle_data_at(tri, weights, t)
            .expect("caller validated");

        // Per-corner entry layout in walk order:
        //   [parallel hugging side c+1] [terminals, descending side-c
        //   position] [parallel hugging side c+2]
        let mut rank_of_terminal: Vec<Vec<usize>> = vec![Vec::new(); 3];
        for c in 0..3 {
            let mut next_rank = 0usize;
            if parallel_here(t, (c + 1) % 3) {
                next_rank += 1;
            }
            if let Some((tc, count)) = data.terminal {
                if tc == c {
                    let base = next_rank;
                    let mut ranks = vec![0; count as usize];
                    for (r, m) in (0..count as usize).rev().enumerate() {
                        ranks[m] = base + r;
                    }
                    rank_of_terminal[c] = ranks;
                    next_rank += count as usize;
                }
            }
            if parallel_here(t, (c + 2) % 3) {
                next_rank += 1;
            }
            corner_entries[3 * t + c] = next_rank;
        }

        // Corner arcs: chord k at corner c is the k-th innermost.
        for c in 0..3 {
            let s1 = 3 * t + (c + 1) % 3;
            let s2 = 3 * t + (c + 2) % 3;
            let w1 = crossings(s1);
            for k in 0..data.corners[c] {
                chords.push(Chord {
                    tri: t,
                    a: Pt::Side { slot: s1, pos: w1 - 1 - k },
                    b: Pt::Side { slot: s2, pos: k },
                    hug: None,
                });
            }
        }
        // Terminal ends at corner c enter through side c in the middle block.
        if let Some((c, count)) = data.terminal {
            let s = 3 * t + c;
            let lead = data.corners[(c + 1) % 3];
            for m in 0..count {
                chords.push(Chord {
                    tri: t,
                    a: Pt::Side { slot: s, pos: lead + m },
                    b: Pt::Corner {
                        tri: t,
                        corner: c,
                        rank: rank_of_terminal[c][m as usize],
                    },
                    hug: None,
                });
            }
        }
        // Parallel chords for -1 edges realized in this triangle: hug side i,
        // joining its start corner (i+1, last rank) and end corner (i+2,
        // rank 0).
        for i in 0..3 {
            if parallel_here(t, i) {
                let c_start = (i + 1) % 3;
                let c_end = (i + 2) % 3;
                chords.push(Chord {
                    tri: t,
                    a: Pt::Corner {
                        tri: t,
                        corner: c_start,
                        rank: corner_entries[3 * t + c_start] - 1,
                    },
                    b: Pt::Corner { tri: t, corner: c_end, rank: 0 },
                    hug: Some(tri.edge_of_slot(3 * t + i)),
                });
            }
        }
    }
    ChordSet {
        chords,
        corner_entries,
    }
}

/// Crossing-node id on an edge: `(edge, k)` with `k` counted along the
/// forward slot.
pub(crate) fn node_of(tri: &Triangulation, weights: &[i64], slot: usize, pos: i64) -> (usize, i64) {
    let e = tri.edge_of_slot(slot);
    let w = weights[e].max(0);
    if tri.slots_of_edge(e)[0] == slot {
        (e, pos)
    } else {
        (e, w - 1 - pos)
    }
}

pub(crate) struct TracedComponent {
    pub kind: ComponentKind,
    pub weights: Vec<i64>,
    pub route: Route,
    /// Chord indices (into the `chord_set` list) in walk order; piece `j` of
    /// the route is chord `chain[j]`.
    pub chain: Vec<usize>,
}

/// Walk the chords into connected components with standalone coordinates and
/// explicit routes.
pub(crate) fn trace(tri: &Triangulation, weights: &[i64]) -> Vec<TracedComponent> {
    let set = chord_set(tri, weights);
    let chords = &set.chords;
    let n_edges = tri.n_edges();

    let mut incident: std::collections::HashMap<(usize, i64), Vec<(usize, u8)>> =
        std::collections::HashMap::new();
    for (ci, ch) in chords.iter().enumerate() {
        for (end, pt) in [(0u8, ch.a), (1u8, ch.b)] {
            if let Pt::Side { slot, pos } = pt {
                incident
                    .entry(node_of(tri, weights, slot, pos))
                    .or_default()
                    .push((ci, end));
            }
        }
    }
    debug_assert!(incident.values().all(|v| v.len() == 2));

    let pt_of = |ci: usize, end: u8| if end == 0 { chords[ci].a } else { chords[ci].b };
    let mut used = vec![false; chords.len()];
    let mut out = Vec::new();

    // Walk from `(chord, entry_end)`, recording chords and crossed slots;
    // returns the final corner if the chain terminates.
    let walk = |start: (usize, u8),
                used: &mut Vec<bool>|
     -> (Vec<usize>, Vec<usize>, Option<(usize, usize)>, Vec<i64>) {
        let mut slots = Vec::new();
        let mut chain = Vec::new();
        let mut w = vec![0i64; n_edges];
        let mut cur = start;
        loop {
            used[cur.0] = true;
            chain.push(cur.0);
            match pt_of(cur.0, 1 - cur.1) {
                Pt::Corner { tri: t, corner, .. } => return (chain, slots, Some((t, corner)), w),
                Pt::Side { slot, pos } => {
                    slots.push(slot);
                    w[tri.edge_of_slot(slot)] += 1;
                    let node = node_of(tri, weights, slot, pos);
                    let both = &incident[&node];
                    let next = if both[0] == (cur.0, 1 - cur.1) { both[1] } else { both[0] };
                    if next == start {
                        return (chain, slots, None, w);
                    }
                    cur = next;
                }
            }
        }
    };

    // Arc chains first: start from each unused corner-ended chord.
    for ci in 0..chords.len() {
        if used[ci] {
            continue;
        }
        let corner_end = match (chords[ci].a, chords[ci].b) {
            (Pt::Corner { .. }, _) => Some(0u8),
            (_, Pt::Corner { .. }) => Some(1u8),
            _ => None,
        };
        let Some(end) = corner_end else { continue };
        let start_corner = match pt_of(ci, end) {
            Pt::Corner { tri: t, corner, .. } => (t, corner),
            _ => unreachable!(),
        };
        let (chain, slots, final_corner, mut w) = walk((ci, end), &mut used);
        let end_corner = final_corner.expect("arc chain terminates at a corner");
        if let Some(e) = chords[ci].hug {
            w[e] = -1;
        }
        out.push(TracedComponent {
            kind: ComponentKind::Arc,
            weights: w,
            route: Route::arc(start_corner, slots, end_corner),
            chain,
        });
    }
    // Remaining chords form closed curves.
    for ci in 0..chords.len() {
        if used[ci] {
            continue;
        }
        let (chain, slots, final_corner, w) = walk((ci, 0), &mut used);
        debug_assert!(final_corner.is_none());
        debug_assert!(!slots.is_empty());
        out.push(TracedComponent {
            kind: ComponentKind::Curve,
            weights: w,
            route: Route::curve(slots),
            chain,
        });
    }
    out.sort_by(|a, b| a.weights.cmp(&b.weights));
    out
}

pub(crate) fn trace_components(tri: &Triangulation, weights: &[i64]) -> Vec<Component> {
    trace(tri, weights)
        .into_iter()
        .map(|t| Component {
            kind: t.kind,
            weights: t.weights,
        })
        .collect()
}
