//! Minimal-position overlays of one or two laminations, and the complement
//! analysis built on them: cut decompositions, the filling test, exact
//! crossing counts, and essentiality checks for single components.
//!
//! The overlay realizes the lamination(s) as chords in each triangle with a
//! fixed interleaving convention on every edge (first lamination's crossings
//! first along the edge's forward direction), then builds the embedded graph
//! of the strands together with the triangle scaffolding and walks its
//! faces. Complement pieces are unions of triangle cells glued across edge
//! gaps; each piece reports the Euler characteristic of its compact
//! completion (punctures blown up to boundary circles), its boundary
//! circles, enclosed punctures, and corner visits. Minimality is verified,
//! not assumed: an innermost bigon or half-bigon between the two laminations
//! is rejected, after retrying with the opposite interleaving.

use super::lamination::{ComponentKind, Lamination};
use super::trace::{chord_set, ChordSet, Pt};
use super::triangulation::Triangulation;
use crate::error::{Error, Result};

/// One complementary piece of a cut surface, described through its compact
/// completion.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Piece {
    /// Euler characteristic of the completion.
    pub chi: i64,
    pub boundary_circles: usize,
    /// Punctures wholly inside the piece.
    pub enclosed_punctures: usize,
    /// Corner visits: maximal puncture sectors on the piece boundary.
    pub visits: usize,
    /// Distinct punctures the piece touches (enclosed or visited).
    pub punctures_touched: usize,
    pub is_disk: bool,
    pub is_once_punctured_disk: bool,
}

impl Piece {
    pub(crate) fn features(&self) -> usize {
        self.visits + self.enclosed_punctures
    }
    /// No essential arc or curve fits inside this piece.
    pub(crate) fn is_filling_piece(&self) -> bool {
        (self.is_disk && self.visits <= 1) || (self.is_once_punctured_disk && self.visits == 0)
    }
    /// Some arc essential in the ambient surface lives inside.
    pub(crate) fn admits_essential_arc(&self) -> bool {
        self.features() >= 2
            || (self.features() == 1 && !self.is_disk && !self.is_once_punctured_disk)
    }
    /// Some curve essential in the ambient surface lives inside.
    pub(crate) fn admits_essential_curve(&self) -> bool {
        self.chi <= -1 || (self.chi == 0 && self.enclosed_punctures == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CutDecomposition {
    pub pieces: Vec<Piece>,
}

impl CutDecomposition {
    pub fn all_filling_pieces(&self) -> bool {
        self.pieces.iter().all(|p| p.is_filling_piece())
    }
    pub fn admits_essential_arc(&self) -> bool {
        self.pieces.iter().any(|p| p.admits_essential_arc())
    }
    pub fn admits_essential_curve(&self) -> bool {
        self.pieces.iter().any(|p| p.admits_essential_curve())
    }
    pub fn chi_sum(&self) -> i64 {
        self.pieces.iter().map(|p| p.chi).sum()
    }
}

/// Crossings and complement data of an overlay.
pub(crate) struct Overlay {
    /// Red-blue crossings as `(red chord index, blue chord index)` into the
    /// respective `chord_set` lists. Empty for single-lamination overlays.
    pub crossings: Vec<(usize, usize)>,
    pub cut: CutDecomposition,
}

pub(crate) fn overlay(
    red: &Lamination,
    blue: Option<&Lamination>,
    node_cap: Option<usize>,
) -> Result<Overlay> {
    let tri = red.triangulation().as_ref();
    if let Some(b) = blue {
        red.same_triangulation(b)?;
        for e in tri.edges() {
            if red.weight(e) == -1 && b.weight(e) == -1 {
                return Err(Error::Malformed(
                    "overlay of laminations sharing an edge-parallel component".into(),
                ));
            }
        }
        match build_overlay(tri, red, Some(b), false, node_cap) {
            Ok(o) => Ok(o),
            Err(Error::OverlayBigon) => build_overlay(tri, red, Some(b), true, node_cap),
            Err(e) => Err(e),
        }
    } else {
        build_overlay(tri, red, None, false, node_cap)
    }
}

fn build_overlay(
    tri: &Triangulation,
    red: &Lamination,
    blue: Option<&Lamination>,
    swap: bool,
    node_cap: Option<usize>,
) -> Result<Overlay> {
    let (first, second): (&Lamination, Option<&Lamination>) = if swap {
        (blue.expect("swap needs two laminations"), Some(red))
    } else {
        (red, blue)
    };

    let set0 = chord_set(tri, first.weights());
    let set1 = second.map(|l| chord_set(tri, l.weights()));

    if let Some(cap) = node_cap {
        let mut per_tri0 = vec![0usize; tri.n_triangles()];
        let mut per_tri1 = vec![0usize; tri.n_triangles()];
        for c in &set0.chords {
            per_tri0[c.tri] += 1;
        }
        if let Some(ref s1) = set1 {
            for c in &s1.chords {
                per_tri1[c.tri] += 1;
            }
        }
        let work: usize = (0..tri.n_triangles())
            .map(|t| per_tri0[t].saturating_mul(per_tri1[t].max(1)))
            .fold(0usize, |a, b| a.saturating_add(b));
        if work > cap {
            return Err(Error::Overflow);
        }
    }

    let weights0 = first.weights();
    let weights1 = second.map(|l| l.weights());
    let builder = FaceBuilder::new(tri, &set0, weights0, set1.as_ref(), weights1);
    let built = builder.build();

    if second.is_some() && built.has_bigon {
        return Err(Error::OverlayBigon);
    }

    let crossings = built
        .crossings
        .into_iter()
        .map(|(a, b)| if swap { (b, a) } else { (a, b) })
        .collect();

    Ok(Overlay {
        crossings,
        cut: built.cut,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum NodeId {
    /// Crossing point `k` along edge `edge`, counted along the forward slot.
    EdgeCross { edge: usize, k: i64 },
    /// Merged entry `rank` at corner `corner` of triangle `tri`.
    Entry { tri: usize, corner: usize, rank: usize },
    /// Edge end: `end = 0` at the forward slot's start, `1` at its end.
    Vertex { edge: usize, end: u8 },
    Cross { idx: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeKind {
    /// Piece of a triangulation edge between consecutive crossing points.
    Gap { edge: usize },
    /// Puncture sector at a corner, between consecutive entries.
    Sector { tri: usize, corner: usize },
    /// Piece of a lamination strand.
    Seg { owner: u8 },
}

struct Built {
    crossings: Vec<(usize, usize)>,
    cut: CutDecomposition,
    has_bigon: bool,
}

struct FaceBuilder<'a> {
    tri: &'a Triangulation,
    sets: Vec<(&'a ChordSet, &'a [i64])>,
    merged: Vec<i64>,
    nodes: std::collections::HashMap<NodeId, usize>,
    node_list: Vec<NodeId>,
    edges: Vec<(usize, usize, EdgeKind)>,
}

impl<'a> FaceBuilder<'a> {
    fn new(
        tri: &'a Triangulation,
        set0: &'a ChordSet,
        w0: &'a [i64],
        set1: Option<&'a ChordSet>,
        w1: Option<&'a [i64]>,
    ) -> Self {
        let mut sets = vec![(set0, w0)];
        if let Some(s1) = set1 {
            sets.push((s1, w1.unwrap()));
        }
        let merged = (0..tri.n_edges())
            .map(|e| sets.iter().map(|(_, w)| w[e].max(0)).sum())
            .collect();
        FaceBuilder {
            tri,
            sets,
            merged,
            nodes: std::collections::HashMap::new(),
            node_list: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn node(&mut self, id: NodeId) -> usize {
        if let Some(&n) = self.nodes.get(&id) {
            return n;
        }
        let n = self.node_list.len();
        self.node_list.push(id);
        self.nodes.insert(id, n);
        n
    }

    fn add_edge(&mut self, a: usize, b: usize, kind: EdgeKind) -> usize {
        self.edges.push((a, b, kind));
        self.edges.len() - 1
    }

    /// Merged position of `owner`'s own crossing `pos` along `slot`.
    fn merge_side_pos(&self, owner: usize, slot: usize, pos: i64) -> i64 {
        if self.sets.len() == 1 {
            return pos;
        }
        let e = self.tri.edge_of_slot(slot);
        let is_fwd = self.tri.slots_of_edge(e)[0] == slot;
        let other_count = self.sets[1 - owner].1[e].max(0);
        let first = owner == 0;
        if is_fwd == first {
            pos
        } else {
            pos + other_count
        }
    }

    fn build(mut self) -> Built {
        let tri = self.tri;
        let n_tri = tri.n_triangles();

        // ---- merged corner entry tables -------------------------------
        // Per corner slot (3t + c): ordered list of (owner, own_rank).
        let mut corner_entries: Vec<Vec<(u8, usize)>> = vec![Vec::new(); tri.n_slots()];
        for t in 0..n_tri {
            for c in 0..3 {
                // (class, key, owner, own_rank): class 0 leading parallel,
                // 1 terminals by descending merged side position, 2 trailing.
                let mut entries: Vec<(u8, i64, u8, usize)> = Vec::new();
                for owner in 0..self.sets.len() {
                    let weights = self.sets[owner].1;
                    let parallel_here = |i: usize| -> bool {
                        let slot = 3 * t + i;
                        let e = tri.edge_of_slot(slot);
                        weights[e] == -1 && tri.slots_of_edge(e)[0] == slot
                    };
                    let mut rank = 0usize;
                    if parallel_here((c + 1) % 3) {
                        entries.push((0, 0, owner as u8, rank));
                        rank += 1;
                    }
                    let data = Lamination::triangle_data_at(tri, weights, t).expect("validated");
                    if let Some((tc, count)) = data.terminal {
                        if tc == c {
                            let lead = data.corners[(c + 1) % 3];
                            for r in 0..count as usize {
                                let m = count as usize - 1 - r;
                                let merged =
                                    self.merge_side_pos(owner, 3 * t + c, lead + m as i64);
                                entries.push((1, -merged, owner as u8, rank));
                                rank += 1;
                            }
                        }
                    }
                    if parallel_here((c + 2) % 3) {
                        entries.push((2, 0, owner as u8, rank));
                    }
                }
                entries.sort_by_key(|&(class, key, owner, _)| (class, key, owner));
                corner_entries[3 * t + c] = entries
                    .into_iter()
                    .map(|(_, _, owner, own)| (owner, own))
                    .collect();
            }
        }
        let merged_rank = |ce: &Vec<Vec<(u8, usize)>>, t: usize, c: usize, owner: u8, own: usize| {
            ce[3 * t + c]
                .iter()
                .position(|&x| x == (owner, own))
                .expect("entry present")
        };

        // ---- cyclic coordinates per triangle --------------------------
        // Walk: side0, corner2, side1, corner0, side2, corner1.
        let mut side_base = vec![[0i64; 3]; n_tri];
        let mut corner_base = vec![[0i64; 3]; n_tri];
        let mut cycle_len = vec![0i64; n_tri];
        for t in 0..n_tri {
            let mut acc = 0i64;
            for i in 0..3 {
                side_base[t][i] = acc;
                acc += self.merged[tri.edge_of_slot(3 * t + i)].max(0);
                let c = (i + 2) % 3;
                corner_base[t][c] = acc;
                acc += corner_entries[3 * t + c].len() as i64;
            }
            cycle_len[t] = acc;
        }
        let coord_of = |builder: &FaceBuilder, owner: usize, pt: Pt| -> (usize, i64) {
            match pt {
                Pt::Side { slot, pos } => {
                    let t = slot / 3;
                    let i = slot % 3;
                    (t, side_base[t][i] + builder.merge_side_pos(owner, slot, pos))
                }
                Pt::Corner { tri: t, corner, rank } => (
                    t,
                    corner_base[t][corner]
                        + merged_rank(&corner_entries, t, corner, owner as u8, rank) as i64,
                ),
            }
        };

        // ---- crossings -------------------------------------------------
        // Cyclic interval membership: x strictly inside (lo, hi) going ccw.
        let inside = |x: i64, lo: i64, hi: i64| -> bool {
            if lo < hi {
                lo < x && x < hi
            } else {
                x > lo || x < hi
            }
        };

        let mut crossings: Vec<(usize, usize)> = Vec::new();
        // Per chord: list of (crossing idx, position key along the chord).
        let mut chord_cross: Vec<Vec<Vec<(usize, i64)>>> = self
            .sets
            .iter()
            .map(|(s, _)| vec![Vec::new(); s.chords.len()])
            .collect();
        // u-endpoint flags per crossing: true when the blue endpoint inside
        // (red.a, red.b) is blue's `a` endpoint.
        let mut cross_u_is_a: Vec<bool> = Vec::new();

        if self.sets.len() == 2 {
            let mut per_tri: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new()); n_tri];
            for (ci, ch) in self.sets[0].0.chords.iter().enumerate() {
                per_tri[ch.tri].0.push(ci);
            }
            for (ci, ch) in self.sets[1].0.chords.iter().enumerate() {
                per_tri[ch.tri].1.push(ci);
            }
            for t in 0..n_tri {
                let n = cycle_len[t];
                for &ri in &per_tri[t].0 {
                    let rc = self.sets[0].0.chords[ri];
                    let (_, ra) = coord_of(&self, 0, rc.a);
                    let (_, rb) = coord_of(&self, 0, rc.b);
                    for &bi in &per_tri[t].1 {
                        let bc = self.sets[1].0.chords[bi];
                        let (_, ba) = coord_of(&self, 1, bc.a);
                        let (_, bb) = coord_of(&self, 1, bc.b);
                        let a_in = inside(ba, ra, rb);
                        let b_in = inside(bb, ra, rb);
                        if a_in != b_in {
                            let idx = crossings.len();
                            crossings.push((ri, bi));
                            cross_u_is_a.push(a_in);
                            // Order along red from ra: ccw distance of the
                            // inside endpoint.
                            let u = if a_in { ba } else { bb };
                            let key_r = (u - ra).rem_euclid(n);
                            chord_cross[0][ri].push((idx, key_r));
                            // Order along blue from ba: the red endpoint
                            // inside (ba, bb).
                            let ra_in = inside(ra, ba, bb);
                            let v = if ra_in { ra } else { rb };
                            let key_b = (v - ba).rem_euclid(n);
                            chord_cross[1][bi].push((idx, key_b));
                        }
                    }
                }
            }
            for owner in 0..2 {
                for list in chord_cross[owner].iter_mut() {
                    list.sort_by_key(|&(_, k)| k);
                }
            }
        }

        // ---- nodes and edges -------------------------------------------
        // Gap chains per edge.
        let mut gaps: Vec<Vec<usize>> = Vec::with_capacity(tri.n_edges());
        for e in tri.edges() {
            let w = self.merged[e];
            let v0 = self.node(NodeId::Vertex { edge: e, end: 0 });
            let v1 = self.node(NodeId::Vertex { edge: e, end: 1 });
            let mut chain = Vec::with_capacity(w as usize + 1);
            let mut prev = v0;
            for k in 0..w {
                let n = self.node(NodeId::EdgeCross { edge: e, k });
                chain.push(self.add_edge(prev, n, EdgeKind::Gap { edge: e }));
                prev = n;
            }
            chain.push(self.add_edge(prev, v1, EdgeKind::Gap { edge: e }));
            gaps.push(chain);
        }

        // Sector chains per corner.
        let mut sectors: Vec<Vec<usize>> = vec![Vec::new(); tri.n_slots()];
        for t in 0..n_tri {
            for c in 0..3 {
                let m = corner_entries[3 * t + c].len();
                let slot_prev = 3 * t + (c + 1) % 3;
                let e_prev = tri.edge_of_slot(slot_prev);
                let v_prev = self.node(NodeId::Vertex {
                    edge: e_prev,
                    end: if tri.slots_of_edge(e_prev)[0] == slot_prev { 1 } else { 0 },
                });
                let slot_next = 3 * t + (c + 2) % 3;
                let e_next = tri.edge_of_slot(slot_next);
                let v_next = self.node(NodeId::Vertex {
                    edge: e_next,
                    end: if tri.slots_of_edge(e_next)[0] == slot_next { 0 } else { 1 },
                });
                let mut chain = Vec::with_capacity(m + 1);
                let mut prev = v_prev;
                for r in 0..m {
                    let n = self.node(NodeId::Entry { tri: t, corner: c, rank: r });
                    chain.push(self.add_edge(prev, n, EdgeKind::Sector { tri: t, corner: c }));
                    prev = n;
                }
                chain.push(self.add_edge(prev, v_next, EdgeKind::Sector { tri: t, corner: c }));
                sectors[3 * t + c] = chain;
            }
        }

        // Strand segments per chord, split at crossings. Half-edge `2i`
        // points out of the edge's `a` node, `2i+1` out of `b`; self-loops
        // (folded configurations) are disambiguated by role, never by node.
        let mut seg_edges: Vec<Vec<Vec<usize>>> = self
            .sets
            .iter()
            .map(|(s, _)| vec![Vec::new(); s.chords.len()])
            .collect();
        // Chord-end half-edges at boundary nodes: node -> (out half, slot of
        // the endpoint if it lies on a side).
        let mut seg_at_node: std::collections::HashMap<usize, Vec<(usize, Option<usize>)>> =
            std::collections::HashMap::new();
        for owner in 0..self.sets.len() {
            let chords = self.sets[owner].0.chords.clone();
            for (ci, ch) in chords.iter().enumerate() {
                let a_node = self.endpoint_node(owner, ch.a, &corner_entries);
                let b_node = self.endpoint_node(owner, ch.b, &corner_entries);
                let mut path = vec![a_node];
                for &(cidx, _) in &chord_cross[owner][ci] {
                    path.push(self.node(NodeId::Cross { idx: cidx }));
                }
                path.push(b_node);
                let mut ids = Vec::with_capacity(path.len() - 1);
                for win in path.windows(2) {
                    ids.push(self.add_edge(win[0], win[1], EdgeKind::Seg { owner: owner as u8 }));
                }
                let slot_of = |pt: Pt| match pt {
                    Pt::Side { slot, .. } => Some(slot),
                    Pt::Corner { .. } => None,
                };
                seg_at_node
                    .entry(a_node)
                    .or_default()
                    .push((2 * ids[0], slot_of(ch.a)));
                seg_at_node
                    .entry(b_node)
                    .or_default()
                    .push((2 * ids[ids.len() - 1] + 1, slot_of(ch.b)));
                seg_edges[owner][ci] = ids;
            }
        }

        // ---- rotations ----------------------------------------------------
        let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); self.node_list.len()];
        for (n, &id) in self.node_list.iter().enumerate() {
            match id {
                NodeId::EdgeCross { edge, k } => {
                    // ccw: forward along the edge, into the forward-slot
                    // triangle, backward, into the backward-slot triangle.
                    let gap_lo = gaps[edge][k as usize]; // this node is its b end
                    let gap_hi = gaps[edge][k as usize + 1]; // a end
                    let fwd_slot = tri.slots_of_edge(edge)[0];
                    let ends = &seg_at_node[&n];
                    debug_assert_eq!(ends.len(), 2);
                    let (seg_f, seg_b) = if ends[0].1 == Some(fwd_slot) {
                        (ends[0].0, ends[1].0)
                    } else {
                        debug_assert_eq!(ends[1].1, Some(fwd_slot));
                        (ends[1].0, ends[0].0)
                    };
                    rotations[n] = vec![2 * gap_hi, seg_f, 2 * gap_lo + 1, seg_b];
                }
                NodeId::Vertex { edge, end } => {
                    let [sf, sb] = tri.slots_of_edge(edge);
                    let (tf, i_f) = (sf / 3, sf % 3);
                    let (tb, i_b) = (sb / 3, sb % 3);
                    if end == 0 {
                        // Start of the forward slot: ccw = gap, forward-side
                        // sector (last of its chain), backward-side sector
                        // (first of its chain).
                        let sec_f = *sectors[3 * tf + (i_f + 1) % 3].last().unwrap();
                        let sec_b = sectors[3 * tb + (i_b + 2) % 3][0];
                        rotations[n] = vec![2 * gaps[edge][0], 2 * sec_f + 1, 2 * sec_b];
                    } else {
                        let sec_f = sectors[3 * tf + (i_f + 2) % 3][0];
                        let sec_b = *sectors[3 * tb + (i_b + 1) % 3].last().unwrap();
                        rotations[n] =
                            vec![2 * *gaps[edge].last().unwrap() + 1, 2 * sec_b + 1, 2 * sec_f];
                    }
                }
                NodeId::Entry { tri: t, corner, rank } => {
                    let chain = &sectors[3 * t + corner];
                    let seg = seg_at_node[&n][0].0;
                    debug_assert_eq!(seg_at_node[&n].len(), 1);
                    rotations[n] = vec![2 * chain[rank + 1], seg, 2 * chain[rank] + 1];
                }
                NodeId::Cross { idx } => {
                    let (ri, bi) = crossings[idx];
                    let pos_r = chord_cross[0][ri]
                        .iter()
                        .position(|&(c, _)| c == idx)
                        .unwrap();
                    let pos_b = chord_cross[1][bi]
                        .iter()
                        .position(|&(c, _)| c == idx)
                        .unwrap();
                    // ccw: toward red a, toward blue's endpoint inside
                    // (red.a, red.b), toward red b, toward the other.
                    let seg_ra = 2 * seg_edges[0][ri][pos_r] + 1;
                    let seg_rb = 2 * seg_edges[0][ri][pos_r + 1];
                    let (seg_bu, seg_bv) = if cross_u_is_a[idx] {
                        (
                            2 * seg_edges[1][bi][pos_b] + 1,
                            2 * seg_edges[1][bi][pos_b + 1],
                        )
                    } else {
                        (
                            2 * seg_edges[1][bi][pos_b + 1],
                            2 * seg_edges[1][bi][pos_b] + 1,
                        )
                    };
                    rotations[n] = vec![seg_ra, seg_bu, seg_rb, seg_bv];
                }
            }
        }

        // ---- faces ------------------------------------------------------
        let graph = Graph {
            edges: self.edges.clone(),
            rotations,
        };
        let n_half = 2 * graph.edges.len();
        let mut face_of = vec![usize::MAX; n_half];
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for h0 in 0..n_half {
            if face_of[h0] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut walk = Vec::new();
            let mut h = h0;
            loop {
                face_of[h] = f;
                walk.push(h);
                h = graph.next_in_face(h);
                if h == h0 {
                    break;
                }
            }
            faces.push(walk);
        }

        // Cusp faces contain only sector edges.
        let is_cusp: Vec<bool> = faces
            .iter()
            .map(|walk| {
                walk.iter()
                    .all(|&h| matches!(graph.kind(h), EdgeKind::Sector { .. }))
            })
            .collect();
        debug_assert_eq!(
            is_cusp.iter().filter(|&&c| c).count(),
            tri.n_punctures(),
            "one cusp face per puncture"
        );

        // ---- pieces: union-find of cells across gaps ---------------------
        let mut parent: Vec<usize> = (0..faces.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let nxt = parent[c];
                parent[c] = r;
                c = nxt;
            }
            r
        }
        for (ei, &(_, _, kind)) in graph.edges.iter().enumerate() {
            if matches!(kind, EdgeKind::Gap { .. }) {
                let f1 = find(&mut parent, face_of[2 * ei]);
                let f2 = find(&mut parent, face_of[2 * ei + 1]);
                debug_assert!(!is_cusp[f1] && !is_cusp[f2]);
                parent[f1] = f2;
            }
        }

        // Piece ids in deterministic order of representative cells.
        let mut piece_id: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut reps = Vec::new();
        for f in 0..faces.len() {
            if is_cusp[f] {
                continue;
            }
            let r = find(&mut parent, f);
            if !piece_id.contains_key(&r) {
                piece_id.insert(r, reps.len());
                reps.push(r);
            }
        }
        let n_pieces = reps.len();
        let piece_of_face = |parent: &mut Vec<usize>,
                             piece_id: &std::collections::HashMap<usize, usize>,
                             f: usize| { piece_id[&find(parent, f)] };

        let mut cells = vec![0usize; n_pieces];
        for f in 0..faces.len() {
            if !is_cusp[f] {
                cells[piece_of_face(&mut parent, &piece_id, f)] += 1;
            }
        }
        let mut gap_count = vec![0usize; n_pieces];
        for (ei, &(_, _, kind)) in graph.edges.iter().enumerate() {
            if matches!(kind, EdgeKind::Gap { .. }) {
                gap_count[piece_of_face(&mut parent, &piece_id, face_of[2 * ei])] += 1;
            }
        }

        // ---- boundary cycles --------------------------------------------
        // Wall half-edges: all strand sides, plus sector sides on cells.
        let mut is_wall = vec![false; n_half];
        for h in 0..n_half {
            match graph.kind(h) {
                EdgeKind::Seg { .. } => is_wall[h] = true,
                EdgeKind::Sector { .. } => is_wall[h] = !is_cusp[face_of[h]],
                EdgeKind::Gap { .. } => {}
            }
        }
        let succ = |graph: &Graph, face_of: &Vec<usize>, mut h: usize| -> usize {
            loop {
                h = graph.next_in_face(h);
                if matches!(graph.kind(h), EdgeKind::Gap { .. }) {
                    h = Graph::twin(h);
                    let _ = face_of;
                    continue;
                }
                return h;
            }
        };
        let mut circle_count = vec![0usize; n_pieces];
        let mut bigon_flags = vec![false; n_pieces];
        let mut visited = vec![false; n_half];
        for h0 in 0..n_half {
            if !is_wall[h0] || visited[h0] {
                continue;
            }
            let piece = piece_of_face(&mut parent, &piece_id, face_of[h0]);
            circle_count[piece] += 1;
            let mut seg_items: Vec<u8> = Vec::new();
            let mut h = h0;
            loop {
                visited[h] = true;
                if let EdgeKind::Seg { owner } = graph.kind(h) {
                    seg_items.push(owner);
                }
                h = succ(&graph, &face_of, h);
                if h == h0 {
                    break;
                }
            }
            // Innermost bigon / half-bigon candidate: exactly two strand
            // items of different owners on this circle. Owner runs can be
            // split by crossings elsewhere only if more items appear, so two
            // items mean two single segments.
            if self.sets.len() == 2 && seg_items.len() == 2 && seg_items[0] != seg_items[1] {
                bigon_flags[piece] = true;
            }
        }

        // ---- punctures: enclosed and visits --------------------------------
        let mut enclosed = vec![0usize; n_pieces];
        let mut visits = vec![0usize; n_pieces];
        let mut touched: Vec<std::collections::BTreeSet<usize>> =
            vec![std::collections::BTreeSet::new(); n_pieces];
        let cell_side_piece = |parent: &mut Vec<usize>,
                               piece_id: &std::collections::HashMap<usize, usize>,
                               face_of: &Vec<usize>,
                               is_cusp: &Vec<bool>,
                               edge_id: usize| {
            let f = if is_cusp[face_of[2 * edge_id]] {
                face_of[2 * edge_id + 1]
            } else {
                face_of[2 * edge_id]
            };
            piece_id[&find(parent, f)]
        };
        for v in 0..tri.n_punctures() {
            let link = tri.vertex_link(v);
            let total_entries: usize = link
                .iter()
                .map(|&(t, c)| corner_entries[3 * t + c].len())
                .sum();
            if total_entries == 0 {
                let (t, c) = link[0];
                let p = cell_side_piece(
                    &mut parent,
                    &piece_id,
                    &face_of,
                    &is_cusp,
                    sectors[3 * t + c][0],
                );
                enclosed[p] += 1;
                touched[p].insert(v);
            } else {
                // Sector runs between consecutive entries around the link.
                // Concatenate sector edge ids per corner; a run ends at each
                // entry.
                let mut run_pieces = Vec::new();
                for &(t, c) in &link {
                    let m = corner_entries[3 * t + c].len();
                    for j in 0..=m {
                        let p = cell_side_piece(
                            &mut parent,
                            &piece_id,
                            &face_of,
                            &is_cusp,
                            sectors[3 * t + c][j],
                        );
                        if j < m {
                            // run ends after sector j (an entry follows)
                            run_pieces.push((p, true));
                        } else {
                            run_pieces.push((p, false));
                        }
                    }
                }
                // Walk cyclically, splitting at entries.
                let mut idx = 0usize;
                // rotate so we start right after an entry
                let start = run_pieces
                    .iter()
                    .position(|&(_, ends)| ends)
                    .map(|i| i + 1)
                    .unwrap_or(0);
                let n = run_pieces.len();
                let mut seen_runs = 0usize;
                let mut current: Option<usize> = None;
                while idx < n {
                    let (p, ends) = run_pieces[(start + idx) % n];
                    if current.is_none() {
                        current = Some(p);
                    }
                    debug_assert_eq!(current, Some(p), "run spans one piece");
                    if ends {
                        visits[p] += 1;
                        touched[p].insert(v);
                        seen_runs += 1;
                        current = None;
                    }
                    idx += 1;
                }
                debug_assert_eq!(seen_runs, total_entries);
            }
        }

        // ---- assemble -----------------------------------------------------
        let mut pieces = Vec::with_capacity(n_pieces);
        let mut has_bigon = false;
        for p in 0..n_pieces {
            let chi = cells[p] as i64 - gap_count[p] as i64;
            let piece = Piece {
                chi,
                boundary_circles: circle_count[p],
                enclosed_punctures: enclosed[p],
                visits: visits[p],
                punctures_touched: touched[p].len(),
                is_disk: chi == 1 && enclosed[p] == 0,
                is_once_punctured_disk: chi == 0 && enclosed[p] == 1,
            };
            if bigon_flags[p]
                && piece.chi == 1
                && piece.enclosed_punctures == 0
                && piece.visits <= 1
                && piece.boundary_circles == 1
            {
                has_bigon = true;
            }
            pieces.push(piece);
        }
        pieces.sort_by(|a, b| {
            (a.chi, a.boundary_circles, a.enclosed_punctures, a.visits).cmp(&(
                b.chi,
                b.boundary_circles,
                b.enclosed_punctures,
                b.visits,
            ))
        });

        Built {
            crossings,
            cut: CutDecomposition { pieces },
            has_bigon,
        }
    }

    fn endpoint_node(
        &mut self,
        owner: usize,
        pt: Pt,
        corner_entries: &[Vec<(u8, usize)>],
    ) -> usize {
        match pt {
            Pt::Side { slot, pos } => {
                let merged = self.merge_side_pos(owner, slot, pos);
                let e = self.tri.edge_of_slot(slot);
                let k = if self.tri.slots_of_edge(e)[0] == slot {
                    merged
                } else {
                    self.merged[e] - 1 - merged
                };
                self.node(NodeId::EdgeCross { edge: e, k })
            }
            Pt::Corner { tri: t, corner, rank } => {
                let mr = corner_entries[3 * t + corner]
                    .iter()
                    .position(|&x| x == (owner as u8, rank))
                    .expect("entry present");
                self.node(NodeId::Entry { tri: t, corner, rank: mr })
            }
        }
    }
}

struct Graph {
    edges: Vec<(usize, usize, EdgeKind)>,
    rotations: Vec<Vec<usize>>,
}

impl Graph {
    fn head(&self, h: usize) -> usize {
        let (a, b, _) = self.edges[h / 2];
        if h % 2 == 0 {
            b
        } else {
            a
        }
    }
    fn twin(h: usize) -> usize {
        h ^ 1
    }
    fn kind(&self, h: usize) -> EdgeKind {
        self.edges[h / 2].2
    }
    /// Next half-edge of the face on the left of `h`.
    fn next_in_face(&self, h: usize) -> usize {
        let t = Self::twin(h);
        let v = self.head(h);
        let rot = &self.rotations[v];
        let pos = rot.iter().position(|&x| x == t).expect("twin in rotation");
        rot[(pos + rot.len() - 1) % rot.len()]
    }
}

/// Essentiality of a single traced component: cut along it alone and look
/// for a trivial or peripheral side.
pub(crate) fn check_component_essential(single: &Lamination, kind: ComponentKind) -> Result<()> {
    let ov = overlay(single, None, None)?;
    for p in &ov.cut.pieces {
        match kind {
            ComponentKind::Arc => {
                if p.chi == 1 && p.visits == 1 && p.enclosed_punctures == 0 {
                    return Err(Error::InessentialComponent);
                }
            }
            ComponentKind::Curve => {
                if p.chi == 1 && p.visits == 0 && p.enclosed_punctures == 0 {
                    return Err(Error::InessentialComponent);
                }
                if p.chi == 0 && p.enclosed_punctures == 1 && p.visits == 0 {
                    return Err(Error::PeripheralComponent);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::canonical::canonical_surface;
    use crate::surface::lamination::validate_lamination;

    #[test]
    fn empty_overlay_reproduces_surface() {
        for id in ["S_1_1", "S_0_4", "S_0_5", "S_2_1"] {
            let tri = canonical_surface(id).unwrap();
            let empty = Lamination::empty(tri.clone());
            let ov = overlay(&empty, None, None).unwrap();
            assert_eq!(ov.cut.pieces.len(), 1, "{id}");
            let p = &ov.cut.pieces[0];
            // Compact completion: blowing up punctures keeps chi.
            assert_eq!(p.chi, tri.euler_characteristic(), "{id}");
            assert_eq!(p.enclosed_punctures, tri.n_punctures(), "{id}");
            assert_eq!(p.visits, 0);
            assert_eq!(p.boundary_circles, tri.n_punctures(), "{id}");
        }
    }

    #[test]
    fn cut_torus_along_curve() {
        // (0,1,1) on S_1_1 is a single essential curve; its complement is a
        // compact genus-0 piece with three boundary circles.
        let tri = canonical_surface("S_1_1").unwrap();
        let lam = validate_lamination(&tri, vec![0, 1, 1]).unwrap();
        assert!(lam.is_curve());
        let ov = overlay(&lam, None, None).unwrap();
        assert_eq!(ov.cut.pieces.len(), 1);
        let p = &ov.cut.pieces[0];
        assert_eq!(p.chi, -1);
        assert_eq!(p.boundary_circles, 3);
        assert_eq!(p.enclosed_punctures, 1);
        assert_eq!(p.visits, 0);
    }

    #[test]
    fn cut_torus_along_edge_arc() {
        // An edge-parallel arc cuts the once-punctured torus into one
        // annulus piece visited twice by the puncture.
        let tri = canonical_surface("S_1_1").unwrap();
        let lam = validate_lamination(&tri, vec![-1, 0, 0]).unwrap();
        assert!(lam.is_arc());
        let ov = overlay(&lam, None, None).unwrap();
        assert_eq!(ov.cut.pieces.len(), 1);
        let p = &ov.cut.pieces[0];
        assert_eq!(p.chi, 0);
        assert_eq!(p.visits, 2);
        assert_eq!(p.enclosed_punctures, 0);
        assert_eq!(p.boundary_circles, 2);
    }
}
