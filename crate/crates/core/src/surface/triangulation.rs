//! Ideal triangulations of punctured surfaces.
//!
//! A triangulation is a list of oriented triangles. Each triangle has three
//! sides in counterclockwise order; a side is a *slot* (slot `3*t + i` is
//! side `i` of triangle `t`). Every edge of the surface occupies exactly two
//! slots, once in each direction, and glued sides are always identified
//! reversing direction, so the glued complex is oriented by construction.
//! Punctures are the ideal vertices; corner `c` of a triangle is the corner
//! opposite side `c`.

use crate::error::{Error, Result};
use std::sync::Arc;

pub type Slot = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub genus: u32,
    pub punctures: u32,
}

impl Signature {
    pub fn new(genus: u32, punctures: u32) -> Self {
        Signature { genus, punctures }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }
}

/// One side of a triangle: which edge it carries and whether it runs along
/// the edge's canonical direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SideRef {
    pub edge: usize,
    pub forward: bool,
}

impl SideRef {
    pub fn fwd(edge: usize) -> Self {
        SideRef { edge, forward: true }
    }
    pub fn rev(edge: usize) -> Self {
        SideRef { edge, forward: false }
    }
}

#[derive(Debug, Clone)]
pub struct Triangulation {
    /// Per-slot edge index, length `3 * n_triangles`.
    slot_edge: Vec<u32>,
    /// Per-slot direction flag.
    slot_forward: Vec<bool>,
    /// Gluing involution on slots (derived: the other slot of the same edge).
    glue: Vec<u32>,
    /// The two slots of each edge; `[forward slot, backward slot]`.
    edge_slots: Vec<[u32; 2]>,
    /// Vertex class of each corner (corner `c` of triangle `t` at index `3t+c`).
    corner_vertex: Vec<u32>,
    n_vertices: usize,
    signature: Signature,
    id: Option<String>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.slot_edge == other.slot_edge && self.slot_forward == other.slot_forward
    }
}
impl Eq for Triangulation {}

impl Triangulation {
    /// Build from oriented triangle data: each triangle lists its three sides
    /// in counterclockwise order. Every edge index in `0..n_edges` must occur
    /// exactly once forward and once backward.
    pub fn from_oriented(triangles: Vec<[SideRef; 3]>, id: Option<String>) -> Result<Self> {
        let n_tri = triangles.len();
        if n_tri == 0 || n_tri % 2 != 0 {
            return Err(Error::BadGluing);
        }
        let n_slots = 3 * n_tri;
        let n_edges = n_slots / 2;
        let mut slot_edge = vec![u32::MAX; n_slots];
        let mut slot_forward = vec![false; n_slots];
        let mut edge_slots = vec![[u32::MAX; 2]; n_edges];
        for (t, tri) in triangles.iter().enumerate() {
            for (i, side) in tri.iter().enumerate() {
                let s = 3 * t + i;
                if side.edge >= n_edges {
                    return Err(Error::BadGluing);
                }
                let which = if side.forward { 0 } else { 1 };
                if edge_slots[side.edge][which] != u32::MAX {
                    return Err(Error::BadGluing);
                }
                edge_slots[side.edge][which] = s as u32;
                slot_edge[s] = side.edge as u32;
                slot_forward[s] = side.forward;
            }
        }
        if edge_slots.iter().any(|p| p[0] == u32::MAX || p[1] == u32::MAX) {
            return Err(Error::BadGluing);
        }
        let mut glue = vec![0u32; n_slots];
        for pair in &edge_slots {
            glue[pair[0] as usize] = pair[1];
            glue[pair[1] as usize] = pair[0];
        }
        if glue.iter().enumerate().any(|(s, &g)| g as usize == s) {
            return Err(Error::BadGluing);
        }

        let mut tri = Triangulation {
            slot_edge,
            slot_forward,
            glue,
            edge_slots,
            corner_vertex: Vec::new(),
            n_vertices: 0,
            signature: Signature::new(0, 0),
            id,
        };
        tri.check_connected()?;
        tri.compute_vertices();

        let chi = -(n_tri as i64) / 2;
        if chi >= 0 {
            return Err(Error::NonNegativeEuler(chi));
        }
        let b = tri.n_vertices as i64;
        if b < 1 {
            return Err(Error::NoPunctures);
        }
        // chi = 2 - 2g - b
        let two_g = 2 - b - chi;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::BadGluing);
        }
        tri.signature = Signature::new((two_g / 2) as u32, b as u32);
        Ok(tri)
    }

    /// Build from an explicit slot table: triangles as triples of slot ids and
    /// a gluing list. A gluing `(x, y, reversed=false)` identifies slot `x`
    /// forward with slot `y` backward (the orientation-compatible way);
    /// `reversed=true` identifies them forward-with-forward, which forces one
    /// of the two triangles to be reflected. If no global assignment of
    /// reflections exists the gluing is non-orientable.
    pub fn from_tables(
        triangles: &[[u64; 3]],
        gluings: &[(u64, u64, bool)],
        id: Option<String>,
    ) -> Result<Self> {
        let n_tri = triangles.len();
        let n_slots = 3 * n_tri;
        if gluings.len() * 2 != n_slots {
            return Err(Error::BadGluing);
        }
        let mut slot_of = std::collections::HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for (i, &raw) in tri.iter().enumerate() {
                if slot_of.insert(raw, 3 * t + i).is_some() {
                    return Err(Error::BadGluing);
                }
            }
        }
        let lookup = |raw: u64| -> Result<usize> {
            slot_of.get(&raw).copied().ok_or(Error::BadGluing)
        };

        // Solve for per-triangle reflection flags.
        let mut partner = vec![(usize::MAX, false); n_slots];
        for &(a, b, reversed) in gluings {
            let (sa, sb) = (lookup(a)?, lookup(b)?);
            if sa == sb || partner[sa].0 != usize::MAX || partner[sb].0 != usize::MAX {
                return Err(Error::BadGluing);
            }
            partner[sa] = (sb, reversed);
            partner[sb] = (sa, reversed);
        }
        let mut flag = vec![None::<bool>; n_tri];
        for start in 0..n_tri {
            if flag[start].is_some() {
                continue;
            }
            flag[start] = Some(false);
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                let ft = flag[t].unwrap();
                for i in 0..3 {
                    let (p, reversed) = partner[3 * t + i];
                    let u = p / 3;
                    // A compatible (non-reversed) gluing wants equal flags.
                    let want = ft ^ reversed;
                    match flag[u] {
                        None => {
                            flag[u] = Some(want);
                            stack.push(u);
                        }
                        Some(fu) if fu != want => return Err(Error::NonOrientable),
                        _ => {}
                    }
                }
            }
        }

        // Re-express with reflections applied: reflected triangles reverse
        // their side order (side i -> side 2-i) and every side direction.
        let reindex = |t: usize, i: usize| -> usize {
            if flag[t].unwrap() {
                3 * t + (2 - i)
            } else {
                3 * t + i
            }
        };
        // Assign edge ids per gluing orbit and directions: in the reflected
        // ccw structure every gluing is direction-reversing.
        let mut sides = vec![SideRef::fwd(usize::MAX); n_slots];
        let mut edge = 0usize;
        for &(a, b, _) in gluings {
            let (sa, sb) = (lookup(a)?, lookup(b)?);
            let (ta, ia) = (sa / 3, sa % 3);
            let (tb, ib) = (sb / 3, sb % 3);
            sides[reindex(ta, ia)] = SideRef::fwd(edge);
            sides[reindex(tb, ib)] = SideRef::rev(edge);
            edge += 1;
        }
        let tris: Vec<[SideRef; 3]> = (0..n_tri)
            .map(|t| [sides[3 * t], sides[3 * t + 1], sides[3 * t + 2]])
            .collect();
        Self::from_oriented(tris, id)
    }

    fn check_connected(&self) -> Result<()> {
        let n_tri = self.n_triangles();
        let mut seen = vec![false; n_tri];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for i in 0..3 {
                let u = self.glue[3 * t + i] as usize / 3;
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        if count == n_tri {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    fn compute_vertices(&mut self) {
        let n = self.n_slots();
        let mut vertex = vec![u32::MAX; n];
        let mut next_v = 0u32;
        for start in 0..n {
            if vertex[start] != u32::MAX {
                continue;
            }
            let mut c = start;
            loop {
                vertex[c] = next_v;
                c = self.next_corner_around_vertex(c / 3, c % 3);
                if c == start {
                    break;
                }
            }
            next_v += 1;
        }
        self.corner_vertex = vertex;
        self.n_vertices = next_v as usize;
    }

    /// Rotate around the vertex at corner `(t, c)`: cross the flanking side
    /// `(t, c+2)` and land at the corresponding corner of the neighbor.
    pub fn next_corner_around_vertex(&self, t: usize, c: usize) -> Slot {
        let out = 3 * t + (c + 2) % 3;
        let p = self.glue[out] as usize;
        let (tp, ip) = (p / 3, p % 3);
        3 * tp + (ip + 2) % 3
    }

    pub fn n_triangles(&self) -> usize {
        self.slot_edge.len() / 3
    }
    pub fn n_slots(&self) -> usize {
        self.slot_edge.len()
    }
    pub fn n_edges(&self) -> usize {
        self.edge_slots.len()
    }
    pub fn n_punctures(&self) -> usize {
        self.n_vertices
    }
    pub fn signature(&self) -> Signature {
        self.signature
    }
    pub fn id(&self) -> Option<&str> {
        self.id.as_deref()
    }
    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub fn euler_characteristic(&self) -> i64 {
        -(self.n_triangles() as i64) / 2
    }

    /// Non-sporadic means `2g + b >= 5`.
    pub fn is_non_sporadic(&self) -> bool {
        2 * self.signature.genus + self.signature.punctures >= 5
    }

    pub fn glue(&self, s: Slot) -> Slot {
        self.glue[s] as usize
    }
    pub fn edge_of_slot(&self, s: Slot) -> usize {
        self.slot_edge[s] as usize
    }
    pub fn slot_is_forward(&self, s: Slot) -> bool {
        self.slot_forward[s]
    }
    pub fn slots_of_edge(&self, e: usize) -> [Slot; 2] {
        [self.edge_slots[e][0] as usize, self.edge_slots[e][1] as usize]
    }
    pub fn side(&self, t: usize, i: usize) -> SideRef {
        let s = 3 * t + i;
        SideRef {
            edge: self.slot_edge[s] as usize,
            forward: self.slot_forward[s],
        }
    }
    pub fn triangle_edges(&self, t: usize) -> [usize; 3] {
        [
            self.slot_edge[3 * t] as usize,
            self.slot_edge[3 * t + 1] as usize,
            self.slot_edge[3 * t + 2] as usize,
        ]
    }
    pub fn vertex_at_corner(&self, t: usize, c: usize) -> usize {
        self.corner_vertex[3 * t + c] as usize
    }

    /// The cyclic list of corners around vertex `v`, starting from the lowest
    /// corner slot.
    pub fn vertex_link(&self, v: usize) -> Vec<(usize, usize)> {
        let start = (0..self.n_slots())
            .find(|&c| self.corner_vertex[c] as usize == v)
            .expect("vertex exists");
        let mut out = Vec::new();
        let mut c = start;
        loop {
            out.push((c / 3, c % 3));
            c = self.next_corner_around_vertex(c / 3, c % 3);
            if c == start {
                break;
            }
        }
        out
    }

    /// Ends of edge `e` as `(vertex at start, vertex at end)` of its forward slot.
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        let s = self.edge_slots[e][0] as usize;
        let (t, i) = (s / 3, s % 3);
        // side i runs from corner (i+1) to corner (i+2)
        (
            self.vertex_at_corner(t, (i + 1) % 3),
            self.vertex_at_corner(t, (i + 2) % 3),
        )
    }

    pub fn is_flippable(&self, e: usize) -> bool {
        let [x, y] = self.slots_of_edge(e);
        x / 3 != y / 3
    }

    /// Flip edge `e`. Returns the new triangulation and the coordinate
    /// transition. The transition is an involution on weights; on the slot
    /// level flipping twice swaps the two triangle labels of the quad.
    pub fn flip(&self, e: usize) -> Result<(Triangulation, FlipTransition)> {
        if e >= self.n_edges() {
            return Err(Error::NotFlippable(e));
        }
        let [x, y] = self.slots_of_edge(e);
        let (t, i) = (x / 3, x % 3);
        let (u, j) = (y / 3, y % 3);
        if t == u {
            return Err(Error::NotFlippable(e));
        }
        let a = 3 * t + (i + 1) % 3;
        let b = 3 * t + (i + 2) % 3;
        let c = 3 * u + (j + 1) % 3;
        let d = 3 * u + (j + 2) % 3;
        let quad = [
            self.slot_edge[a] as usize,
            self.slot_edge[b] as usize,
            self.slot_edge[c] as usize,
            self.slot_edge[d] as usize,
        ];

        // New triangles: t' = (e', B, C), u' = (e'rev, D, A).
        let mut slot_edge = self.slot_edge.clone();
        let mut slot_forward = self.slot_forward.clone();
        let move_side = |se: &mut Vec<u32>, sf: &mut Vec<bool>, from: Slot, to: Slot, old_e: &Vec<u32>, old_f: &Vec<bool>| {
            se[to] = old_e[from];
            sf[to] = old_f[from];
        };
        let old_e = self.slot_edge.clone();
        let old_f = self.slot_forward.clone();
        // Diagonal keeps its slots; give it a fresh canonical direction.
        slot_edge[x] = e as u32;
        slot_forward[x] = true;
        slot_edge[y] = e as u32;
        slot_forward[y] = false;
        move_side(&mut slot_edge, &mut slot_forward, b, a, &old_e, &old_f); // B -> (t, i+1)
        move_side(&mut slot_edge, &mut slot_forward, c, b, &old_e, &old_f); // C -> (t, i+2)
        move_side(&mut slot_edge, &mut slot_forward, d, c, &old_e, &old_f); // D -> (u, j+1)
        move_side(&mut slot_edge, &mut slot_forward, a, d, &old_e, &old_f); // A -> (u, j+2)

        let n_tri = self.n_triangles();
        let tris: Vec<[SideRef; 3]> = (0..n_tri)
            .map(|tt| {
                [0, 1, 2].map(|k| SideRef {
                    edge: slot_edge[3 * tt + k] as usize,
                    forward: slot_forward[3 * tt + k],
                })
            })
            .collect();
        let new_tri = Triangulation::from_oriented(tris, None)?;
        Ok((
            new_tri,
            FlipTransition {
                edge: e,
                quad,
            },
        ))
    }

    /// All edges, as indices.
    pub fn edges(&self) -> std::ops::Range<usize> {
        0..self.n_edges()
    }

    pub fn into_arc(self) -> Arc<Triangulation> {
        Arc::new(self)
    }
}

/// The piecewise-linear coordinate change of a single flip: the flipped
/// edge's weight becomes `max(a+c, b+d) - e` where `a, b, c, d` are the quad
/// sides in cyclic order; all other weights are fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipTransition {
    pub edge: usize,
    /// Edge indices of the quad sides `[A, B, C, D]`; `(A, C)` and `(B, D)`
    /// are the opposite pairs.
    pub quad: [usize; 4],
}

impl FlipTransition {
    pub fn apply(&self, weights: &[i64]) -> Result<Vec<i64>> {
        let mut out = weights.to_vec();
        out[self.edge] = self.new_weight(weights)?;
        Ok(out)
    }

    pub fn new_weight(&self, weights: &[i64]) -> Result<i64> {
        let [a, b, c, d] = self.quad;
        let ac = weights[a].checked_add(weights[c]).ok_or(Error::Overflow)?;
        let bd = weights[b].checked_add(weights[d]).ok_or(Error::Overflow)?;
        ac.max(bd).checked_sub(weights[self.edge]).ok_or(Error::Overflow)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::canonical::canonical_surface;

    #[test]
    fn canonical_s11_shape() {
        let t = canonical_surface("S_1_1").unwrap();
        assert_eq!(t.n_triangles(), 2);
        assert_eq!(t.n_edges(), 3);
        assert_eq!(t.euler_characteristic(), -1);
        assert_eq!(t.n_punctures(), 1);
        assert_eq!(t.signature(), Signature::new(1, 1));
        assert!(!t.is_non_sporadic());
        for e in t.edges() {
            assert!(t.is_flippable(e));
        }
    }

    #[test]
    fn canonical_s04_shape() {
        let t = canonical_surface("S_0_4").unwrap();
        assert_eq!(t.n_triangles(), 4);
        assert_eq!(t.n_edges(), 6);
        assert_eq!(t.euler_characteristic(), -2);
        assert_eq!(t.signature(), Signature::new(0, 4));
    }

    #[test]
    fn canonical_s05_is_non_sporadic() {
        let t = canonical_surface("S_0_5").unwrap();
        assert_eq!(t.signature(), Signature::new(0, 5));
        assert_eq!(t.euler_characteristic(), -3);
        assert!(t.is_non_sporadic());
        let t21 = canonical_surface("S_2_1").unwrap();
        assert_eq!(t21.signature(), Signature::new(2, 1));
        assert!(t21.is_non_sporadic());
    }

    #[test]
    fn flip_is_involution_on_structure_up_to_triangle_swap() {
        let t = canonical_surface("S_1_1").unwrap();
        for e in t.edges() {
            let (t1, tr1) = t.flip(e).unwrap();
            let (t2, _tr2) = t1.flip(e).unwrap();
            assert_eq!(t2.signature(), t.signature());
            // Coordinates come back exactly.
            let w = vec![2, 3, 4];
            let w1 = tr1.apply(&w).unwrap();
            let (_, tr2) = t1.flip(e).unwrap();
            let w2 = tr2.apply(&w1).unwrap();
            assert_eq!(w, w2);
            let _ = t2;
        }
    }

    #[test]
    fn non_orientable_table_rejected() {
        // Two triangles glued along all three sides with one identification
        // forced direction-preserving: a Klein-bottle-like gluing.
        let tris = [[0u64, 1, 2], [3, 4, 5]];
        let glu_ok = [(0u64, 3u64, false), (1, 4, false), (2, 5, false)];
        assert!(Triangulation::from_tables(&tris, &glu_ok, None).is_ok());
        let glu_bad = [(0u64, 3u64, true), (1, 4, false), (2, 5, false)];
        assert_eq!(
            Triangulation::from_tables(&tris, &glu_bad, None).unwrap_err(),
            Error::NonOrientable
        );
    }

    #[test]
    fn disconnected_rejected() {
        // Two once-punctured tori, not glued to each other.
        let s11 = |off: usize| {
            [
                [SideRef::fwd(off), SideRef::fwd(off + 1), SideRef::fwd(off + 2)],
                [SideRef::rev(off), SideRef::rev(off + 1), SideRef::rev(off + 2)],
            ]
        };
        let mut tris = Vec::new();
        tris.extend_from_slice(&s11(0));
        tris.extend_from_slice(&s11(3));
        assert_eq!(
            Triangulation::from_oriented(tris, None).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn sphere_with_two_punctures_rejected() {
        // chi >= 0 has no ideal triangulation in our format with t >= 2;
        // the builder rejects via signature arithmetic. Build S_0_2 attempt:
        // gluing two triangles as a "pillow" with a doubled edge fails earlier.
        // Instead check the signature gate directly.
        use crate::surface::canonical::build_triangulation;
        assert!(build_triangulation(Signature::new(0, 2)).is_err());
        assert!(build_triangulation(Signature::new(0, 1)).is_err());
        assert!(build_triangulation(Signature::new(1, 0)).is_err());
    }
}
