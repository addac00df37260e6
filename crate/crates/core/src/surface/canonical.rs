//! Canonical triangulations per surface signature, addressable by string ids
//! `"S_g_b"` (genus `g`, `b` punctures). Punctured disks `"D_i"` are accepted
//! as aliases for `S_0_{i+1}`; puncture `0` is the distinguished boundary
//! puncture and the braid strands are punctures `1..=i`.
//!
//! Layouts:
//! - `S_0_b` (`b >= 3`): the double of a `b`-gon. Punctures `0..b-1` sit on
//!   the rim; rim edge `r_j` joins `j` to `j+1 (mod b)`; both polygon copies
//!   are fan-triangulated from puncture `0` by diagonals `f_j` (front) and
//!   `b_j` (back), `j = 2..=b-2`.
//! - `S_g_b` (`g >= 1`): a fan-triangulated `4g + 2(b-1)`-gon with boundary
//!   word `a_1 b_1 a_1' b_1' ... c_j c_j' ...`.
//! - `S_1_1` is the square case of the latter: two triangles, three edges.

use super::triangulation::{SideRef, Signature, Triangulation};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Edge ids of the `S_0_n` polygon double.
pub struct SphereLayout {
    pub n: usize,
}

impl SphereLayout {
    pub fn rim(&self, j: usize) -> usize {
        debug_assert!(j < self.n);
        j
    }
    pub fn front(&self, j: usize) -> usize {
        debug_assert!((2..=self.n - 2).contains(&j));
        self.n + (j - 2)
    }
    pub fn back(&self, j: usize) -> usize {
        debug_assert!((2..=self.n - 2).contains(&j));
        self.n + (self.n - 3) + (j - 2)
    }
    pub fn n_edges(&self) -> usize {
        3 * self.n - 6
    }
}

fn build_sphere(n: usize) -> Result<Triangulation> {
    let lay = SphereLayout { n };
    let mut tris: Vec<[SideRef; 3]> = Vec::with_capacity(2 * (n - 2));
    // Front fan: F_j = (0, j, j+1), j = 1..=n-2.
    for j in 1..=n - 2 {
        let s1 = if j == 1 {
            SideRef::fwd(lay.rim(0))
        } else {
            SideRef::fwd(lay.front(j))
        };
        let s2 = SideRef::fwd(lay.rim(j));
        let s3 = if j + 1 == n - 1 {
            SideRef::fwd(lay.rim(n - 1))
        } else {
            SideRef::rev(lay.front(j + 1))
        };
        tris.push([s1, s2, s3]);
    }
    // Back fan: B_j = (0, j+1, j) as seen from the front, j = 1..=n-2.
    for j in 1..=n - 2 {
        let s1 = if j + 1 == n - 1 {
            SideRef::rev(lay.rim(n - 1))
        } else {
            SideRef::fwd(lay.back(j + 1))
        };
        let s2 = SideRef::rev(lay.rim(j));
        let s3 = if j == 1 {
            SideRef::rev(lay.rim(0))
        } else {
            SideRef::rev(lay.back(j))
        };
        tris.push([s1, s2, s3]);
    }
    Triangulation::from_oriented(tris, None)
}

fn build_polygon_fan(genus: u32, punctures: u32) -> Result<Triangulation> {
    let g = genus as usize;
    let b = punctures as usize;
    let n_sides = 4 * g + 2 * (b - 1);
    debug_assert!(n_sides >= 4);
    // Boundary word: label id and whether this occurrence is the first.
    let mut word: Vec<(usize, bool)> = Vec::with_capacity(n_sides);
    for i in 0..g {
        let a = 2 * i;
        let bb = 2 * i + 1;
        word.push((a, true));
        word.push((bb, true));
        word.push((a, false));
        word.push((bb, false));
    }
    for j in 0..b - 1 {
        let c = 2 * g + j;
        word.push((c, true));
        word.push((c, false));
    }
    let n_labels = 2 * g + (b - 1);
    let diag = |j: usize| n_labels + (j - 2);
    let side_ref = |k: usize| -> SideRef {
        let (label, first) = word[k];
        SideRef {
            edge: label,
            forward: first,
        }
    };
    let mut tris: Vec<[SideRef; 3]> = Vec::with_capacity(n_sides - 2);
    for j in 1..=n_sides - 2 {
        let s1 = if j == 1 { side_ref(0) } else { SideRef::fwd(diag(j)) };
        let s2 = side_ref(j);
        let s3 = if j + 1 == n_sides - 1 {
            side_ref(n_sides - 1)
        } else {
            SideRef::rev(diag(j + 1))
        };
        tris.push([s1, s2, s3]);
    }
    Triangulation::from_oriented(tris, None)
}

/// Deterministic canonical triangulation for a signature.
pub fn build_triangulation(sig: Signature) -> Result<Arc<Triangulation>> {
    if sig.punctures < 1 {
        return Err(Error::NoPunctures);
    }
    let chi = sig.euler_characteristic();
    if chi >= 0 {
        return Err(Error::NonNegativeEuler(chi));
    }
    let tri = if sig.genus == 0 {
        build_sphere(sig.punctures as usize)?
    } else {
        build_polygon_fan(sig.genus, sig.punctures)?
    };
    debug_assert_eq!(tri.signature(), sig);
    Ok(tri
        .with_id(format!("S_{}_{}", sig.genus, sig.punctures))
        .into_arc())
}

/// Resolve a canonical id: `"S_g_b"`, or `"D_i"` for the `i`-times punctured
/// disk modeled as `S_0_{i+1}`.
pub fn canonical_surface(id: &str) -> Result<Arc<Triangulation>> {
    let parts: Vec<&str> = id.split('_').collect();
    let parse = |s: &str| s.parse::<u32>().map_err(|_| Error::UnknownSurface(id.into()));
    match parts.as_slice() {
        ["S", g, b] => build_triangulation(Signature::new(parse(g)?, parse(b)?)),
        ["D", i] => {
            let i = parse(i)?;
            if i < 2 {
                return Err(Error::UnknownSurface(id.into()));
            }
            build_triangulation(Signature::new(0, i + 1))
        }
        _ => Err(Error::UnknownSurface(id.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_layouts_have_expected_vertices() {
        for n in 3..=7 {
            let t = build_triangulation(Signature::new(0, n)).unwrap();
            assert_eq!(t.n_punctures(), n as usize, "n = {n}");
            assert_eq!(t.n_triangles(), 2 * (n as usize - 2));
            // Rim edge j joins punctures j and j+1 mod n.
            for j in 0..n as usize {
                let (u, v) = t.edge_ends(j);
                let expect = [j % n as usize, (j + 1) % n as usize];
                let mut got = [u, v];
                got.sort();
                let mut expect = expect;
                expect.sort();
                assert_eq!(got, expect, "rim {j} on S_0_{n}");
            }
        }
    }

    #[test]
    fn genus_layouts_have_expected_signature() {
        for (g, b) in [(1u32, 1u32), (1, 2), (2, 1), (1, 3), (2, 2)] {
            let t = build_triangulation(Signature::new(g, b)).unwrap();
            assert_eq!(t.signature(), Signature::new(g, b));
            assert_eq!(t.euler_characteristic(), 2 - 2 * g as i64 - b as i64);
        }
    }

    #[test]
    fn disk_alias() {
        let d3 = canonical_surface("D_3").unwrap();
        let s04 = canonical_surface("S_0_4").unwrap();
        assert_eq!(*d3, *s04);
        assert!(canonical_surface("D_1").is_err());
        assert!(canonical_surface("X_9").is_err());
    }
}
