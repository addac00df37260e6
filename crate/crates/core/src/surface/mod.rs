//! Punctured surfaces as ideal triangulations, laminations as normal
//! coordinates, and the operations the complexes are built from: flips,
//! intersection numbers, cutting, and the filling test.

pub mod canonical;
pub mod enumerate;
pub mod lamination;
pub mod overlay;
pub mod route;
pub mod shorten;
pub mod trace;
pub mod triangulation;

pub use canonical::{build_triangulation as build_from_signature, canonical_surface};
pub use enumerate::{enumerate_arcs, enumerate_curves, enumerate_laminations};
pub use lamination::{validate_lamination, Component, ComponentKind, Lamination};
pub use overlay::{CutDecomposition, Piece};
pub use triangulation::{FlipTransition, SideRef, Signature, Slot, Triangulation};

use crate::error::{Error, Result};
use std::sync::Arc;

/// Deterministic canonical triangulation for a signature.
pub fn build_triangulation(sig: Signature) -> Result<Arc<Triangulation>> {
    canonical::build_triangulation(sig)
}

pub fn euler_characteristic(tri: &Triangulation) -> i64 {
    tri.euler_characteristic()
}

pub fn is_non_sporadic(tri: &Triangulation) -> bool {
    tri.is_non_sporadic()
}

/// Flip an edge, returning the retriangulation and the coordinate
/// transition.
pub fn flip(tri: &Triangulation, edge: usize) -> Result<(Triangulation, FlipTransition)> {
    tri.flip(edge)
}

/// Geometric intersection number of two single-component laminations.
///
/// When either input is an arc this shortens it to an edge by flips and
/// reads the other lamination's weight there; for a pair of curves it counts
/// crossings in a verified minimal-position overlay.
pub fn intersection_number(a: &Lamination, b: &Lamination) -> Result<i64> {
    a.same_triangulation(b)?;
    if a.n_components() != 1 || b.n_components() != 1 {
        return Err(Error::NotSingleComponent);
    }
    if a == b {
        return Ok(0);
    }
    if a.is_arc() {
        return shorten::intersection_with_arc(a, b);
    }
    if b.is_arc() {
        return shorten::intersection_with_arc(b, a);
    }
    let ov = overlay::overlay(a, Some(b), None)?;
    Ok(ov.crossings.len() as i64)
}

/// Cut along a disjoint system (a validated, possibly multi-component
/// lamination).
pub fn cut_along(system: &Lamination) -> Result<CutDecomposition> {
    Ok(overlay::overlay(system, None, None)?.cut)
}

/// Cut along the minimal-position union of two single components,
/// intersection points becoming 4-valent vertices.
pub fn cut_union(a: &Lamination, b: &Lamination) -> Result<CutDecomposition> {
    a.same_triangulation(b)?;
    if a.n_components() != 1 || b.n_components() != 1 {
        return Err(Error::NotSingleComponent);
    }
    if a == b {
        return Err(Error::Malformed("cut_union of equal components".into()));
    }
    Ok(overlay::overlay(a, Some(b), None)?.cut)
}

/// Two single components fill the surface when every complementary piece of
/// their minimal-position union is a disk or once-punctured disk meeting the
/// punctures at most once in total.
pub fn fills(a: &Lamination, b: &Lamination) -> Result<bool> {
    if a == b {
        return Ok(false);
    }
    Ok(cut_union(a, b)?.all_filling_pieces())
}
