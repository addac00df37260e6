//! Combinatorics of arcs, curves, and mapping classes on punctured surfaces.
//!
//! Surfaces are presented by ideal triangulations; arcs and curves by integer
//! normal coordinates (one weight per edge, with the `-1` convention for a
//! component isotopic onto an edge). Mapping classes are words of edge flips
//! and relabelings acting on coordinates. On top of this the crate provides
//! the arc complex and arc-and-curve complex as metric objects with exact
//! small distances, translation-distance upper bounds with witness paths,
//! checkable translation certificates, and growth experiments for powers of
//! a mapping class.

pub mod error;
pub mod surface;

pub use error::Error;
pub use surface::{
    build_triangulation, canonical_surface, cut_along, cut_union, euler_characteristic, fills,
    flip, intersection_number, is_non_sporadic, validate_lamination, ComponentKind,
    CutDecomposition, Lamination, Signature, Triangulation,
};
