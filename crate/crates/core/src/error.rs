//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gluing is not a fixpoint-free involution on slots")]
    BadGluing,
    #[error("glued complex is not connected")]
    Disconnected,
    #[error("gluing does not admit a consistent orientation")]
    NonOrientable,
    #[error("euler characteristic {0} is not negative")]
    NonNegativeEuler(i64),
    #[error("surface must have at least one puncture")]
    NoPunctures,
    #[error("unknown canonical surface id {0:?}")]
    UnknownSurface(String),
    #[error("expected {expected} edge weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("edge weight {weight} on edge {edge} is below -1")]
    WeightBelowFloor { edge: usize, weight: i64 },
    #[error("triangle {triangle}: weights violate the corner conditions (triangle inequality / parity)")]
    CornerConditions { triangle: usize },
    #[error("lamination contains a peripheral curve component")]
    PeripheralComponent,
    #[error("lamination contains an inessential component")]
    InessentialComponent,
    #[error("edge {0} is not flippable (its two sides lie in one triangle)")]
    NotFlippable(usize),
    #[error("laminations live on different triangulations")]
    TriangulationMismatch,
    #[error("operation requires a single arc component")]
    NotAnArc,
    #[error("operation requires a single curve component")]
    NotACurve,
    #[error("operation requires a single-component lamination")]
    NotSingleComponent,
    #[error("arithmetic overflow in weight computation")]
    Overflow,
    #[error("move word does not compose: move {0} is invalid at its stage")]
    BadMove(usize),
    #[error("move word does not close up: final triangulation differs from the source")]
    NotClosed,
    #[error("relabel permutation does not extend to a simplicial isomorphism")]
    BadRelabel,
    #[error("unsupported generator {name:?} on surface {surface:?}")]
    UnsupportedGenerator { surface: String, name: String },
    #[error("braid word uses generator index {index} outside 1..={max}")]
    BadBraidIndex { index: usize, max: usize },
    #[error("braid words need at least 3 strands, got {0}")]
    TooFewStrands(usize),
    #[error("empty candidate set: weight cap {0} admits no arcs")]
    EmptyCandidates(i64),
    #[error("certificate: {0}")]
    Certificate(String),
    #[error("components admit no simultaneous minimal-position overlay (bigon found)")]
    OverlayBigon,
    #[error("malformed document: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
