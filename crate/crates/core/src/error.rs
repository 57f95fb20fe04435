//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point was given with `im <= 0` or a non-finite coordinate.
    #[error("point must lie in the open upper half-plane (got im = {im})")]
    PointOutsideHalfPlane { im: f64 },

    /// A coordinate, scale, or parameter was NaN or infinite.
    #[error("coordinate must be finite (got {value})")]
    NonFiniteCoordinate { value: f64 },

    /// The operation needs two distinct points.
    #[error("operation requires distinct points")]
    CoincidentPoints,

    /// Similarities `z -> lambda z + tau` need `lambda > 0`.
    #[error("similarity scale must be positive (got lambda = {lambda})")]
    NonpositiveScale { lambda: f64 },

    /// A point claimed to lie on a geodesic is off it beyond tolerance.
    #[error("point ({re}, {im}) is off the geodesic by {offset} (tolerance {tol})")]
    PointNotOnGeodesic {
        re: f64,
        im: f64,
        offset: f64,
        tol: f64,
    },

    /// Consecutive path segments do not share an endpoint.
    #[error("path is discontinuous at joint {index} (gap {gap})")]
    DiscontinuousPath { index: usize, gap: f64 },

    /// The interpolation parameter must satisfy `0 <= p <= 1`.
    #[error("interpolation parameter must lie in [0, 1] (got {p})")]
    ParamOutOfRange { p: f64 },

    /// Extremal length is only defined here for finite slopes.
    #[error("extremal length of the infinite slope is not supported")]
    InfiniteSlopeUnsupported,

    /// A curve class must be a primitive pair distinct from (0, 0).
    #[error("curve class must be a primitive nonzero pair (got ({p}, {q}))")]
    InvalidCurveClass { p: i64, q: i64 },

    /// `p = 0` turns the unit circle into a parabola, not an ellipse.
    #[error("p = 0 degenerates the ellipse to a parabola; use the delta unit circle")]
    DegenerateParabola,

    /// Monotone root search exceeded its arc-length cap without bracketing.
    #[error("no sphere crossing within arc length {cap} in this direction")]
    RootNotBracketed { cap: f64 },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
