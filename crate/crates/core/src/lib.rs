//! Thurston's asymmetric metric on the Teichmueller space of the torus.
//!
//! The moduli of marked flat tori form the upper half-plane; on it lives the
//! weak (asymmetric) metric
//!
//! ```text
//! delta(z1, z2) = log sup_x |(z2 - x) / (z1 - x)|
//!              = log( (|z2 - conj z1| + |z2 - z1|) / (2 Im z1) ),
//! ```
//!
//! the flat-torus analogue of Thurston's stretch metric: the supremum of
//! length ratios of simple closed curves between the two tori. This crate
//! computes it, everything around it, and the brute-force oracles that
//! verify each closed form independently:
//!
//! - [`halfplane`]: points, tangent vectors, hyperbolic geodesics and
//!   distance (curvature -4), Busemann functions, and the symmetry group.
//! - [`thurston`]: `delta` and its supremum oracle, extremal slopes, the
//!   interpolating family `delta_p`, and the arithmetic symmetrisation
//!   (which recovers the hyperbolic = Teichmueller metric).
//! - [`finsler`]: the weak norms `(|v| + (1-p) Im v) / (2 Im z)`, quadrature
//!   lengths of piecewise paths, and the geodesic length in closed form.
//! - [`curves`]: simple closed curves on the torus, flat lengths, the curve
//!   supremum `kappa` by rational-slope enumeration, extremal length, and
//!   Kerckhoff's formula for `delta_1`.
//! - [`shapes`]: unit tangent circles (parabola at `p = 0`, ellipses for
//!   `p > 0`) and forward/backward metric sphere boundaries as polylines.
//! - [`selftest`]: the seeded invariant suite behind the CLI's `selftest`.
//!
//! `delta` is genuinely asymmetric: moving straight down costs nothing,
//! and `delta(z2, z1) = delta(z1, z2) + log(Im z1 / Im z2)`. All operations
//! are pure functions over immutable values and safe to call concurrently.

pub mod curves;
pub mod error;
pub mod finsler;
pub mod halfplane;
pub mod selftest;
pub mod shapes;
pub mod thurston;

pub use error::{Error, Result};
pub use halfplane::{
    apply_similarity, busemann_to_infinity, geodesic_arc_param, geodesic_endpoints,
    geodesic_through, hyp_dist, mirror, BoundaryPoint, HalfPlanePoint, HyperbolicGeodesic,
    TangentVector,
};
pub use thurston::{
    delta, delta_oracle, delta_p, extremal_slopes, ratio_at, symmetrize, InterpolationParam,
    OracleConfig, SupResult,
};
pub use finsler::{
    geodesic_length_closed_form, norm_delta, norm_delta_p, path_length, PathSegment,
    PiecewisePath, QuadratureConfig,
};
pub use curves::{
    class_slope, curve_length, extremal_length, kappa_sup, kerckhoff_delta1, CurveClass,
    MarkedFlatTorus,
};
pub use shapes::{
    backward_ball_boundary, backward_ball_boundary_with_cap, ellipse_foci, forward_ball_boundary,
    unit_circle_delta, unit_circle_delta_p, Polyline2D,
};
