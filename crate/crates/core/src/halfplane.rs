//! Upper half-plane geometry.
//!
//! The Teichmueller space of the torus is identified with the open upper
//! half-plane `H = { z : Im z > 0 }`. Throughout the crate the hyperbolic
//! metric on `H` is normalized to constant curvature -4, i.e. the length
//! element is `sqrt(dx^2 + dy^2) / (2y)`. This halves every distance of the
//! familiar curvature -1 model; the normalization is pinned by the test
//! `hyp_dist(i, e^2 i) = 1`.
//!
//! Geodesics are Euclidean semicircles perpendicular to the real axis, or
//! vertical lines. Verticals get their own representation instead of a
//! limiting semicircle so that center and radius never overflow.

use crate::error::{Error, Result};

/// Euclidean tolerance for "does this point lie on that geodesic" checks.
///
/// Absolute, in half-plane coordinates. Operations that need the check accept
/// an explicit override through their `*_with_tol` variants.
pub const DEFAULT_ON_GEODESIC_TOL: f64 = 1e-9;

/// A marked flat torus, i.e. a point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    re: f64,
    im: f64,
}

impl HalfPlanePoint {
    /// Creates a point, rejecting `im <= 0` and non-finite coordinates.
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() {
            return Err(Error::NonFiniteCoordinate { value: re });
        }
        if !im.is_finite() {
            return Err(Error::NonFiniteCoordinate { value: im });
        }
        if im <= 0.0 {
            return Err(Error::PointOutsideHalfPlane { im });
        }
        Ok(Self { re, im })
    }

    /// Real part.
    #[inline]
    pub fn re(&self) -> f64 {
        self.re
    }

    /// Imaginary part; strictly positive by construction.
    #[inline]
    pub fn im(&self) -> f64 {
        self.im
    }

    /// Euclidean distance to another point.
    #[inline]
    pub fn dist_euclid(&self, other: &HalfPlanePoint) -> f64 {
        (other.re - self.re).hypot(other.im - self.im)
    }
}

impl std::fmt::Display for HalfPlanePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im >= 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

/// A tangent vector `v = v_re + i v_im` attached at a half-plane point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    base: HalfPlanePoint,
    v_re: f64,
    v_im: f64,
}

impl TangentVector {
    /// Creates a tangent vector; the zero vector is allowed.
    pub fn new(base: HalfPlanePoint, v_re: f64, v_im: f64) -> Result<Self> {
        if !v_re.is_finite() {
            return Err(Error::NonFiniteCoordinate { value: v_re });
        }
        if !v_im.is_finite() {
            return Err(Error::NonFiniteCoordinate { value: v_im });
        }
        Ok(Self { base, v_re, v_im })
    }

    #[inline]
    pub fn base(&self) -> HalfPlanePoint {
        self.base
    }

    #[inline]
    pub fn v_re(&self) -> f64 {
        self.v_re
    }

    #[inline]
    pub fn v_im(&self) -> f64 {
        self.v_im
    }

    /// Euclidean length `|v|`.
    #[inline]
    pub fn norm_euclid(&self) -> f64 {
        self.v_re.hypot(self.v_im)
    }
}

/// A point of the extended real line: a slope, or a geodesic endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    #[inline]
    pub fn is_finite(&self) -> bool {
        matches!(self, BoundaryPoint::Finite(_))
    }

    /// The finite value, if any.
    #[inline]
    pub fn value(&self) -> Option<f64> {
        match self {
            BoundaryPoint::Finite(x) => Some(*x),
            BoundaryPoint::Infinity => None,
        }
    }
}

impl std::fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// An oriented hyperbolic geodesic.
///
/// Orientation is stored on the geodesic itself so that endpoint order (and
/// hence the assignment of the extremal slopes `x_plus`/`x_minus`) is
/// deterministic: a semicircle is traversed toward increasing or decreasing
/// real part, a vertical line upward or downward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HyperbolicGeodesic {
    Semicircle {
        center: f64,
        radius: f64,
        /// Traversal runs toward increasing real part.
        rightward: bool,
    },
    Vertical {
        x: f64,
        /// Traversal runs toward increasing imaginary part.
        upward: bool,
    },
}

impl HyperbolicGeodesic {
    /// Endpoints at infinity, ordered (backward, forward): the first entry is
    /// the endpoint behind the traversal (the `x_plus` side when the geodesic
    /// came from [`geodesic_through`]), the second the endpoint ahead.
    pub fn endpoints(&self) -> (BoundaryPoint, BoundaryPoint) {
        match *self {
            HyperbolicGeodesic::Semicircle {
                center,
                radius,
                rightward,
            } => {
                let left = BoundaryPoint::Finite(center - radius);
                let right = BoundaryPoint::Finite(center + radius);
                if rightward {
                    (left, right)
                } else {
                    (right, left)
                }
            }
            HyperbolicGeodesic::Vertical { x, upward } => {
                let foot = BoundaryPoint::Finite(x);
                if upward {
                    (foot, BoundaryPoint::Infinity)
                } else {
                    (BoundaryPoint::Infinity, foot)
                }
            }
        }
    }

    /// Euclidean offset of `z` from the geodesic's carrier curve.
    pub fn offset(&self, z: &HalfPlanePoint) -> f64 {
        match *self {
            HyperbolicGeodesic::Semicircle { center, radius, .. } => {
                ((z.re - center).hypot(z.im) - radius).abs()
            }
            HyperbolicGeodesic::Vertical { x, .. } => (z.re - x).abs(),
        }
    }

    /// Whether `z` lies on the geodesic within `tol` (Euclidean, absolute).
    pub fn contains(&self, z: &HalfPlanePoint, tol: f64) -> bool {
        self.offset(z) <= tol
    }

    /// The same carrier curve traversed the other way.
    pub fn reversed(&self) -> HyperbolicGeodesic {
        match *self {
            HyperbolicGeodesic::Semicircle {
                center,
                radius,
                rightward,
            } => HyperbolicGeodesic::Semicircle {
                center,
                radius,
                rightward: !rightward,
            },
            HyperbolicGeodesic::Vertical { x, upward } => {
                HyperbolicGeodesic::Vertical { x, upward: !upward }
            }
        }
    }
}

/// Hyperbolic distance of curvature -4:
/// `(1/2) arcosh(1 + |z1 - z2|^2 / (2 Im z1 Im z2))`.
///
/// Evaluated through `ln_1p` so that nearly coincident points do not lose
/// precision to the `1 +` in the argument of `arcosh`.
pub fn hyp_dist(z1: &HalfPlanePoint, z2: &HalfPlanePoint) -> f64 {
    let dx = z2.re - z1.re;
    let dy = z2.im - z1.im;
    let u = (dx * dx + dy * dy) / (2.0 * z1.im * z2.im);
    // arcosh(1 + u) = ln(1 + u + sqrt(u (u + 2)))
    0.5 * (u + (u * (u + 2.0)).sqrt()).ln_1p()
}

/// The oriented hyperbolic geodesic through two distinct points, traversed
/// from `z1` to `z2`.
///
/// Equal real parts give a `Vertical`; otherwise the semicircle centered at
/// `c = (a + alpha)/2 + (beta^2 - b^2) / (2 (alpha - a))` with radius
/// `|z1 - c|`.
pub fn geodesic_through(
    z1: &HalfPlanePoint,
    z2: &HalfPlanePoint,
) -> Result<HyperbolicGeodesic> {
    if z1 == z2 {
        return Err(Error::CoincidentPoints);
    }
    let (a, b) = (z1.re, z1.im);
    let (alpha, beta) = (z2.re, z2.im);
    if a == alpha {
        return Ok(HyperbolicGeodesic::Vertical {
            x: a,
            upward: beta > b,
        });
    }
    let center = 0.5 * (a + alpha) + (beta * beta - b * b) / (2.0 * (alpha - a));
    let radius = (a - center).hypot(b);
    Ok(HyperbolicGeodesic::Semicircle {
        center,
        radius,
        rightward: alpha > a,
    })
}

/// Endpoints of a geodesic in `(x_plus, x_minus)` order; see
/// [`HyperbolicGeodesic::endpoints`].
pub fn geodesic_endpoints(g: &HyperbolicGeodesic) -> (BoundaryPoint, BoundaryPoint) {
    g.endpoints()
}

/// An evaluable parametrization of the arc of `g` between two points on it.
///
/// Semicircular arcs are affine in the central angle; vertical arcs are
/// affine in log-height. Both give smooth integrands for quadrature.
#[derive(Debug, Clone, Copy)]
pub(crate) enum ArcParametrization {
    Circle {
        center: f64,
        radius: f64,
        theta1: f64,
        theta2: f64,
    },
    Vertical {
        x: f64,
        log_h1: f64,
        log_h2: f64,
    },
}

impl ArcParametrization {
    pub(crate) fn build(
        g: &HyperbolicGeodesic,
        z1: &HalfPlanePoint,
        z2: &HalfPlanePoint,
        tol: f64,
    ) -> Result<Self> {
        for z in [z1, z2] {
            let offset = g.offset(z);
            if offset > tol {
                return Err(Error::PointNotOnGeodesic {
                    re: z.re,
                    im: z.im,
                    offset,
                    tol,
                });
            }
        }
        match *g {
            HyperbolicGeodesic::Semicircle { center, radius, .. } => Ok(Self::Circle {
                center,
                radius,
                theta1: (z1.im).atan2(z1.re - center),
                theta2: (z2.im).atan2(z2.re - center),
            }),
            HyperbolicGeodesic::Vertical { x, .. } => Ok(Self::Vertical {
                x,
                log_h1: z1.im.ln(),
                log_h2: z2.im.ln(),
            }),
        }
    }

    /// Position at parameter `t in [0, 1]` as raw coordinates.
    pub(crate) fn point(&self, t: f64) -> (f64, f64) {
        match *self {
            Self::Circle {
                center,
                radius,
                theta1,
                theta2,
            } => {
                let theta = theta1 + t * (theta2 - theta1);
                (center + radius * theta.cos(), radius * theta.sin())
            }
            Self::Vertical { x, log_h1, log_h2 } => {
                (x, ((1.0 - t) * log_h1 + t * log_h2).exp())
            }
        }
    }

    /// Velocity `d(position)/dt` at parameter `t`.
    pub(crate) fn velocity(&self, t: f64) -> (f64, f64) {
        match *self {
            Self::Circle {
                radius,
                theta1,
                theta2,
                ..
            } => {
                let theta = theta1 + t * (theta2 - theta1);
                let speed = radius * (theta2 - theta1);
                (-speed * theta.sin(), speed * theta.cos())
            }
            Self::Vertical { log_h1, log_h2, .. } => {
                let rate = log_h2 - log_h1;
                (0.0, rate * ((1.0 - t) * log_h1 + t * log_h2).exp())
            }
        }
    }
}

/// Point at parameter `t in [0, 1]` on the arc of `g` from `z1` to `z2`,
/// with `t` affine in central angle (semicircle) or log-height (vertical).
///
/// Endpoints are returned verbatim: `t = 0` gives `z1` and `t = 1` gives
/// `z2` exactly. Fails with `PointNotOnGeodesic` if either input is off `g`
/// by more than [`DEFAULT_ON_GEODESIC_TOL`].
pub fn geodesic_arc_param(
    g: &HyperbolicGeodesic,
    z1: &HalfPlanePoint,
    z2: &HalfPlanePoint,
    t: f64,
) -> Result<HalfPlanePoint> {
    geodesic_arc_param_with_tol(g, z1, z2, t, DEFAULT_ON_GEODESIC_TOL)
}

/// [`geodesic_arc_param`] with an explicit on-geodesic tolerance.
pub fn geodesic_arc_param_with_tol(
    g: &HyperbolicGeodesic,
    z1: &HalfPlanePoint,
    z2: &HalfPlanePoint,
    t: f64,
    tol: f64,
) -> Result<HalfPlanePoint> {
    assert!(
        (0.0..=1.0).contains(&t),
        "arc parameter must lie in [0, 1], got {t}"
    );
    let arc = ArcParametrization::build(g, z1, z2, tol)?;
    if t == 0.0 {
        return Ok(*z1);
    }
    if t == 1.0 {
        return Ok(*z2);
    }
    let (re, im) = arc.point(t);
    HalfPlanePoint::new(re, im)
}

/// Busemann function of the upward ray to `infinity`, based at `z0`:
/// `(1/2) log(Im z0 / Im z)`.
///
/// The difference `busemann_to_infinity(z0, z2) - busemann_to_infinity(z0, z1)`
/// does not depend on the base point `z0`.
pub fn busemann_to_infinity(z0: &HalfPlanePoint, z: &HalfPlanePoint) -> f64 {
    0.5 * (z0.im / z.im).ln()
}

/// The similarity `z -> lambda z + tau`, an isometry of every metric in this
/// crate. Requires `lambda > 0`.
pub fn apply_similarity(lambda: f64, tau: f64, z: &HalfPlanePoint) -> Result<HalfPlanePoint> {
    if !lambda.is_finite() {
        return Err(Error::NonFiniteCoordinate { value: lambda });
    }
    if !tau.is_finite() {
        return Err(Error::NonFiniteCoordinate { value: tau });
    }
    if lambda <= 0.0 {
        return Err(Error::NonpositiveScale { lambda });
    }
    HalfPlanePoint::new(lambda * z.re + tau, lambda * z.im)
}

/// The reflection `z -> -conj(z)`, the other generator of the symmetry group.
pub fn mirror(z: &HalfPlanePoint) -> HalfPlanePoint {
    HalfPlanePoint { re: -z.re, im: z.im }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(re, im).unwrap()
    }

    /// Independent length oracle: composite Simpson quadrature of the
    /// curvature -4 length element along the circular or vertical arc
    /// between two points, never touching `hyp_dist`.
    fn hyp_length_by_quadrature(z1: &HalfPlanePoint, z2: &HalfPlanePoint, panels: usize) -> f64 {
        let g = geodesic_through(z1, z2).unwrap();
        let arc = ArcParametrization::build(&g, z1, z2, 1e-12).unwrap();
        let f = |t: f64| {
            let (_, y) = arc.point(t);
            let (vx, vy) = arc.velocity(t);
            vx.hypot(vy) / (2.0 * y)
        };
        let h = 1.0 / panels as f64;
        let mut sum = 0.0;
        for k in 0..panels {
            let a = k as f64 * h;
            sum += h / 6.0 * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
        }
        sum
    }

    #[test]
    fn point_construction_rejects_bad_input() {
        assert_eq!(
            HalfPlanePoint::new(0.0, 0.0),
            Err(Error::PointOutsideHalfPlane { im: 0.0 })
        );
        assert_eq!(
            HalfPlanePoint::new(0.0, -1.0),
            Err(Error::PointOutsideHalfPlane { im: -1.0 })
        );
        assert!(HalfPlanePoint::new(f64::NAN, 1.0).is_err());
        assert!(HalfPlanePoint::new(0.0, f64::INFINITY).is_err());
        assert!(HalfPlanePoint::new(3.0, 1e-300).is_ok());
    }

    #[test]
    fn hyp_dist_identity_and_symmetry() {
        let z = pt(0.3, 2.0);
        assert_eq!(hyp_dist(&z, &z), 0.0);
        let w = pt(-1.0, 0.5);
        assert_eq!(hyp_dist(&z, &w), hyp_dist(&w, &z));
    }

    #[test]
    fn hyp_dist_vertical_pair() {
        // Known value 0.5 ln 4; cross-checked by quadrature of the length
        // element along the vertical segment.
        let d = hyp_dist(&pt(0.0, 1.0), &pt(0.0, 4.0));
        assert!((d - 0.5 * 4.0f64.ln()).abs() < 1e-14);
        let q = hyp_length_by_quadrature(&pt(0.0, 1.0), &pt(0.0, 4.0), 200);
        assert!((d - q).abs() < 1e-10, "quadrature {q} vs closed form {d}");
    }

    #[test]
    fn hyp_dist_semicircular_pair() {
        let d = hyp_dist(&pt(0.0, 1.0), &pt(1.0, 1.0));
        assert!((d - 0.5 * 1.5f64.acosh()).abs() < 1e-14);
        let q = hyp_length_by_quadrature(&pt(0.0, 1.0), &pt(1.0, 1.0), 200);
        assert!((d - q).abs() < 1e-10, "quadrature {q} vs closed form {d}");
    }

    #[test]
    fn hyp_dist_curvature_normalization() {
        // Curvature -4: the vertical ray is unit speed in 0.5 log(height).
        for t in [0.25f64, 1.0, 2.0] {
            let d = hyp_dist(&pt(0.0, 1.0), &pt(0.0, (2.0 * t).exp()));
            assert!((d - t).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_through_examples() {
        let g = geodesic_through(&pt(0.0, 1.0), &pt(1.0, 1.0)).unwrap();
        match g {
            HyperbolicGeodesic::Semicircle {
                center,
                radius,
                rightward,
            } => {
                assert!((center - 0.5).abs() < 1e-15);
                assert!((radius - 0.5 * 5.0f64.sqrt()).abs() < 1e-15);
                assert!(rightward);
            }
            _ => panic!("expected a semicircle"),
        }
        // Both inputs must lie on the carrier.
        assert!(g.contains(&pt(0.0, 1.0), 1e-12));
        assert!(g.contains(&pt(1.0, 1.0), 1e-12));

        assert_eq!(
            geodesic_through(&pt(0.0, 1.0), &pt(0.0, 2.0)).unwrap(),
            HyperbolicGeodesic::Vertical { x: 0.0, upward: true }
        );
        assert_eq!(
            geodesic_through(&pt(1.0, 1.0), &pt(1.0, 3.0)).unwrap(),
            HyperbolicGeodesic::Vertical { x: 1.0, upward: true }
        );
        assert_eq!(
            geodesic_through(&pt(0.0, 1.0), &pt(0.0, 1.0)),
            Err(Error::CoincidentPoints)
        );
    }

    #[test]
    fn geodesic_endpoints_examples() {
        // Golden-ratio endpoints of the geodesic through i and 1+i.
        let g = geodesic_through(&pt(0.0, 1.0), &pt(1.0, 1.0)).unwrap();
        let (x_plus, x_minus) = g.endpoints();
        let s5 = 5.0f64.sqrt();
        assert!((x_plus.value().unwrap() - (1.0 - s5) / 2.0).abs() < 1e-15);
        assert!((x_minus.value().unwrap() - (1.0 + s5) / 2.0).abs() < 1e-15);

        let up = geodesic_through(&pt(0.0, 1.0), &pt(0.0, 2.0)).unwrap();
        assert_eq!(
            up.endpoints(),
            (BoundaryPoint::Finite(0.0), BoundaryPoint::Infinity)
        );
        let down = geodesic_through(&pt(0.0, 1.0), &pt(0.0, 0.5)).unwrap();
        assert_eq!(
            down.endpoints(),
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(0.0))
        );
    }

    #[test]
    fn arc_param_endpoints_are_exact() {
        let z1 = pt(0.0, 1.0);
        let z2 = pt(1.0, 1.0);
        let g = geodesic_through(&z1, &z2).unwrap();
        assert_eq!(geodesic_arc_param(&g, &z1, &z2, 0.0).unwrap(), z1);
        assert_eq!(geodesic_arc_param(&g, &z1, &z2, 1.0).unwrap(), z2);
    }

    #[test]
    fn arc_param_vertical_midpoint() {
        // Affine in log-height, so the midpoint of [i, 2i] sits at sqrt(2) i.
        let z1 = pt(0.0, 1.0);
        let z2 = pt(0.0, 2.0);
        let g = geodesic_through(&z1, &z2).unwrap();
        let mid = geodesic_arc_param(&g, &z1, &z2, 0.5).unwrap();
        assert_eq!(mid.re(), 0.0);
        assert!((mid.im() - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn arc_param_stays_on_geodesic() {
        let z1 = pt(-2.0, 0.7);
        let z2 = pt(3.0, 1.9);
        let g = geodesic_through(&z1, &z2).unwrap();
        for k in 0..=20 {
            let t = k as f64 / 20.0;
            let z = geodesic_arc_param(&g, &z1, &z2, t).unwrap();
            assert!(g.offset(&z) <= 1e-12);
        }
    }

    #[test]
    fn arc_param_rejects_stray_points() {
        let z1 = pt(0.0, 1.0);
        let z2 = pt(1.0, 1.0);
        let g = geodesic_through(&z1, &z2).unwrap();
        let off = pt(0.5, 3.0);
        match geodesic_arc_param(&g, &z1, &off, 0.5) {
            Err(Error::PointNotOnGeodesic { .. }) => {}
            other => panic!("expected PointNotOnGeodesic, got {other:?}"),
        }
    }

    #[test]
    fn busemann_examples() {
        let b = busemann_to_infinity(&pt(0.0, 1.0), &pt(0.0, 4.0));
        assert!((b + 2.0f64.ln()).abs() < 1e-15);
        assert_eq!(busemann_to_infinity(&pt(0.0, 1.0), &pt(0.0, 1.0)), 0.0);
        assert_eq!(busemann_to_infinity(&pt(0.0, 2.0), &pt(1.0, 2.0)), 0.0);
    }

    #[test]
    fn busemann_cocycle_is_base_independent() {
        let z1 = pt(0.4, 0.9);
        let z2 = pt(-3.0, 5.0);
        let mut diffs = Vec::new();
        for z0 in [pt(0.0, 1.0), pt(7.0, 0.01), pt(-2.0, 40.0)] {
            diffs.push(busemann_to_infinity(&z0, &z2) - busemann_to_infinity(&z0, &z1));
        }
        for d in &diffs[1..] {
            assert!((d - diffs[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn similarity_and_mirror_examples() {
        let z = apply_similarity(2.0, 1.0, &pt(0.0, 1.0)).unwrap();
        assert_eq!((z.re(), z.im()), (1.0, 2.0));
        let m = mirror(&pt(1.0, 1.0));
        assert_eq!((m.re(), m.im()), (-1.0, 1.0));
        let w = pt(0.3, 0.8);
        assert_eq!(apply_similarity(1.0, 0.0, &w).unwrap(), w);
        assert_eq!(
            apply_similarity(0.0, 0.0, &w),
            Err(Error::NonpositiveScale { lambda: 0.0 })
        );
        assert_eq!(
            apply_similarity(-2.0, 0.0, &w),
            Err(Error::NonpositiveScale { lambda: -2.0 })
        );
    }

    #[test]
    fn hyp_dist_is_isometry_invariant() {
        let z1 = pt(0.7, 0.2);
        let z2 = pt(-1.3, 4.0);
        let d = hyp_dist(&z1, &z2);
        for (lambda, tau) in [(2.0, 0.0), (0.125, -3.0), (17.0, 0.4)] {
            let w1 = apply_similarity(lambda, tau, &z1).unwrap();
            let w2 = apply_similarity(lambda, tau, &z2).unwrap();
            assert!((hyp_dist(&w1, &w2) - d).abs() <= 1e-12 * (1.0 + d));
        }
        assert!((hyp_dist(&mirror(&z1), &mirror(&z2)) - d).abs() <= 1e-12 * (1.0 + d));
    }
}
