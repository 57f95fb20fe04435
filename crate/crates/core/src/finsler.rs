//! Weak Finsler structure: tangent norms, path lengths, and the geodesic
//! length in closed form.
//!
//! The field of weak norms
//!
//! ```text
//! ||v||_delta_p = (|v| + (1 - p) Im v) / (2 Im z)
//! ```
//!
//! integrates along piecewise C^1 paths to a length functional whose infimum
//! between two points is `delta_p`, with the hyperbolic geodesic as the
//! minimizer. Paths are directed: reversing a path changes its length, since
//! the norm is only positively homogeneous. At `p = 0`, straight-down vectors
//! have norm zero and downward vertical arcs have length exactly zero.

use crate::error::{Error, Result};
use crate::halfplane::{
    geodesic_through, ArcParametrization, HalfPlanePoint, HyperbolicGeodesic, TangentVector,
    DEFAULT_ON_GEODESIC_TOL,
};
use crate::thurston::InterpolationParam;

/// Euclidean tolerance for endpoint agreement between consecutive segments.
pub const PATH_CONTINUITY_TOL: f64 = 1e-9;

/// The weak norm of `delta`: `(|v| + Im v) / (2 Im z)`.
///
/// Vanishes exactly on straight-down vectors and the zero vector.
pub fn norm_delta(tv: &TangentVector) -> f64 {
    (tv.norm_euclid() + tv.v_im()) / (2.0 * tv.base().im())
}

/// The weak norm of `delta_p`: `(|v| + (1-p) Im v) / (2 Im z)`.
///
/// At `p = 0` this is [`norm_delta`]; at `p = 1` it is the hyperbolic norm
/// `|v| / (2 Im z)`.
pub fn norm_delta_p(p: InterpolationParam, tv: &TangentVector) -> f64 {
    (tv.norm_euclid() + (1.0 - p.get()) * tv.v_im()) / (2.0 * tv.base().im())
}

/// One piece of a path: a polyline through half-plane points, or an arc of a
/// hyperbolic geodesic between two points on it.
#[derive(Debug, Clone, PartialEq)]
pub enum PathSegment {
    Polyline(Vec<HalfPlanePoint>),
    GeodesicArc {
        geodesic: HyperbolicGeodesic,
        from: HalfPlanePoint,
        to: HalfPlanePoint,
    },
}

impl PathSegment {
    /// The geodesic arc between two distinct points, carrier inferred.
    pub fn arc_between(from: HalfPlanePoint, to: HalfPlanePoint) -> Result<Self> {
        let geodesic = geodesic_through(&from, &to)?;
        Ok(PathSegment::GeodesicArc { geodesic, from, to })
    }

    pub fn start(&self) -> &HalfPlanePoint {
        match self {
            PathSegment::Polyline(vs) => &vs[0],
            PathSegment::GeodesicArc { from, .. } => from,
        }
    }

    pub fn end(&self) -> &HalfPlanePoint {
        match self {
            PathSegment::Polyline(vs) => &vs[vs.len() - 1],
            PathSegment::GeodesicArc { to, .. } => to,
        }
    }
}

/// A directed piecewise C^1 path built from segments that chain end to end.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePath {
    segments: Vec<PathSegment>,
}

impl PiecewisePath {
    /// Validates that consecutive segments agree at their joints within
    /// [`PATH_CONTINUITY_TOL`].
    pub fn new(segments: Vec<PathSegment>) -> Result<Self> {
        assert!(!segments.is_empty(), "path needs at least one segment");
        for seg in &segments {
            if let PathSegment::Polyline(vs) = seg {
                assert!(vs.len() >= 2, "polyline segment needs at least two vertices");
            }
        }
        check_continuity(&segments)?;
        Ok(Self { segments })
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    pub fn start(&self) -> &HalfPlanePoint {
        self.segments[0].start()
    }

    pub fn end(&self) -> &HalfPlanePoint {
        self.segments[self.segments.len() - 1].end()
    }
}

fn check_continuity(segments: &[PathSegment]) -> Result<()> {
    for (index, pair) in segments.windows(2).enumerate() {
        let gap = pair[0].end().dist_euclid(pair[1].start());
        if gap > PATH_CONTINUITY_TOL {
            return Err(Error::DiscontinuousPath { index, gap });
        }
    }
    Ok(())
}

/// Quadrature controls for [`path_length`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Gauss-Legendre panels per smooth piece (minimum 2, default 256).
    /// Panels are graded toward the real axis, where the norm steepens.
    pub subdivisions: usize,
    /// Richardson-extrapolate across a 2x panel refinement (default true).
    pub richardson: bool,
    /// Target relative error (default 1e-10); informational for callers
    /// comparing against closed forms.
    pub rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            subdivisions: 256,
            richardson: true,
            rel_tol: 1e-10,
        }
    }
}

/// Length of a path under the `delta_p` norm field.
///
/// Polyline edges are parametrized affinely; arcs use the angle or log-height
/// parametrization of the carrier geodesic. Each smooth piece is integrated
/// by composite 5-point Gauss-Legendre quadrature.
pub fn path_length(
    p: InterpolationParam,
    path: &PiecewisePath,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_continuity(path.segments())?;
    let mut total = 0.0;
    for seg in path.segments() {
        total += segment_length(p, seg, cfg)?;
    }
    Ok(total)
}

fn segment_length(p: InterpolationParam, seg: &PathSegment, cfg: &QuadratureConfig) -> Result<f64> {
    match seg {
        PathSegment::Polyline(vs) => {
            let mut sum = 0.0;
            for pair in vs.windows(2) {
                sum += edge_length(p, &pair[0], &pair[1], cfg);
            }
            Ok(sum)
        }
        PathSegment::GeodesicArc { geodesic, from, to } => {
            if from == to {
                return Ok(0.0);
            }
            // Downward verticals are in the degenerate direction of delta:
            // the integrand is identically zero, so skip the quadrature.
            if p.get() == 0.0
                && from.re() == to.re()
                && to.im() < from.im()
                && matches!(geodesic, HyperbolicGeodesic::Vertical { .. })
            {
                return Ok(0.0);
            }
            let arc = ArcParametrization::build(geodesic, from, to, DEFAULT_ON_GEODESIC_TOL)?;
            let breaks = match arc {
                ArcParametrization::Circle { theta1, theta2, .. } => {
                    arc_angle_breaks(theta1, theta2, cfg.subdivisions.max(2))
                }
                // In log-height the vertical integrand is constant.
                ArcParametrization::Vertical { .. } => uniform_breaks(cfg.subdivisions.max(2)),
            };
            let one_minus_p = 1.0 - p.get();
            Ok(integrate(
                &|t| {
                    let (_, y) = arc.point(t);
                    let (vx, vy) = arc.velocity(t);
                    (vx.hypot(vy) + one_minus_p * vy) / (2.0 * y)
                },
                &breaks,
                cfg.richardson,
            ))
        }
    }
}

fn edge_length(
    p: InterpolationParam,
    w0: &HalfPlanePoint,
    w1: &HalfPlanePoint,
    cfg: &QuadratureConfig,
) -> f64 {
    let vx = w1.re() - w0.re();
    let vy = w1.im() - w0.im();
    let numer = vx.hypot(vy) + (1.0 - p.get()) * vy;
    if numer == 0.0 {
        return 0.0;
    }
    let y0 = w0.im();
    let breaks = geometric_height_breaks(y0, w1.im(), cfg.subdivisions.max(2));
    integrate(&|t| numer / (2.0 * (y0 + t * vy)), &breaks, cfg.richardson)
}

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_08,
    0.478_628_670_499_366_47,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_47,
    0.236_926_885_056_189_08,
];

fn gl5_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (node, weight) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
        sum += weight * f(mid + half * node);
    }
    half * sum
}

/// Composite GL5 over the given panel boundaries, optionally Richardson
/// extrapolated against a once-halved panel set (order-10 convergence).
fn integrate<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], richardson: bool) -> f64 {
    let mut coarse = 0.0;
    for w in breaks.windows(2) {
        coarse += gl5_panel(f, w[0], w[1]);
    }
    if !richardson {
        return coarse;
    }
    let mut fine = 0.0;
    for w in breaks.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        fine += gl5_panel(f, w[0], mid) + gl5_panel(f, mid, w[1]);
    }
    fine + (fine - coarse) / 1023.0
}

fn uniform_breaks(n: usize) -> Vec<f64> {
    let mut breaks: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    breaks[n] = 1.0;
    breaks
}

/// Panel boundaries for an affine edge `y(t) = y0 + t (y1 - y0)`, graded so
/// each panel spans a fixed height ratio. The `1/y` factor in the norm then
/// varies tamely inside every panel even when the edge spans several decades.
fn geometric_height_breaks(y0: f64, y1: f64, n: usize) -> Vec<f64> {
    if y0 == y1 {
        return uniform_breaks(n);
    }
    let dy = y1 - y0;
    let log_ratio = (y1 / y0).ln();
    let mut breaks = Vec::with_capacity(n + 1);
    breaks.push(0.0);
    for k in 1..n {
        let yk = y0 * (log_ratio * k as f64 / n as f64).exp();
        breaks.push((yk - y0) / dy);
    }
    breaks.push(1.0);
    breaks
}

/// Panel boundaries for a circular arc parametrized affinely in the central
/// angle, graded uniformly in `u = log tan(phi/2)`. Near the real axis the
/// integrand grows like `1/sin(phi)`; exponential grading bounds its
/// variation per panel.
fn arc_angle_breaks(theta1: f64, theta2: f64, n: usize) -> Vec<f64> {
    let u1 = (0.5 * theta1).tan().ln();
    let u2 = (0.5 * theta2).tan().ln();
    if !(u1.is_finite() && u2.is_finite()) || u1 == u2 {
        return uniform_breaks(n);
    }
    let span = theta2 - theta1;
    let mut breaks = Vec::with_capacity(n + 1);
    breaks.push(0.0);
    for k in 1..n {
        let uk = u1 + (u2 - u1) * k as f64 / n as f64;
        let phik = 2.0 * uk.exp().atan();
        breaks.push((phik - theta1) / span);
    }
    breaks.push(1.0);
    breaks
}

/// `1 + cos(theta)` for a point on the circle `(re - c)^2 + im^2 = R^2`,
/// evaluated without cancellation on either side of the center.
fn one_plus_cos(re: f64, im: f64, center: f64, radius: f64) -> f64 {
    if re <= center {
        // 1 + (re-c)/R = im^2 / (R (R + c - re)) on the circle.
        im * im / (radius * (radius + (center - re)))
    } else {
        ((re - center) + radius) / radius
    }
}

/// Length of the geodesic from `z1` to `z2` evaluated from the angle
/// antiderivative, independently of the closed form of `delta`.
///
/// For a semicircular arc traversed toward increasing real part the length
/// under the `delta` norm is `(1/2) log((1 + cos th2)/(1 + cos th1))`, where
/// `th_i` are the central angles of the endpoints; leftward traversal is
/// reduced to this by the mirror symmetry. Verticals contribute
/// `log(Im z2 / Im z1)` upward and zero downward. The `delta_p` length adds
/// the Busemann difference `(p/2) log(Im z1 / Im z2)`.
pub fn geodesic_length_closed_form(
    p: InterpolationParam,
    z1: &HalfPlanePoint,
    z2: &HalfPlanePoint,
) -> Result<f64> {
    if z1 == z2 {
        return Err(Error::CoincidentPoints);
    }
    let busemann_term = 0.5 * p.get() * (z1.im() / z2.im()).ln();
    if z1.re() == z2.re() {
        let base = if z2.im() > z1.im() {
            (z2.im() / z1.im()).ln()
        } else {
            0.0
        };
        return Ok(base + busemann_term);
    }
    let (w1, w2) = if z2.re() > z1.re() {
        (*z1, *z2)
    } else {
        (crate::halfplane::mirror(z1), crate::halfplane::mirror(z2))
    };
    let (center, radius) = match geodesic_through(&w1, &w2)? {
        HyperbolicGeodesic::Semicircle { center, radius, .. } => (center, radius),
        HyperbolicGeodesic::Vertical { .. } => unreachable!("real parts differ"),
    };
    let start = one_plus_cos(w1.re(), w1.im(), center, radius);
    let end = one_plus_cos(w2.re(), w2.im(), center, radius);
    Ok(0.5 * (end / start).ln() + busemann_term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thurston::{delta, delta_p};

    fn pt(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(re, im).unwrap()
    }

    fn tv(re: f64, im: f64, vx: f64, vy: f64) -> TangentVector {
        TangentVector::new(pt(re, im), vx, vy).unwrap()
    }

    fn p(v: f64) -> InterpolationParam {
        InterpolationParam::new(v).unwrap()
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_delta(&tv(0.0, 1.0, 0.0, 1.0)), 1.0);
        assert_eq!(norm_delta(&tv(0.0, 1.0, 0.0, -1.0)), 0.0);
        assert_eq!(norm_delta(&tv(0.0, 1.0, 1.0, 0.0)), 0.5);
        assert_eq!(norm_delta_p(p(1.0), &tv(0.0, 1.0, 0.0, -1.0)), 0.5);
        assert_eq!(norm_delta_p(p(0.5), &tv(0.0, 1.0, 0.0, 1.0)), 0.75);
        assert_eq!(norm_delta_p(p(0.3), &tv(2.0, 5.0, 0.0, 0.0)), 0.0);
        assert_eq!(norm_delta_p(p(0.0), &tv(1.0, 2.0, 3.0, -1.0)), norm_delta(&tv(1.0, 2.0, 3.0, -1.0)));
    }

    #[test]
    fn norm_homogeneity_and_subadditivity() {
        let z = pt(0.7, 1.3);
        let pairs = [(1.0, 0.5), (-2.0, -0.1), (0.0, -3.0), (4.0, 4.0)];
        for pp in [0.0, 0.3, 1.0] {
            let pp = p(pp);
            for &(vx, vy) in &pairs {
                let n = norm_delta_p(pp, &TangentVector::new(z, vx, vy).unwrap());
                for c in [0.5, 2.0, 17.0] {
                    let scaled = norm_delta_p(pp, &TangentVector::new(z, c * vx, c * vy).unwrap());
                    assert!((scaled - c * n).abs() < 1e-12 * (1.0 + c * n));
                }
                for &(wx, wy) in &pairs {
                    let m = norm_delta_p(pp, &TangentVector::new(z, wx, wy).unwrap());
                    let s = norm_delta_p(pp, &TangentVector::new(z, vx + wx, vy + wy).unwrap());
                    assert!(s <= n + m + 1e-12);
                }
            }
        }
    }

    #[test]
    fn norm_comparison_with_hyperbolic() {
        // p ||v||_1 <= ||v||_p <= (2-p) ||v||_1.
        let z = pt(-1.0, 0.4);
        for pp in [0.1, 0.5, 0.9, 1.0] {
            let param = p(pp);
            for (vx, vy) in [(1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (-2.0, 3.0)] {
                let v = TangentVector::new(z, vx, vy).unwrap();
                let hyp = norm_delta_p(InterpolationParam::ONE, &v);
                let np = norm_delta_p(param, &v);
                assert!(np >= pp * hyp - 1e-14);
                assert!(np <= (2.0 - pp) * hyp + 1e-14);
            }
        }
    }

    #[test]
    fn path_length_vertical_arcs() {
        let up = PiecewisePath::new(vec![PathSegment::arc_between(pt(0.0, 1.0), pt(0.0, 2.0)).unwrap()])
            .unwrap();
        let len = path_length(p(0.0), &up, &QuadratureConfig::default()).unwrap();
        assert!((len - 2.0f64.ln()).abs() < 1e-10);

        let down =
            PiecewisePath::new(vec![PathSegment::arc_between(pt(0.0, 2.0), pt(0.0, 1.0)).unwrap()])
                .unwrap();
        assert_eq!(path_length(p(0.0), &down, &QuadratureConfig::default()).unwrap(), 0.0);
    }

    #[test]
    fn path_length_euclidean_chord_dominates_delta() {
        let z1 = pt(0.0, 1.0);
        let z2 = pt(1.0, 1.0);
        let chord = PiecewisePath::new(vec![PathSegment::Polyline(vec![z1, z2])]).unwrap();
        let len = path_length(p(0.0), &chord, &QuadratureConfig::default()).unwrap();
        // Constant integrand 1/2 along the horizontal chord at height 1.
        assert!((len - 0.5).abs() < 1e-12);
        assert!(len >= delta(&z1, &z2) - 1e-8);
    }

    #[test]
    fn path_length_rejects_discontinuous_paths() {
        let a = PathSegment::Polyline(vec![pt(0.0, 1.0), pt(1.0, 1.0)]);
        let b = PathSegment::Polyline(vec![pt(2.0, 1.0), pt(3.0, 1.0)]);
        match PiecewisePath::new(vec![a, b]) {
            Err(Error::DiscontinuousPath { index: 0, .. }) => {}
            other => panic!("expected DiscontinuousPath, got {other:?}"),
        }
    }

    #[test]
    fn closed_form_examples() {
        let golden = 1.618_033_988_749_894_9f64;
        let v = geodesic_length_closed_form(p(0.0), &pt(0.0, 1.0), &pt(1.0, 1.0)).unwrap();
        assert!((v - golden.ln()).abs() < 1e-14);
        let v = geodesic_length_closed_form(p(0.0), &pt(0.0, 1.0), &pt(0.0, 2.0)).unwrap();
        assert!((v - 2.0f64.ln()).abs() < 1e-15);
        let v = geodesic_length_closed_form(p(1.0), &pt(0.0, 1.0), &pt(0.0, 2.0)).unwrap();
        assert!((v - 0.5 * 2.0f64.ln()).abs() < 1e-15);
        assert_eq!(
            geodesic_length_closed_form(p(0.5), &pt(0.0, 1.0), &pt(0.0, 1.0)),
            Err(Error::CoincidentPoints)
        );
    }

    #[test]
    fn closed_form_agrees_with_delta_p() {
        let pairs = [
            (pt(0.0, 1.0), pt(1.0, 1.0)),
            (pt(3.0, 0.2), pt(-2.0, 5.0)),
            (pt(-1.0, 4.0), pt(-0.5, 0.05)),
            // Extreme aspect ratio: endpoints hug the real axis.
            (pt(-10.0, 0.01), pt(10.0, 0.01)),
            (pt(10.0, 0.01), pt(-10.0, 0.01)),
        ];
        for (z1, z2) in pairs {
            for pp in [0.0, 0.25, 1.0] {
                let param = p(pp);
                let lhs = geodesic_length_closed_form(param, &z1, &z2).unwrap();
                let rhs = delta_p(param, &z1, &z2);
                assert!(
                    (lhs - rhs).abs() < 1e-12,
                    "closed form {lhs} vs delta_p {rhs} at p={pp}"
                );
            }
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let cfg = QuadratureConfig::default();
        let pairs = [
            (pt(0.0, 1.0), pt(1.0, 1.0)),
            (pt(2.0, 0.5), pt(-1.0, 3.0)),
            (pt(0.0, 2.0), pt(0.0, 0.3)),
            // Steep 1/y spikes near both ends; exercises the graded panels.
            (pt(-10.0, 0.01), pt(10.0, 0.01)),
            (pt(-8.0, 0.01), pt(9.0, 7.0)),
        ];
        for (z1, z2) in pairs {
            for pp in [0.0, 0.6, 1.0] {
                let param = p(pp);
                let arc = PiecewisePath::new(vec![PathSegment::arc_between(z1, z2).unwrap()]).unwrap();
                let by_quad = path_length(param, &arc, &cfg).unwrap();
                let exact = geodesic_length_closed_form(param, &z1, &z2).unwrap();
                assert!(
                    (by_quad - exact).abs() <= cfg.rel_tol * 10.0 * (1.0 + exact.abs()),
                    "quadrature {by_quad} vs closed form {exact} at p={pp}"
                );
            }
        }
    }

    #[test]
    fn finite_difference_quotient_approaches_norm() {
        let z = pt(0.4, 1.1);
        let param = p(0.35);
        let v = TangentVector::new(z, 0.8, -0.3).unwrap();
        let n = norm_delta_p(param, &v);
        let mut last = f64::INFINITY;
        for t in [1e-3, 1e-4, 1e-5] {
            let moved = HalfPlanePoint::new(z.re() + t * v.v_re(), z.im() + t * v.v_im()).unwrap();
            let quotient = delta_p(param, &z, &moved) / t;
            let err = (quotient - n).abs();
            assert!(err < last, "error should shrink with t");
            last = err;
        }
        assert!(last < 1e-3);
    }
}
