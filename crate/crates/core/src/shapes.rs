//! Sampled geometry: unit tangent circles and metric sphere boundaries.
//!
//! The unit circle of the `delta` norm at `z` is a parabola with focus at the
//! origin of the tangent plane and vertex at `i Im z`; for `p > 0` the
//! `delta_p` unit circle closes up into an ellipse with one focus at the
//! origin. Forward metric spheres `{ w : delta(z, w) = r }` are Euclidean
//! ellipses with foci `z` and `conj z`; backward spheres have no such closed
//! form and are traced by root-finding along the geodesics entering `z`.
//!
//! Everything here emits plain coordinate polylines for plotting and tests.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::halfplane::HalfPlanePoint;
use crate::thurston::{delta, InterpolationParam};

/// A sampled plane curve; `closed` marks a full loop (no repeated endpoint).
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline2D {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

/// Samples the unit circle of the `delta` norm at `z`: the parabola
/// `v2 = -v1^2 / (4 beta) + beta`, swept uniformly over `v1` in
/// `[-4 beta, 4 beta]`. Open, since the parabola is unbounded.
pub fn unit_circle_delta(z: &HalfPlanePoint, n: usize) -> Polyline2D {
    assert!(n >= 2, "need at least two samples");
    let beta = z.im();
    let mut points = Vec::with_capacity(n);
    for j in 0..n {
        let v1 = -4.0 * beta + 8.0 * beta * j as f64 / (n - 1) as f64;
        points.push((v1, -v1 * v1 / (4.0 * beta) + beta));
    }
    Polyline2D {
        points,
        closed: false,
    }
}

/// Samples the unit circle of the `delta_p` norm at `z` for `p > 0`: the
/// ellipse `r(theta) = 2 beta / (1 + (1-p) sin theta)` about the origin
/// focus, swept uniformly in `theta`. Fails with `DegenerateParabola` at
/// `p = 0`.
pub fn unit_circle_delta_p(
    p: InterpolationParam,
    z: &HalfPlanePoint,
    n: usize,
) -> Result<Polyline2D> {
    if p.get() == 0.0 {
        return Err(Error::DegenerateParabola);
    }
    assert!(n >= 3, "need at least three samples");
    let beta = z.im();
    let ecc = 1.0 - p.get();
    let mut points = Vec::with_capacity(n);
    for j in 0..n {
        let theta = 2.0 * PI * j as f64 / n as f64;
        let r = 2.0 * beta / (1.0 + ecc * theta.sin());
        points.push((r * theta.cos(), r * theta.sin()));
    }
    Ok(Polyline2D {
        points,
        closed: true,
    })
}

/// Foci of the `delta_p` unit ellipse: the origin and
/// `(0, -4 Im(z) (1-p) / (p (2-p)))`. Fails with `DegenerateParabola` at
/// `p = 0`.
pub fn ellipse_foci(
    p: InterpolationParam,
    z: &HalfPlanePoint,
) -> Result<((f64, f64), (f64, f64))> {
    let pv = p.get();
    if pv == 0.0 {
        return Err(Error::DegenerateParabola);
    }
    let second = -4.0 * z.im() * (1.0 - pv) / (pv * (2.0 - pv));
    Ok(((0.0, 0.0), (0.0, second)))
}

/// Samples the forward sphere `{ w : delta(z, w) = r }`: the part above the
/// real axis of the Euclidean ellipse with foci `z`, `conj z` and distance
/// sum `2 Im(z) e^r`.
///
/// The ellipse always dips below the axis, so sampling runs strictly between
/// the two axis crossings (at `sin theta = -2b/s` in polar angle about the
/// focus `z`) and the polyline is open.
pub fn forward_ball_boundary(z: &HalfPlanePoint, r: f64, n: usize) -> Polyline2D {
    assert!(r > 0.0 && r.is_finite(), "radius must be positive");
    assert!(n >= 3, "need at least three samples");
    let (a, b) = (z.re(), z.im());
    let sum = 2.0 * b * r.exp();
    let cross = (2.0 * b / sum).asin(); // = asin(e^{-r})
    let theta_lo = -cross;
    let theta_hi = PI + cross;
    let span = theta_hi - theta_lo;
    let mut points = Vec::with_capacity(n);
    for j in 0..n {
        // Half-step inset keeps every sample strictly above the axis.
        let theta = theta_lo + span * (j as f64 + 0.5) / n as f64;
        let rho = (sum * sum - 4.0 * b * b) / (2.0 * sum + 4.0 * b * theta.sin());
        points.push((a + rho * theta.cos(), b + rho * theta.sin()));
    }
    Polyline2D {
        points,
        closed: false,
    }
}

/// Default arc-length budget for the backward sphere root search.
pub const DEFAULT_BACKWARD_ARC_CAP: f64 = 64.0;

/// Samples the backward sphere `{ w : delta(w, z) = r }` with the default
/// arc-length cap; see [`backward_ball_boundary_with_cap`].
pub fn backward_ball_boundary(z: &HalfPlanePoint, r: f64, n: usize) -> Result<Polyline2D> {
    backward_ball_boundary_with_cap(z, r, n, DEFAULT_BACKWARD_ARC_CAP)
}

/// Samples the backward sphere by marching out of `z` along the hyperbolic
/// geodesic in each of `n` uniformly spread directions and bisecting
/// `delta(., z) = r` in arc length.
///
/// `delta(., z)` is nondecreasing along each such geodesic, but can stay at
/// zero: straight above `z` there is no crossing at all. Directions whose
/// search would exceed `cap` are clipped from the polyline, which is then
/// marked open; the error is returned only if fewer than two directions
/// survive.
pub fn backward_ball_boundary_with_cap(
    z: &HalfPlanePoint,
    r: f64,
    n: usize,
    cap: f64,
) -> Result<Polyline2D> {
    assert!(r > 0.0 && r.is_finite(), "radius must be positive");
    assert!(n >= 3, "need at least three samples");
    let mut points = Vec::with_capacity(n);
    let mut clipped = false;
    for j in 0..n {
        let psi = 2.0 * PI * j as f64 / n as f64;
        match backward_sphere_point(z, psi, r, cap) {
            Ok(w) => points.push((w.re(), w.im())),
            Err(_) => clipped = true,
        }
    }
    if points.len() < 2 {
        return Err(Error::RootNotBracketed { cap });
    }
    Ok(Polyline2D {
        points,
        closed: !clipped,
    })
}

/// Bisection tolerance on the arc-length parameter of the backward search.
const BACKWARD_BISECT_TOL: f64 = 1e-12;

/// Threshold on `|cos psi|` below which a direction is treated as vertical.
const VERTICAL_DIRECTION: f64 = 1e-12;

/// The point at `delta`-distance `r` *to* `z` along the geodesic leaving `z`
/// in direction `psi` (an angle in the tangent plane at `z`).
fn backward_sphere_point(
    z: &HalfPlanePoint,
    psi: f64,
    r: f64,
    cap: f64,
) -> Result<HalfPlanePoint> {
    let (a, b) = (z.re(), z.im());
    let (dir_x, dir_y) = (psi.cos(), psi.sin());

    if dir_x.abs() < VERTICAL_DIRECTION {
        if dir_y > 0.0 {
            // Straight up: delta(w, z) = 0 for every w above z.
            return Err(Error::RootNotBracketed { cap });
        }
        // Straight down: delta(w, z) = 2 s exactly, so solve directly.
        if r > 2.0 * cap {
            return Err(Error::RootNotBracketed { cap });
        }
        return HalfPlanePoint::new(a, b * (-r).exp());
    }

    // The geodesic through z tangent to (dir_x, dir_y): center and radius of
    // the carrier semicircle, the angle of z on it, and the sign of travel.
    let center = a + b * dir_y / dir_x;
    let radius = (b * dir_y / dir_x).hypot(b);
    let phi_z = b.atan2(a - center);
    let along = -phi_z.sin() * dir_x + phi_z.cos() * dir_y;
    let sign = if along >= 0.0 { 1.0 } else { -1.0 };
    let tan_half_start = (0.5 * phi_z).tan();

    // Arc length s (curvature -4) moves tan(phi/2) by a factor e^{2s}.
    let point_at = |s: f64| -> HalfPlanePoint {
        let t = tan_half_start * (sign * 2.0 * s).exp();
        let phi = 2.0 * t.atan();
        HalfPlanePoint::new(center + radius * phi.cos(), radius * phi.sin())
            .expect("geodesic points stay in the half-plane")
    };
    let dist_at = |s: f64| -> f64 { delta(&point_at(s), z) };

    // delta(., z) is nondecreasing in s and at most 2s, so the root (if any)
    // lies beyond r/2; double until bracketed or out of budget.
    let mut hi = (0.5 * r).max(0.5);
    while dist_at(hi) < r {
        hi *= 2.0;
        if hi > cap {
            return Err(Error::RootNotBracketed { cap });
        }
    }
    let mut lo = 0.0;
    while hi - lo > BACKWARD_BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if dist_at(mid) < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(point_at(0.5 * (lo + hi)))
}
