//! The asymmetric weak metric `delta`, its brute-force oracle, and the
//! interpolating family `delta_p`.
//!
//! `delta(z1, z2) = log sup_x |(z2 - x)/(z1 - x)|`, the supremum running over
//! the extended real line with the convention that the ratio at infinity is 1.
//! The closed form is
//!
//! ```text
//! delta(z1, z2) = log( (|z2 - conj z1| + |z2 - z1|) / (2 Im z1) )
//! ```
//!
//! and the supremum is attained at the endpoint `x_plus` of the hyperbolic
//! geodesic through the two points, on the `z1` side. The one-parameter family
//!
//! ```text
//! delta_p(z1, z2) = (p/2) log(Im z1 / Im z2) + delta(z1, z2),   0 <= p <= 1,
//! ```
//!
//! interpolates from `delta` at `p = 0` to the hyperbolic (Teichmueller)
//! metric at `p = 1`; the added term is a difference of Busemann functions of
//! the upward ray, so all of these share their geodesics with `delta`.
//!
//! Every closed form here is paired with [`delta_oracle`], an independent
//! maximization of the defining ratio over a compactified grid, so the
//! algebra never has to be taken on faith.

use crate::error::{Error, Result};
use crate::halfplane::{geodesic_through, BoundaryPoint, HalfPlanePoint, HyperbolicGeodesic};

/// Interpolation parameter `p in [0, 1]` of the family `delta_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationParam(f64);

impl InterpolationParam {
    /// `p = 0`: the asymmetric metric `delta` itself.
    pub const ZERO: InterpolationParam = InterpolationParam(0.0);
    /// `p = 1`: the hyperbolic metric.
    pub const ONE: InterpolationParam = InterpolationParam(1.0);

    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::ParamOutOfRange { p });
        }
        Ok(Self(p))
    }

    #[inline]
    pub fn get(&self) -> f64 {
        self.0
    }
}

/// Configuration of the compactified-grid supremum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Number of grid cells on the compactified line (default 4096).
    pub grid_size: usize,
    /// Golden-section refinement stops at this angular interval width
    /// (default 1e-12).
    pub refine_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid_size: 4096,
            refine_tol: 1e-12,
        }
    }
}

/// Outcome of a supremum search over the extended real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupResult {
    /// Log of the supremum.
    pub value: f64,
    /// Where the supremum sits; `Infinity` when it is only a limit.
    pub argmax: BoundaryPoint,
    /// False when the supremum is the boundary limit rather than a maximum.
    pub attained: bool,
}

/// The weak metric `delta` in closed form.
///
/// Zero exactly on the closed downward vertical ray from `z1` (that case is
/// branched on, so rounding never produces a stray negative there); satisfies
/// the triangle inequality but not symmetry.
pub fn delta(z1: &HalfPlanePoint, z2: &HalfPlanePoint) -> f64 {
    if z2.re() == z1.re() && z2.im() <= z1.im() {
        return 0.0;
    }
    let dre = z2.re() - z1.re();
    let to_conj = dre.hypot(z2.im() + z1.im());
    let direct = dre.hypot(z2.im() - z1.im());
    ((to_conj + direct) / (2.0 * z1.im())).ln()
}

/// The ratio `|z2 - x| / |z1 - x|` of Euclidean distances to a boundary
/// point, extended to `x = Infinity` by its limit value 1.
pub fn ratio_at(z1: &HalfPlanePoint, z2: &HalfPlanePoint, x: BoundaryPoint) -> f64 {
    match x {
        BoundaryPoint::Finite(x) => {
            (z2.re() - x).hypot(z2.im()) / (z1.re() - x).hypot(z1.im())
        }
        BoundaryPoint::Infinity => 1.0,
    }
}

/// Relative threshold below which a real-part difference is treated as
/// vertical, avoiding catastrophic cancellation in the slope formulas.
const VERTICAL_SWITCH: f64 = 1e-12;

/// The extremal slopes `(x_plus, x_minus)`: endpoints at infinity of the
/// hyperbolic geodesic through the points, with `x_plus` on the `z1` side.
/// `ratio_at(z1, z2, x_plus)` realizes the supremum defining `delta`.
///
/// The computation reduces to the normal form `z1 = i b`, `Re z2 > 0` by a
/// horizontal translation and, if needed, the mirror `z -> -conj(z)`, and
/// rationalizes the smaller quadratic root so nearly vertical pairs do not
/// cancel.
pub fn extremal_slopes(
    z1: &HalfPlanePoint,
    z2: &HalfPlanePoint,
) -> Result<(BoundaryPoint, BoundaryPoint)> {
    if z1 == z2 {
        return Err(Error::CoincidentPoints);
    }
    let (a, b) = (z1.re(), z1.im());
    let (alpha, beta) = (z2.re(), z2.im());
    let da = alpha - a;

    if da.abs() <= VERTICAL_SWITCH * b.max(beta) && beta != b {
        return Ok(if beta > b {
            (BoundaryPoint::Finite(a), BoundaryPoint::Infinity)
        } else {
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(a))
        });
    }

    // Normal form: distance d > 0 to the right.
    let d = da.abs();
    let quad = d * d + beta * beta - b * b;
    let spread = d.hypot(beta - b) * d.hypot(beta + b);
    let x_plus_local = if quad > 0.0 {
        // (quad - spread) / (2 d) rationalized: the numerator cancels.
        -2.0 * d * b * b / (spread + quad)
    } else {
        (quad - spread) / (2.0 * d)
    };
    let x_minus_local = if quad < 0.0 {
        2.0 * d * b * b / (spread - quad)
    } else {
        (quad + spread) / (2.0 * d)
    };

    let (x_plus, x_minus) = if da > 0.0 {
        (a + x_plus_local, a + x_minus_local)
    } else {
        (a - x_plus_local, a - x_minus_local)
    };
    Ok((BoundaryPoint::Finite(x_plus), BoundaryPoint::Finite(x_minus)))
}

/// The interpolating weak metric `delta_p`.
pub fn delta_p(p: InterpolationParam, z1: &HalfPlanePoint, z2: &HalfPlanePoint) -> f64 {
    0.5 * p.get() * (z1.im() / z2.im()).ln() + delta(z1, z2)
}

/// Arithmetic symmetrisation `(delta(z1,z2) + delta(z2,z1)) / 2`; coincides
/// with the curvature -4 hyperbolic distance.
pub fn symmetrize(z1: &HalfPlanePoint, z2: &HalfPlanePoint) -> f64 {
    0.5 * (delta(z1, z2) + delta(z2, z1))
}

/// Brute-force verification of the supremum defining `delta`.
///
/// The extended real line is compactified as `x = c + s tan(theta)` with
/// `(c, s)` the center and radius of the hyperbolic geodesic through the two
/// points (for vertical pairs, the common real part and the larger height).
/// A uniform grid in `theta` brackets the single interior maximum, which a
/// golden-section pass then refines to `cfg.refine_tol`.
pub fn delta_oracle(
    z1: &HalfPlanePoint,
    z2: &HalfPlanePoint,
    cfg: &OracleConfig,
) -> Result<SupResult> {
    if z1 == z2 {
        return Err(Error::CoincidentPoints);
    }
    let (center, scale) = match geodesic_through(z1, z2)? {
        HyperbolicGeodesic::Semicircle { center, radius, .. } => (center, radius),
        HyperbolicGeodesic::Vertical { x, .. } => (x, z1.im().max(z2.im())),
    };
    let (a, b) = (z1.re(), z1.im());
    let (alpha, beta) = (z2.re(), z2.im());
    let ratio = move |x: f64| (alpha - x).hypot(beta) / (a - x).hypot(b);
    let slope = log_ratio_slope(a, b, alpha, beta);
    let (sup, argmax, attained) = sup_extended_line(&ratio, &slope, 1.0, center, scale, cfg);
    Ok(SupResult {
        value: sup.ln(),
        argmax,
        attained,
    })
}

/// Derivative of `log |(z2 - x)/(z1 - x)|` in `x`, used to pin the argmax:
/// near-degenerate pairs make the ratio maximum flat to machine precision,
/// but its derivative still crosses zero sharply.
pub(crate) fn log_ratio_slope(
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
) -> impl Fn(f64) -> f64 {
    move |x: f64| {
        let u = x - alpha;
        let v = x - a;
        u / (u * u + beta * beta) - v / (v * v + b * b)
    }
}

/// Maximizes `f` over the extended real line against a prescribed boundary
/// limit, reporting `(sup, argmax, attained)`. `slope` must be the sign of
/// `d(log f)/dx` (any positive multiple works).
///
/// Correct whenever `f` is continuous with at most one interior local maximum
/// on the compactified circle, which holds for every distance-ratio objective
/// in this crate. The golden-section pass settles the value; the argmax is
/// then re-refined by bisecting the derivative sign, which stays sharp even
/// when the maximum itself is flat to machine precision.
pub(crate) fn sup_extended_line<F, D>(
    f: &F,
    slope: &D,
    boundary: f64,
    center: f64,
    scale: f64,
    cfg: &OracleConfig,
) -> (f64, BoundaryPoint, bool)
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    use std::f64::consts::FRAC_PI_2;

    let n = cfg.grid_size.max(8);
    let at = |theta: f64| center + scale * theta.tan();
    let g = |theta: f64| -> f64 {
        if theta <= -FRAC_PI_2 || theta >= FRAC_PI_2 {
            boundary
        } else {
            f(at(theta))
        }
    };

    // Grid pass; first strictly-greater value wins, so ties resolve toward
    // the smaller angle deterministically.
    let step = std::f64::consts::PI / n as f64;
    let mut best_k = 0usize;
    let mut best_val = boundary;
    for k in 1..n {
        let val = g(-FRAC_PI_2 + step * k as f64);
        if val > best_val {
            best_val = val;
            best_k = k;
        }
    }
    if best_k == 0 {
        return (boundary, BoundaryPoint::Infinity, false);
    }

    // The neighbours of the best cell bracket the interior maximum.
    let lo = -FRAC_PI_2 + step * (best_k - 1) as f64;
    let hi = -FRAC_PI_2 + step * (best_k + 1) as f64;
    let (theta_gold, val_gold) = golden_max(&g, lo, hi, cfg.refine_tol);

    // Derivative-sign bisection on the same bracket.
    let theta_star = if slope(at(lo)) > 0.0 && slope(at(hi)) < 0.0 {
        let (mut dlo, mut dhi) = (lo, hi);
        while dhi - dlo > cfg.refine_tol {
            let mid = 0.5 * (dlo + dhi);
            if slope(at(mid)) > 0.0 {
                dlo = mid;
            } else {
                dhi = mid;
            }
        }
        0.5 * (dlo + dhi)
    } else {
        theta_gold
    };

    let x_star = at(theta_star);
    let val_star = val_gold.max(f(x_star));
    if val_star <= boundary {
        return (boundary, BoundaryPoint::Infinity, false);
    }
    (val_star, BoundaryPoint::Finite(x_star), true)
}

/// Golden-section maximization on `[lo, hi]`, refined until the bracket is
/// narrower than `tol`. Returns the best evaluated abscissa and value.
fn golden_max<F: Fn(f64) -> f64>(g: &F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;

    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    let (mut best_x, mut best_f) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };

    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = g(x2);
        }
        let (x, fx) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        if fx > best_f {
            best_x = x;
            best_f = fx;
        }
    }
    (best_x, best_f)
}
