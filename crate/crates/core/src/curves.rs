//! The flat-torus side: simple closed curves, their flat lengths, and the
//! supremum `kappa` recovered by rational-slope enumeration.
//!
//! A primitive pair `(p, q)` names the homotopy class `p a + q b` of simple
//! closed curves; on the torus of modulus `z` its flat geodesic length is
//! `|p + q z|`. The length ratio between two tori depends on the class only
//! through its slope `-p/q` on the boundary of the half-plane, so
//!
//! ```text
//! kappa(z1, z2) = log sup over classes of len_2 / len_1
//! ```
//!
//! equals `delta(z1, z2)`, the supremum being approached along rational
//! slopes converging to the extremal slope `x_plus`. [`kappa_sup`] realizes
//! the finite-denominator truncation of that supremum: an exhaustive sweep of
//! small denominators near `x_plus` plus the continued-fraction convergents
//! and semiconvergents of `x_plus`, which are exactly the one-sided best
//! rational approximants.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::halfplane::{geodesic_through, BoundaryPoint, HalfPlanePoint, HyperbolicGeodesic};
use crate::thurston::{extremal_slopes, sup_extended_line, OracleConfig};

/// A marked flat torus `C / (Z + z Z)` carried by its modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkedFlatTorus {
    modulus: HalfPlanePoint,
}

impl MarkedFlatTorus {
    pub fn new(modulus: HalfPlanePoint) -> Self {
        Self { modulus }
    }

    #[inline]
    pub fn modulus(&self) -> HalfPlanePoint {
        self.modulus
    }
}

/// A homotopy class of essential simple closed curves: a primitive integer
/// pair, canonicalized so `q > 0`, or `q = 0` and `p = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CurveClass {
    p: i64,
    q: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a.rem_euclid(b));
    }
    a.abs()
}

impl CurveClass {
    /// Builds a class, rejecting `(0, 0)` and non-primitive pairs.
    /// `(p, q)` and `(-p, -q)` name the same curve and canonicalize alike.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if (p, q) == (0, 0) || gcd(p, q) != 1 {
            return Err(Error::InvalidCurveClass { p, q });
        }
        if q < 0 || (q == 0 && p < 0) {
            Ok(Self { p: -p, q: -q })
        } else {
            Ok(Self { p, q })
        }
    }

    #[inline]
    pub fn p(&self) -> i64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> i64 {
        self.q
    }
}

impl std::fmt::Display for CurveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Flat geodesic length `|p + q z|` of the class on the given torus.
pub fn curve_length(torus: &MarkedFlatTorus, class: &CurveClass) -> f64 {
    let z = torus.modulus();
    let p = class.p as f64;
    let q = class.q as f64;
    (p + q * z.re()).hypot(q * z.im())
}

/// The boundary slope `-p/q` identified with the class; `(1, 0)` maps to
/// infinity.
pub fn class_slope(class: &CurveClass) -> BoundaryPoint {
    if class.q == 0 {
        BoundaryPoint::Infinity
    } else {
        BoundaryPoint::Finite(-(class.p as f64) / class.q as f64)
    }
}

/// Exhaustive sweep limit: all primitive classes with denominator up to this
/// bound (and slope within two units of `x_plus`) are tried directly.
const EXHAUSTIVE_Q: i64 = 50;

/// The truncated curve supremum: log of the largest length ratio over
/// primitive classes with `|q| <= q_max` (plus the `q = 0` class), together
/// with the class attaining it. Ties resolve to the lexicographically
/// smallest `(q, p)`.
///
/// Nondecreasing in `q_max`, bounded above by `delta(z1, z2)`, and converging
/// to it; the convergents of `x_plus` approach at rate `1/q^2`, so the gap in
/// value closes like `1/q^4`.
pub fn kappa_sup(
    z1: &HalfPlanePoint,
    z2: &HalfPlanePoint,
    q_max: u64,
) -> Result<(f64, CurveClass)> {
    assert!(q_max >= 1, "q_max must be at least 1");
    if z1 == z2 {
        return Err(Error::CoincidentPoints);
    }
    let (x_plus, _) = extremal_slopes(z1, z2)?;

    // Candidate set keyed (q, p): dedupes and fixes the scan order.
    let mut candidates: BTreeSet<(i64, i64)> = BTreeSet::new();
    candidates.insert((0, 1));

    if let Some(target) = x_plus.value() {
        let q_cap = q_max.min(EXHAUSTIVE_Q as u64) as i64;
        for q in 1..=q_cap {
            // Slopes within two units of the target; -p/q in [t-2, t+2].
            let p_lo = (-(target + 2.0) * q as f64).floor() as i64;
            let p_hi = (-(target - 2.0) * q as f64).ceil() as i64;
            for p in p_lo..=p_hi {
                if gcd(p, q) == 1 {
                    candidates.insert((q, p));
                }
            }
        }
        for (num, den) in rational_approximants(target, q_max as i64) {
            // Slope num/den corresponds to the class (-num, den).
            candidates.insert((den, -num));
        }
    }

    let t1 = MarkedFlatTorus::new(*z1);
    let t2 = MarkedFlatTorus::new(*z2);
    let mut best_ratio = f64::NEG_INFINITY;
    let mut best_class = CurveClass { p: 1, q: 0 };
    for (q, p) in candidates {
        let class = CurveClass::new(p, q).expect("enumeration yields primitive pairs");
        let ratio = curve_length(&t2, &class) / curve_length(&t1, &class);
        if ratio > best_ratio {
            best_ratio = ratio;
            best_class = class;
        }
    }
    Ok((best_ratio.ln(), best_class))
}

/// Continued-fraction convergents and semiconvergents of `x` with
/// denominators up to `q_max`, as reduced fractions `(numerator, denominator)`.
fn rational_approximants(x: f64, q_max: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    // h/k recurrences seeded with the formal (h_{-1}, h_{-2}) pair.
    let (mut h_prev, mut k_prev): (i64, i64) = (1, 0);
    let (mut h_curr, mut k_curr): (i64, i64) = (x.floor() as i64, 1);
    out.push((h_curr, k_curr));
    let mut frac = x - x.floor();

    for _ in 0..64 {
        if frac.abs() < 1e-15 || k_curr > q_max {
            break;
        }
        let inv = 1.0 / frac;
        if !inv.is_finite() || inv > 1e15 {
            break;
        }
        let a = inv.floor() as i64;
        frac = inv - inv.floor();

        // Semiconvergents between the previous two convergents, capped by the
        // denominator budget rather than by the (possibly huge) digit a.
        let j_cap = if k_curr > 0 {
            (q_max - k_prev) / k_curr
        } else {
            0
        };
        for j in 1..=a.min(j_cap.max(0)) {
            let (Some(hj), Some(kj)) = (
                h_prev.checked_add(j.checked_mul(h_curr).unwrap_or(i64::MAX)),
                k_prev.checked_add(j.checked_mul(k_curr).unwrap_or(i64::MAX)),
            ) else {
                return out;
            };
            if kj > q_max {
                break;
            }
            out.push((hj, kj));
        }

        let (Some(h_next), Some(k_next)) = (
            a.checked_mul(h_curr).and_then(|v| v.checked_add(h_prev)),
            a.checked_mul(k_curr).and_then(|v| v.checked_add(k_prev)),
        ) else {
            break;
        };
        if k_next > q_max {
            break;
        }
        (h_prev, k_prev) = (h_curr, k_curr);
        (h_curr, k_curr) = (h_next, k_next);
        out.push((h_curr, k_curr));
    }
    out
}

/// Extremal length `|z - x|^2 / Im z` of the measured foliation of finite
/// slope `x`. The infinite slope is rejected.
pub fn extremal_length(z: &HalfPlanePoint, x: BoundaryPoint) -> Result<f64> {
    match x {
        BoundaryPoint::Finite(x) => {
            let d = z.re() - x;
            Ok((d * d + z.im() * z.im()) / z.im())
        }
        BoundaryPoint::Infinity => Err(Error::InfiniteSlopeUnsupported),
    }
}

/// Kerckhoff's extremal-length formula for the Teichmueller distance,
/// `(1/2) log sup_x Ext_{z2}(x) / Ext_{z1}(x)`, evaluated by the same
/// compactified-grid search as the `delta` oracle. Equals `delta_p` at
/// `p = 1`.
pub fn kerckhoff_delta1(
    z1: &HalfPlanePoint,
    z2: &HalfPlanePoint,
    cfg: &OracleConfig,
) -> Result<f64> {
    if z1 == z2 {
        return Err(Error::CoincidentPoints);
    }
    let (center, scale) = match geodesic_through(z1, z2)? {
        HyperbolicGeodesic::Semicircle { center, radius, .. } => (center, radius),
        HyperbolicGeodesic::Vertical { x, .. } => (x, z1.im().max(z2.im())),
    };
    let (a, b) = (z1.re(), z1.im());
    let (alpha, beta) = (z2.re(), z2.im());
    let objective = move |x: f64| {
        let e2 = ((alpha - x) * (alpha - x) + beta * beta) / beta;
        let e1 = ((a - x) * (a - x) + b * b) / b;
        e2 / e1
    };
    // The extremal-length ratio is the squared distance ratio times a
    // constant, so it shares its critical point; it tends to b/beta at
    // infinity.
    let slope = crate::thurston::log_ratio_slope(a, b, alpha, beta);
    let (sup, _, _) = sup_extended_line(&objective, &slope, b / beta, center, scale, cfg);
    Ok(0.5 * sup.ln())
}
