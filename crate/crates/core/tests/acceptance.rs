//! Acceptance suite: every published tolerance, pinned and checked at full
//! sample counts. One pass/fail line per criterion.
//!
//! Sampling domain: re in [-10, 10], im in (1e-2, 10], fixed seed. The
//! companion CLI determinism criterion lives in the CLI crate's own
//! acceptance test.

use torus_thurston::curves::{kappa_sup, kerckhoff_delta1};
use torus_thurston::finsler::{
    geodesic_length_closed_form, norm_delta, norm_delta_p, path_length, PathSegment,
    PiecewisePath, QuadratureConfig,
};
use torus_thurston::halfplane::{
    apply_similarity, geodesic_arc_param, geodesic_through, hyp_dist, mirror, BoundaryPoint,
    HalfPlanePoint, TangentVector,
};
use torus_thurston::selftest::{sample_pair, sample_point, sample_rng, sample_tangent};
use torus_thurston::shapes::{
    backward_ball_boundary, ellipse_foci, forward_ball_boundary, unit_circle_delta,
    unit_circle_delta_p,
};
use torus_thurston::thurston::{
    delta, delta_oracle, delta_p, extremal_slopes, symmetrize, InterpolationParam, OracleConfig,
};

const SEED: u64 = 42;

fn p(v: f64) -> InterpolationParam {
    InterpolationParam::new(v).unwrap()
}

fn report(id: u32, name: &str, worst: f64, tol: f64) {
    let verdict = if worst <= tol { "PASS" } else { "FAIL" };
    println!("acceptance criterion {id:2} ({name}): {verdict}  worst residual {worst:.3e} (tolerance {tol:.1e})");
    assert!(
        worst <= tol,
        "criterion {id} ({name}): worst residual {worst:.3e} exceeds tolerance {tol:.1e}"
    );
}

/// Criterion 1: the closed form equals the brute-force supremum to 1e-9 over
/// 1e4 pairs, and the oracle argmax lands on the extremal slope to
/// 1e-6 relative.
#[test]
fn c01_closed_form_vs_oracle() {
    let cfg = OracleConfig::default();
    let mut worst_value: f64 = 0.0;
    let mut worst_argmax: f64 = 0.0;
    for i in 0..10_000u64 {
        let mut rng = sample_rng(SEED, "acceptance_oracle", i);
        let (z1, z2) = sample_pair(&mut rng);
        let sup = delta_oracle(&z1, &z2, &cfg).unwrap();
        worst_value = worst_value.max((delta(&z1, &z2) - sup.value).abs());
        let (x_plus, _) = extremal_slopes(&z1, &z2).unwrap();
        match (sup.attained, sup.argmax, x_plus) {
            (true, BoundaryPoint::Finite(found), BoundaryPoint::Finite(expect)) => {
                worst_argmax =
                    worst_argmax.max((found - expect).abs() / (1.0 + expect.abs()));
            }
            (false, _, BoundaryPoint::Infinity) => {}
            other => panic!("oracle/slope disagreement: {other:?}"),
        }
    }
    report(1, "closed form vs oracle value", worst_value, 1e-9);
    report(1, "oracle argmax vs extremal slope", worst_argmax, 1e-6);
}

/// Criterion 2: reversal defect identity to 1e-12 over 1e4 pairs.
#[test]
fn c02_asymmetry_identity() {
    let mut worst: f64 = 0.0;
    for i in 0..10_000u64 {
        let mut rng = sample_rng(SEED, "acceptance_asymmetry", i);
        let (z1, z2) = sample_pair(&mut rng);
        worst = worst
            .max((delta(&z2, &z1) - delta(&z1, &z2) - (z1.im() / z2.im()).ln()).abs());
    }
    report(2, "asymmetry identity", worst, 1e-12);
}

/// Criterion 3: arithmetic symmetrisation equals the hyperbolic distance to
/// 1e-12 over 1e4 pairs.
#[test]
fn c03_symmetrisation_is_hyperbolic() {
    let mut worst: f64 = 0.0;
    for i in 0..10_000u64 {
        let mut rng = sample_rng(SEED, "acceptance_symmetrisation", i);
        let (z1, z2) = sample_pair(&mut rng);
        worst = worst.max((symmetrize(&z1, &z2) - hyp_dist(&z1, &z2)).abs());
    }
    report(3, "symmetrisation = hyperbolic", worst, 1e-12);
}

/// Criterion 4: delta and delta_p are additive along ordered triples of 1e3
/// random geodesics, to 1e-10.
#[test]
fn c04_geodesic_additivity() {
    use rand::Rng;
    let mut worst: f64 = 0.0;
    for i in 0..1_000u64 {
        let mut rng = sample_rng(SEED, "acceptance_additivity", i);
        let (z1, z2) = sample_pair(&mut rng);
        let g = geodesic_through(&z1, &z2).unwrap();
        let mut ts = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
        ts.sort_by(f64::total_cmp);
        let za = geodesic_arc_param(&g, &z1, &z2, ts[0]).unwrap();
        let zb = geodesic_arc_param(&g, &z1, &z2, ts[1]).unwrap();
        let zc = geodesic_arc_param(&g, &z1, &z2, ts[2]).unwrap();
        worst = worst.max((delta(&za, &zc) - delta(&za, &zb) - delta(&zb, &zc)).abs());
        for pv in [0.25, 0.5, 0.75, 1.0] {
            let pp = p(pv);
            worst = worst.max(
                (delta_p(pp, &za, &zc) - delta_p(pp, &za, &zb) - delta_p(pp, &zb, &zc)).abs(),
            );
        }
    }
    report(4, "geodesic additivity", worst, 1e-10);
}

/// Criterion 5: the quadrature length of the geodesic arc equals delta_p to
/// 1e-8 and every perturbed polyline is no shorter than delta_p - 1e-8,
/// over 1e3 pairs with 10 polylines each.
#[test]
fn c05_finsler_realization() {
    use rand::Rng;
    let arc_cfg = QuadratureConfig::default();
    let poly_cfg = QuadratureConfig {
        subdivisions: 32,
        richardson: true,
        rel_tol: 1e-10,
    };
    let mut worst_arc: f64 = 0.0;
    let mut worst_min: f64 = 0.0;
    for i in 0..1_000u64 {
        let mut rng = sample_rng(SEED, "acceptance_finsler", i);
        let (z1, z2) = sample_pair(&mut rng);
        let pv = [0.0, 0.25, 0.5, 0.75, 1.0][(i % 5) as usize];
        let pp = p(pv);
        let target = delta_p(pp, &z1, &z2);

        let arc = PiecewisePath::new(vec![PathSegment::arc_between(z1, z2).unwrap()]).unwrap();
        worst_arc = worst_arc.max((path_length(pp, &arc, &arc_cfg).unwrap() - target).abs());

        let g = geodesic_through(&z1, &z2).unwrap();
        for _ in 0..10 {
            let mut vertices = vec![z1];
            for k in 1..=3 {
                let t = k as f64 / 4.0;
                let zt = geodesic_arc_param(&g, &z1, &z2, t).unwrap();
                let dre = rng.gen_range(-0.2..0.2);
                let scale = rng.gen_range(0.8..1.25);
                vertices.push(HalfPlanePoint::new(zt.re() + dre, zt.im() * scale).unwrap());
            }
            vertices.push(z2);
            let path = PiecewisePath::new(vec![PathSegment::Polyline(vertices)]).unwrap();
            let len = path_length(pp, &path, &poly_cfg).unwrap();
            worst_min = worst_min.max(target - len);
        }
    }
    report(5, "geodesic arc realizes delta_p", worst_arc, 1e-8);
    report(5, "perturbed paths are no shorter", worst_min, 1e-8);
}

/// Criterion 6: the angle-antiderivative length formula equals delta_p to
/// 1e-12 on 1e3 non-vertical pairs.
#[test]
fn c06_theta_formula() {
    let mut worst: f64 = 0.0;
    for i in 0..1_000u64 {
        let mut rng = sample_rng(SEED, "acceptance_theta", i);
        let (z1, z2) = sample_pair(&mut rng);
        for pv in [0.0, 0.5, 1.0] {
            let pp = p(pv);
            let closed = geodesic_length_closed_form(pp, &z1, &z2).unwrap();
            worst = worst.max((closed - delta_p(pp, &z1, &z2)).abs());
        }
    }
    report(6, "theta-formula cross-check", worst, 1e-12);
}

/// Criterion 7: the finite-difference quotient at t = 1e-5 matches the weak
/// norm to 1e-3 on 1e3 random (z, v, p).
#[test]
fn c07_infinitesimal_limit() {
    use rand::Rng;
    let t = 1e-5;
    let mut worst: f64 = 0.0;
    for i in 0..1_000u64 {
        let mut rng = sample_rng(SEED, "acceptance_limit", i);
        let z = sample_point(&mut rng);
        let v = sample_tangent(&mut rng, z);
        let pp = p(rng.gen_range(0.0..=1.0));
        let moved =
            HalfPlanePoint::new(z.re() + t * v.v_re(), z.im() + t * v.v_im()).unwrap();
        worst = worst.max((delta_p(pp, &z, &moved) / t - norm_delta_p(pp, &v)).abs());
    }
    report(7, "infinitesimal limit", worst, 1e-3);
}

/// Criterion 8: conic geometry of the unit circles — parabola
/// focus-directrix to 1e-12, ellipse two-focus sum to 1e-10, and the p = 1
/// circle of radius 2 Im z to 1e-12.
#[test]
fn c08_conic_geometry() {
    use rand::Rng;
    let mut worst_parabola: f64 = 0.0;
    let mut worst_ellipse: f64 = 0.0;
    let mut worst_circle: f64 = 0.0;
    for i in 0..50u64 {
        let mut rng = sample_rng(SEED, "acceptance_conics", i);
        let z = sample_point(&mut rng);
        let beta = z.im();

        for &(v1, v2) in &unit_circle_delta(&z, 64).points {
            let focus_directrix = (v1.hypot(v2) - (2.0 * beta - v2)).abs();
            worst_parabola = worst_parabola.max(focus_directrix);
            let norm = norm_delta(&TangentVector::new(z, v1, v2).unwrap());
            worst_parabola = worst_parabola.max((norm - 1.0).abs());
        }

        let pp = p(rng.gen_range(0.01..1.0));
        let (f1, f2) = ellipse_foci(pp, &z).unwrap();
        let expected = 2.0 * beta / pp.get() + 2.0 * beta / (2.0 - pp.get());
        for &(u, v) in &unit_circle_delta_p(pp, &z, 64).unwrap().points {
            let sum = (u - f1.0).hypot(v - f1.1) + (u - f2.0).hypot(v - f2.1);
            worst_ellipse = worst_ellipse.max((sum - expected).abs() / expected);
        }

        for &(u, v) in &unit_circle_delta_p(p(1.0), &z, 64).unwrap().points {
            worst_circle = worst_circle.max((u.hypot(v) - 2.0 * beta).abs());
        }
    }
    report(8, "parabola focus-directrix", worst_parabola, 1e-12);
    report(8, "ellipse two-focus sum (relative)", worst_ellipse, 1e-10);
    report(8, "delta_1 circle radius", worst_circle, 1e-12);
}

/// Criterion 9: the curve supremum at q_max = 1e4 is within 1e-6 of delta on
/// 100 pairs, nondecreasing in q_max throughout, and exactly zero for
/// vertical-down pairs at every q_max.
#[test]
fn c09_curve_supremum() {
    use rand::Rng;
    let mut worst_gap: f64 = 0.0;
    let mut worst_monotone: f64 = 0.0;
    for i in 0..100u64 {
        let mut rng = sample_rng(SEED, "acceptance_kappa", i);
        let (z1, z2) = sample_pair(&mut rng);
        let target = delta(&z1, &z2);
        let mut last = f64::NEG_INFINITY;
        for q_max in [1, 10, 100, 1_000, 10_000] {
            let (value, _) = kappa_sup(&z1, &z2, q_max).unwrap();
            worst_monotone = worst_monotone.max(last - value).max(value - target);
            last = value;
        }
        worst_gap = worst_gap.max(target - last);
    }
    let mut worst_vertical: f64 = 0.0;
    for i in 0..20u64 {
        let mut rng = sample_rng(SEED, "acceptance_kappa_vertical", i);
        let z = sample_point(&mut rng);
        let below = HalfPlanePoint::new(z.re(), z.im() * rng.gen_range(0.05..0.95)).unwrap();
        for q_max in [1, 2, 7, 100] {
            let (value, _) = kappa_sup(&z, &below, q_max).unwrap();
            worst_vertical = worst_vertical.max(value.abs());
        }
    }
    report(9, "kappa converges to delta (q_max 1e4)", worst_gap, 1e-6);
    report(9, "kappa monotone and bounded by delta", worst_monotone, 1e-12);
    report(9, "kappa vertical-down exactly zero", worst_vertical, 0.0);
}

/// Criterion 10: Kerckhoff's extremal-length formula equals delta_1 to 1e-8
/// on 1e3 pairs.
#[test]
fn c10_kerckhoff_identity() {
    let cfg = OracleConfig::default();
    let mut worst: f64 = 0.0;
    for i in 0..1_000u64 {
        let mut rng = sample_rng(SEED, "acceptance_kerckhoff", i);
        let (z1, z2) = sample_pair(&mut rng);
        let lhs = kerckhoff_delta1(&z1, &z2, &cfg).unwrap();
        worst = worst.max((lhs - delta_p(p(1.0), &z1, &z2)).abs());
    }
    report(10, "Kerckhoff identity", worst, 1e-8);
}

/// Criterion 11: delta and delta_p are isometry invariant to 1e-12 relative
/// over 1e4 samples.
#[test]
fn c11_isometry_invariance() {
    use rand::Rng;
    let mut worst: f64 = 0.0;
    for i in 0..10_000u64 {
        let mut rng = sample_rng(SEED, "acceptance_isometry", i);
        let (z1, z2) = sample_pair(&mut rng);
        let lambda = rng.gen_range(0.05..20.0);
        let tau = rng.gen_range(-10.0..10.0);
        let pp = p(rng.gen_range(0.0..=1.0));
        let w1 = apply_similarity(lambda, tau, &z1).unwrap();
        let w2 = apply_similarity(lambda, tau, &z2).unwrap();
        let m1 = mirror(&z1);
        let m2 = mirror(&z2);
        let d = delta(&z1, &z2);
        let dp = delta_p(pp, &z1, &z2);
        worst = worst.max((delta(&w1, &w2) - d).abs() / (1.0 + d));
        worst = worst.max((delta(&m1, &m2) - d).abs() / (1.0 + d));
        worst = worst.max((delta_p(pp, &w1, &w2) - dp).abs() / (1.0 + dp.abs()));
        worst = worst.max((delta_p(pp, &m1, &m2) - dp).abs() / (1.0 + dp.abs()));
    }
    report(11, "isometry invariance", worst, 1e-12);
}

/// Criterion 12: every emitted forward/backward sphere sample sits at
/// delta-distance r from/to the center within 1e-9, for n = 256,
/// r in {0.1, log 2, 2}, 20 centers.
#[test]
fn c12_ball_boundaries() {
    let mut worst: f64 = 0.0;
    for i in 0..20u64 {
        let mut rng = sample_rng(SEED, "acceptance_balls", i);
        let z = sample_point(&mut rng);
        for r in [0.1, std::f64::consts::LN_2, 2.0] {
            for &(u, v) in &forward_ball_boundary(&z, r, 256).points {
                assert!(v > 0.0, "forward sample below the axis");
                let w = HalfPlanePoint::new(u, v).unwrap();
                worst = worst.max((delta(&z, &w) - r).abs());
            }
            for &(u, v) in &backward_ball_boundary(&z, r, 256).unwrap().points {
                let w = HalfPlanePoint::new(u, v).unwrap();
                worst = worst.max((delta(&w, &z) - r).abs());
            }
        }
    }
    report(12, "ball boundary membership", worst, 1e-9);
}
