use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slopegeo::geodesics::{
    clairaut_value, direction_from_angle, integrate_geodesic, speed, unit_normalize,
    velocity_from_clairaut, Branch, GeodesicState, IntegratorOptions, SprayModel,
};
use slopegeo::measures::{
    bh_coefficient, ht_coefficient, t_function, volume_coefficients, volume_coefficients_quadrature,
};
use slopegeo::metric::{alpha_beta, b_norm, hessian, slope_norm};
use slopegeo::spray::slope_spray_closed;
use slopegeo::surfaces::{gallery, lookup, Surface, SurfaceOfRevolution, GALLERY_NAMES};
use slopegeo::{Point2, Vec2};

const FD_STEP: f64 = 1e-5;

fn close(x: f64, y: f64, rel: f64, floor: f64) -> bool {
    (x - y).abs() <= rel * y.abs().max(floor / rel)
}

fn surface(idx: usize) -> Surface {
    lookup(GALLERY_NAMES[idx % GALLERY_NAMES.len()]).unwrap()
}

fn revolution(idx: usize) -> SurfaceOfRevolution {
    let revs: Vec<_> = gallery()
        .into_iter()
        .filter_map(|s| s.as_revolution().cloned())
        .collect();
    revs[idx % revs.len()].clone()
}

/// Point in the interior of the default region, `(s, t)` from the unit square.
fn interior_point(surface: &Surface, s: f64, t: f64) -> Point2 {
    surface
        .default_region()
        .map(0.01 + 0.98 * s, 0.01 + 0.98 * t)
}

/// `u` in the first stretch of the chart, where the profile stays moderate.
fn revolution_u(rev: &SurfaceOfRevolution, s: f64) -> f64 {
    let (lo, hi) = rev.domain();
    let top = hi.min(lo + 6.0);
    lo + 0.02 * (top - lo) + 0.96 * (top - lo) * s
}

fn direction(angle: f64, radius: f64) -> Vec2 {
    Vec2::new(radius * angle.cos(), radius * angle.sin())
}

/// Centered difference at base step `h`, Richardson-extrapolated with `h/2`
/// so the oracle stays accurate near chart edges where the profile bends fast.
fn centered(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

#[test]
fn supplied_derivatives_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let h = FD_STEP;
    for surf in gallery() {
        for _ in 0..100 {
            let p = interior_point(&surf, rng.gen(), rng.gen());
            match &surf {
                Surface::Revolution(rev) => {
                    let u = p.c1;
                    let d1 = centered(|x| rev.m(x), u, h);
                    let d2 = centered(|x| rev.dm(x), u, h);
                    assert!(
                        close(rev.dm(u), d1, 1e-6, 1e-9),
                        "{} m' at {u}: {} vs {d1}",
                        rev.name(),
                        rev.dm(u)
                    );
                    assert!(
                        close(rev.ddm(u), d2, 1e-6, 1e-9),
                        "{} m'' at {u}: {} vs {d2}",
                        rev.name(),
                        rev.ddm(u)
                    );
                }
                Surface::Graph(g) => {
                    let (x, y) = (p.c1, p.c2);
                    let fx = centered(|t| g.height(t, y), x, h);
                    let fy = centered(|t| g.height(x, t), y, h);
                    let (gx, gy) = g.grad(x, y);
                    assert!(
                        close(gx, fx, 1e-6, 1e-9),
                        "{} f_x at {p:?}: {gx} vs {fx}",
                        g.name()
                    );
                    assert!(
                        close(gy, fy, 1e-6, 1e-9),
                        "{} f_y at {p:?}: {gy} vs {fy}",
                        g.name()
                    );
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn riemannian_metric_is_positive_definite(idx in 0usize..9, s in 0.0..1.0f64, t in 0.0..1.0f64) {
        let surf = surface(idx);
        let p = interior_point(&surf, s, t);
        let a = surf.riemannian_metric_at(p).unwrap();
        prop_assert!(a.is_positive_definite(), "{} at {:?}: {:?}", surf.name(), p, a);
        prop_assert!(b_norm(&surf, p).unwrap() < 1.0);
    }

    #[test]
    fn revolution_metric_is_independent_of_v(idx in 0usize..2, s in 0.0..1.0f64, v1 in -10.0..10.0f64, v2 in -10.0..10.0f64) {
        let rev = revolution(idx);
        let u = revolution_u(&rev, s);
        let surf = Surface::Revolution(rev);
        let (a1, a2) = (
            surf.riemannian_metric_at(Point2::new(u, v1)).unwrap(),
            surf.riemannian_metric_at(Point2::new(u, v2)).unwrap(),
        );
        prop_assert_eq!(a1, a2);
        prop_assert_eq!(surf.one_form_at(Point2::new(u, v1)).unwrap(), surf.one_form_at(Point2::new(u, v2)).unwrap());
    }

    #[test]
    fn slope_norm_is_positively_homogeneous(
        idx in 0usize..9, s in 0.0..1.0f64, t in 0.0..1.0f64,
        angle in 0.0..std::f64::consts::TAU, lambda in 1e-3..1e3f64,
    ) {
        let surf = surface(idx);
        let p = interior_point(&surf, s, t);
        prop_assume!(b_norm(&surf, p).unwrap() < 0.5);
        let y = direction(angle, 1.0);
        let f = slope_norm(&surf, p, y).unwrap();
        let fl = slope_norm(&surf, p, lambda * y).unwrap();
        prop_assert!(f > 0.0);
        prop_assert!(close(fl, lambda * f, 1e-13, 1e-300));
        let (alpha, beta) = alpha_beta(&surf, p, y).unwrap();
        prop_assert!(close(f, alpha * alpha / (alpha - beta), 1e-14, 1e-300));
    }

    #[test]
    fn unit_normalize_gives_unit_speed(idx in 0usize..2, s in 0.0..1.0f64, angle in 0.0..std::f64::consts::TAU, r in 1e-3..1e3f64) {
        let rev = revolution(idx);
        let u = revolution_u(&rev, s);
        let y = unit_normalize(&rev, Point2::new(u, 0.0), direction(angle, r)).unwrap();
        prop_assert!((speed(&rev, u, y.d1, y.d2, SprayModel::Slope) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn spray_is_two_homogeneous(idx in 0usize..2, s in 0.0..1.0f64, angle in 0.0..std::f64::consts::TAU, lambda in 1e-2..1e2f64) {
        let rev = revolution(idx);
        let p = Point2::new(revolution_u(&rev, s), 0.3);
        let y = direction(angle, 1.0);
        let (g1, g2) = slope_spray_closed(&rev, p, y).unwrap();
        let (h1, h2) = slope_spray_closed(&rev, p, lambda * y).unwrap();
        let scale = g1.hypot(g2) * lambda * lambda;
        prop_assert!((h1 - lambda * lambda * g1).hypot(h2 - lambda * lambda * g2) <= 1e-13 * scale);
    }

    #[test]
    fn fundamental_tensor_is_positive_definite_below_half(
        idx in 0usize..9, s in 0.0..1.0f64, t in 0.0..1.0f64, angle in 0.0..std::f64::consts::TAU,
    ) {
        let surf = surface(idx);
        let p = interior_point(&surf, s, t);
        let b = b_norm(&surf, p).unwrap();
        prop_assume!(b < 0.5);
        let y = direction(angle, 1.0);
        let g = hessian(&surf, p, y).unwrap();
        prop_assert!(g.is_positive_definite());

        let (alpha, beta) = alpha_beta(&surf, p, y).unwrap();
        let ratio = beta / alpha;
        let det_a = surf.riemannian_metric_at(p).unwrap().det();
        let expected = (1.0 - 3.0 * ratio + 2.0 * b * b) / (1.0 - ratio).powi(6) * det_a;
        prop_assert!(close(g.det(), expected, 1e-10, 1e-300), "det g {} vs {}", g.det(), expected);
    }

    #[test]
    fn t_closed_form_matches_phi_product(b in 0.0..0.4999f64, frac in -1.0..1.0f64) {
        let s = frac * b;
        let phi = 1.0 / (1.0 - s);
        let phi1 = phi * phi;
        let phi2 = 2.0 * phi * phi * phi;
        let product = phi * ((phi - s * phi1) + (b * b - s * s) * phi2);
        prop_assert!(close(t_function(s, b).unwrap(), product, 1e-13, 1e-300));
    }

    #[test]
    fn volume_coefficient_bounds(b in 0.0..0.4999f64) {
        let c = volume_coefficients(b).unwrap();
        prop_assert!(c.f > 8.0 / 9.0 && c.f <= 1.0);
        prop_assert!(c.g >= 1.0 && c.g < ht_coefficient(0.5));
        prop_assert!(c.h >= c.g && close(c.h, c.g / c.f, 1e-15, 1e-300));
        prop_assert_eq!(c.f, bh_coefficient(b));
        prop_assert_eq!(c.g, ht_coefficient(b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coefficients_agree_with_quadrature(b in 0.0..0.4999f64) {
        let (fq, gq) = volume_coefficients_quadrature(b).unwrap();
        prop_assert!((fq - bh_coefficient(b)).abs() <= 1e-10);
        prop_assert!((gq - ht_coefficient(b)).abs() <= 1e-10);
    }

    #[test]
    fn geodesics_commute_with_rotations(
        idx in 0usize..2, s in 0.0..1.0f64, theta in 0.0..std::f64::consts::TAU, shift in -5.0..5.0f64,
    ) {
        let rev = revolution(idx);
        let u0 = revolution_u(&rev, s);
        let y = direction_from_angle(&rev, u0, theta, SprayModel::Slope).unwrap();
        let opts = IntegratorOptions::default();
        let a = integrate_geodesic(&rev, GeodesicState::new(u0, 0.0, y.d1, y.d2), 2.0, &opts).unwrap();
        let b = integrate_geodesic(&rev, GeodesicState::new(u0, shift, y.d1, y.d2), 2.0, &opts).unwrap();
        prop_assert_eq!(a.states.len(), b.states.len());
        for (x, z) in a.states.iter().zip(&b.states) {
            prop_assert_eq!(x.u.to_bits(), z.u.to_bits());
            prop_assert_eq!(x.du.to_bits(), z.du.to_bits());
            prop_assert_eq!(x.dv.to_bits(), z.dv.to_bits());
            prop_assert!((z.v - x.v - shift).abs() <= 1e-12 * (1.0 + x.v.abs() + shift.abs()));
        }
    }

    #[test]
    fn velocity_round_trips_through_clairaut(idx in 0usize..2, s in 0.0..1.0f64, theta in 0.0..std::f64::consts::TAU) {
        let rev = revolution(idx);
        let u = revolution_u(&rev, s);
        let y = direction_from_angle(&rev, u, theta, SprayModel::Slope).unwrap();
        prop_assume!(y.d1.abs() > 1e-6);
        let nu = clairaut_value(&rev, &GeodesicState::new(u, 0.0, y.d1, y.d2)).unwrap();
        let branch = if y.d1 > 0.0 { Branch::DuPositive } else { Branch::DuNegative };
        let back = velocity_from_clairaut(&rev, u, nu, branch).unwrap();
        prop_assert!((back.d1 - y.d1).abs() <= 1e-8 && (back.d2 - y.d2).abs() <= 1e-8, "{:?} vs {:?}", back, y);
    }
}
