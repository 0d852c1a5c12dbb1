//! Busemann–Hausdorff and Holmes–Thompson area of the slope metric.
//!
//! For `F = α²/(α - β)` both volume forms are pointwise multiples of the
//! Riemannian one, `dV_BH = f(b) dV_α` and `dV_HT = g(b) dV_α`, with
//!
//! ```text
//! f(b) = π / ∫_0^π (1 - b cos t)² dt            = 2/(2 + b²)
//! g(b) = (1/π) ∫_0^π T(b cos t) dt              = (2 - 3b²) / (2 (1 - b²)^{5/2})
//! T(s) = (1 - 3s + 2b²) / (1 - s)⁴
//! ```
//!
//! `g` exceeds one for every `b > 0`, so the Holmes–Thompson area of a
//! region is larger than its Riemannian area.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{convexity_check, ConvexityOptions, ADMISSIBLE_LIMIT};
use crate::quadrature::{integrate, integrate_unit_square, QuadOptions, QuadResult};
use crate::surfaces::{Region, Surface};

fn check_b(b: f64) -> Result<()> {
    if (0.0..ADMISSIBLE_LIMIT).contains(&b) {
        Ok(())
    } else {
        Err(Error::Range { s: b })
    }
}

/// `T(s) = φ[(φ - sφ') + (b² - s²)φ'']` for `n = 2`, in the closed
/// form `(1 - 3s + 2b²)/(1 - s)⁴`. Requires `|s| ≤ b < 1/2`.
pub fn t_function(s: f64, b: f64) -> Result<f64> {
    check_b(b)?;
    if !(s.abs() <= b * (1.0 + 1e-12)) {
        return Err(Error::Range { s });
    }
    Ok(t_unchecked(s, b))
}

fn t_unchecked(s: f64, b: f64) -> f64 {
    let w = 1.0 - s;
    (1.0 - 3.0 * s + 2.0 * b * b) / (w * w * w * w)
}

/// Busemann–Hausdorff coefficient `f(b) = 2/(2 + b²)`.
pub fn bh_coefficient(b: f64) -> f64 {
    2.0 / (2.0 + b * b)
}

/// Holmes–Thompson coefficient `g(b) = (2 - 3b²)/(2(1 - b²)^{5/2})`.
pub fn ht_coefficient(b: f64) -> f64 {
    let w2 = 1.0 - b * b;
    (2.0 - 3.0 * b * b) / (2.0 * w2 * w2 * w2.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeCoefficients {
    pub b: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub f_quad: Option<f64>,
    pub g_quad: Option<f64>,
}

/// Closed-form `f`, `g`, `h = g/f` at `b ∈ [0, 1/2)`.
pub fn volume_coefficients_closed(b: f64) -> Result<VolumeCoefficients> {
    check_b(b)?;
    let f = bh_coefficient(b);
    let g = ht_coefficient(b);
    Ok(VolumeCoefficients {
        b,
        f,
        g,
        h: g / f,
        f_quad: None,
        g_quad: None,
    })
}

/// `(f, g)` from their defining integrals, integrated in `t` where the
/// integrands are smooth (absolute tolerance `1e-11`).
pub fn volume_coefficients_quadrature(b: f64) -> Result<(f64, f64)> {
    check_b(b)?;
    let opts = QuadOptions::absolute(1e-11);
    let denom = integrate(
        |t| {
            let w = 1.0 - b * t.cos();
            w * w
        },
        0.0,
        PI,
        &opts,
    )?;
    let ht = integrate(|t| t_unchecked(b * t.cos(), b), 0.0, PI, &opts)?;
    Ok((PI / denom.value, ht.value / PI))
}

/// Closed forms together with their quadrature counterparts.
pub fn volume_coefficients(b: f64) -> Result<VolumeCoefficients> {
    let mut c = volume_coefficients_closed(b)?;
    let (fq, gq) = volume_coefficients_quadrature(b)?;
    c.f_quad = Some(fq);
    c.g_quad = Some(gq);
    Ok(c)
}

/// Whether `f` and `g` strictly decrease and `h` strictly increases along `rows`.
/// With the coefficients above this is false on any grid with two or more
/// points, since `g` and `h` both increase.
pub fn monotonicity_holds(rows: &[VolumeCoefficients]) -> bool {
    rows.windows(2)
        .all(|w| w[1].f < w[0].f && w[1].g < w[0].g && w[1].h > w[0].h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "BH")]
    BusemannHausdorff,
    #[serde(rename = "HT")]
    HolmesThompson,
}

impl Measure {
    fn density(self, b: f64) -> f64 {
        match self {
            Measure::Alpha => 1.0,
            Measure::BusemannHausdorff => bh_coefficient(b),
            Measure::HolmesThompson => ht_coefficient(b),
        }
    }
}

fn area_quad_options() -> QuadOptions {
    QuadOptions {
        abs_tol: 1e-13,
        rel_tol: 1e-10,
        max_intervals: 4000,
    }
}

fn check_region(surface: &Surface, region: &Region) -> Result<()> {
    if region.within(surface) {
        return Ok(());
    }
    let p = region.map(0.0, 0.0);
    Err(Error::Domain {
        surface: surface.name().to_string(),
        c1: p.c1,
        c2: p.c2,
    })
}

fn check_convex_region(surface: &Surface, region: &Region) -> Result<()> {
    let report = convexity_check(surface, region, &ConvexityOptions::default())?;
    if report.holds {
        Ok(())
    } else {
        Err(Error::ConvexityViolation { b: report.worst_b })
    }
}

/// Area with its quadrature error estimate.
pub fn area_estimate(surface: &Surface, region: &Region, measure: Measure) -> Result<QuadResult> {
    check_region(surface, region)?;
    if region.chart_measure() == 0.0 {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }
    if measure != Measure::Alpha {
        check_convex_region(surface, region)?;
    }
    let opts = area_quad_options();
    match (surface, region) {
        (Surface::Revolution(s), Region::Rect { c1, c2 }) => {
            // the integrand does not depend on v
            let dv = c2[1] - c2[0];
            let r = integrate(
                |u| {
                    let d1 = s.dm(u);
                    let w = (1.0 + d1 * d1).sqrt();
                    measure.density(1.0 / w) * w * s.m(u)
                },
                c1[0],
                c1[1],
                &opts,
            )?;
            Ok(QuadResult {
                value: r.value * dv,
                error: r.error * dv,
                intervals: r.intervals,
            })
        }
        _ => {
            let jac = |s: f64| match *region {
                Region::Rect { c1, c2 } => (c1[1] - c1[0]) * (c2[1] - c2[0]),
                Region::Disk { radius, .. } => 2.0 * PI * radius * radius * s,
            };
            integrate_unit_square(
                |s, t| {
                    let p = region.map(s, t);
                    let a = surface.metric_unchecked(p);
                    let b = crate::metric::b_norm(surface, p).unwrap_or(f64::NAN);
                    measure.density(b) * a.det().sqrt() * jac(s)
                },
                &opts,
            )
        }
    }
}

/// `∫_D σ √det(a) dc¹dc²` with `σ = 1, f(b), g(b)` for `α`, BH, HT.
pub fn area(surface: &Surface, region: &Region, measure: Measure) -> Result<f64> {
    area_estimate(surface, region, measure).map(|r| r.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaRatios {
    pub bh_alpha: Option<f64>,
    pub ht_alpha: Option<f64>,
    pub ht_bh: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaVerdicts {
    /// `BH < HT < α`.
    pub strict_chain: bool,
    /// `BH/α ∈ [8/9, 1]`.
    pub bh_alpha_bounds: bool,
    /// `HT/α ∈ [5√3/9, 1]`.
    pub ht_alpha_bounds: bool,
    /// `HT/BH ∈ [1, 5√3/8]`.
    pub ht_bh_bounds: bool,
}

impl AreaVerdicts {
    pub fn all(&self) -> bool {
        self.strict_chain && self.bh_alpha_bounds && self.ht_alpha_bounds && self.ht_bh_bounds
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaReport {
    pub region: Region,
    pub area_alpha: f64,
    #[serde(rename = "area_BH")]
    pub area_bh: f64,
    #[serde(rename = "area_HT")]
    pub area_ht: f64,
    pub ratios: AreaRatios,
    pub verdicts: AreaVerdicts,
    /// Sum of the three quadrature error estimates.
    pub quad_error: f64,
}

/// Default slack on the ratio bounds.
pub const RATIO_SLACK: f64 = 1e-6;

/// All three areas of `region`, their ratios, and the comparison verdicts.
pub fn area_compare(surface: &Surface, region: &Region) -> Result<AreaReport> {
    area_compare_with_slack(surface, region, RATIO_SLACK)
}

pub fn area_compare_with_slack(
    surface: &Surface,
    region: &Region,
    slack: f64,
) -> Result<AreaReport> {
    let alpha = area_estimate(surface, region, Measure::Alpha)?;
    let bh = area_estimate(surface, region, Measure::BusemannHausdorff)?;
    let ht = area_estimate(surface, region, Measure::HolmesThompson)?;
    let quad_error = alpha.error + bh.error + ht.error;

    if alpha.value == 0.0 {
        return Ok(AreaReport {
            region: *region,
            area_alpha: 0.0,
            area_bh: bh.value,
            area_ht: ht.value,
            ratios: AreaRatios {
                bh_alpha: None,
                ht_alpha: None,
                ht_bh: None,
            },
            verdicts: AreaVerdicts {
                strict_chain: true,
                bh_alpha_bounds: true,
                ht_alpha_bounds: true,
                ht_bh_bounds: true,
            },
            quad_error,
        });
    }

    let (r_ba, r_ha, r_hb) = (
        bh.value / alpha.value,
        ht.value / alpha.value,
        ht.value / bh.value,
    );
    let sqrt3 = 3f64.sqrt();
    let within = |r: f64, lo: f64, hi: f64| r >= lo - slack && r <= hi + slack;
    Ok(AreaReport {
        region: *region,
        area_alpha: alpha.value,
        area_bh: bh.value,
        area_ht: ht.value,
        ratios: AreaRatios {
            bh_alpha: Some(r_ba),
            ht_alpha: Some(r_ha),
            ht_bh: Some(r_hb),
        },
        verdicts: AreaVerdicts {
            strict_chain: bh.value < ht.value && ht.value < alpha.value,
            bh_alpha_bounds: within(r_ba, 8.0 / 9.0, 1.0),
            ht_alpha_bounds: within(r_ha, 5.0 * sqrt3 / 9.0, 1.0),
            ht_bh_bounds: within(r_hb, 1.0, 5.0 * sqrt3 / 8.0),
        },
        quad_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::{lookup, GraphSurface};
    use approx::assert_relative_eq;

    #[test]
    fn t_function_values() {
        assert_relative_eq!(t_function(0.0, 0.3).unwrap(), 1.18, max_relative = 1e-15);
        assert_eq!(t_function(0.0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(
            t_function(0.3, 0.3).unwrap(),
            0.28 / 0.2401,
            max_relative = 1e-14
        );
        assert!(t_function(0.31, 0.3).is_err());
        assert!(t_function(0.0, 0.5).is_err());
    }

    #[test]
    fn t_function_matches_phi_chain_product() {
        for &(s, b) in &[(0.1, 0.2), (-0.4, 0.45), (0.49, 0.49)] {
            let (phi, phi1, phi2) = crate::metric::phi_chain(s);
            let e = phi - s * phi1;
            let product = phi * (e + (b * b - s * s) * phi2);
            assert_relative_eq!(t_function(s, b).unwrap(), product, max_relative = 1e-13);
        }
    }

    #[test]
    fn closed_forms_agree_with_quadrature() {
        for k in 0..50 {
            let b = k as f64 * 0.01;
            let c = volume_coefficients(b).unwrap();
            assert!((c.f - c.f_quad.unwrap()).abs() <= 1e-8, "f at b={b}");
            assert!((c.g - c.g_quad.unwrap()).abs() <= 1e-8, "g at b={b}");
        }
        let c = volume_coefficients_closed(0.3).unwrap();
        assert_relative_eq!(c.f, 2.0 / 2.09, max_relative = 1e-15);
        assert_relative_eq!(c.g, 1.73 / (2.0 * 0.91f64.powf(2.5)), max_relative = 1e-14);
        let zero = volume_coefficients(0.0).unwrap();
        assert_eq!((zero.f, zero.g, zero.h), (1.0, 1.0, 1.0));
        assert!(volume_coefficients_closed(0.5).is_err());
    }

    /// Holmes–Thompson density as the Euclidean area of the dual unit ball
    /// divided by π, with the dual norm computed by brute-force maximisation
    /// over the limaçon `r = 1 + b cos θ`.
    fn ht_from_dual_ball(b: f64) -> f64 {
        let limacon = |th: f64| {
            let r = 1.0 + b * th.cos();
            (r * th.cos(), r * th.sin())
        };
        let dual_norm = |psi: f64| {
            let (c, s) = (psi.cos(), psi.sin());
            let support = |th: f64| {
                let (x, y) = limacon(th);
                x * c + y * s
            };
            let n = 720;
            let mut best = (f64::NEG_INFINITY, 0.0);
            for k in 0..n {
                let th = 2.0 * PI * k as f64 / n as f64;
                let v = support(th);
                if v > best.0 {
                    best = (v, th);
                }
            }
            let step = 2.0 * PI / n as f64;
            let (mut lo, mut hi) = (best.1 - step, best.1 + step);
            for _ in 0..100 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if support(m1) < support(m2) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            support(0.5 * (lo + hi))
        };
        let area = integrate(
            |psi| 0.5 / dual_norm(psi).powi(2),
            0.0,
            2.0 * PI,
            &QuadOptions::absolute(1e-12),
        )
        .unwrap()
        .value;
        area / PI
    }

    #[test]
    fn ht_coefficient_matches_dual_ball_area() {
        for &b in &[0.1, 0.3, 0.45] {
            assert_relative_eq!(ht_coefficient(b), ht_from_dual_ball(b), max_relative = 1e-9);
        }
    }

    #[test]
    fn proof_split_sub_integrals() {
        // with τ = b cos t the two pieces of T(τ)/√(b²-τ²) become smooth in t
        for &b in &[0.1, 0.25, 0.4, 0.49] {
            let opts = QuadOptions::absolute(1e-12);
            let first = integrate(
                |t| {
                    let tau = b * t.cos();
                    (2.0 * tau - 1.0) / (tau - 1.0).powi(3)
                },
                0.0,
                PI,
                &opts,
            )
            .unwrap()
            .value;
            let second = integrate(
                |t| {
                    let tau = b * t.cos();
                    2.0 * (b * t.sin()).powi(2) / (tau - 1.0).powi(4)
                },
                0.0,
                PI,
                &opts,
            )
            .unwrap()
            .value;
            let w5 = (1.0 - b * b).powf(2.5);
            assert!((first - PI * (2.0 - 5.0 * b * b) / (2.0 * w5)).abs() <= 1e-8);
            assert!((second - PI * b * b / w5).abs() <= 1e-8);
            assert_relative_eq!(
                (first + second) / PI,
                ht_coefficient(b),
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn alpha_area_on_revolution_is_separable() {
        let s = lookup("revolution-sqrt").unwrap();
        let rev = s.as_revolution().unwrap();
        let region = Region::rect((1.0, 2.0), (0.0, 2.0 * PI));
        // √(1+m'²) m = √(m² + (mm')²) = √(42u² - 1)
        let exact_inner = |u: f64| {
            let k = 42f64.sqrt();
            let w = (42.0 * u * u - 1.0).sqrt();
            0.5 * u * w - (k * u + w).ln() / (2.0 * k)
        };
        let exact = 2.0 * PI * (exact_inner(2.0) - exact_inner(1.0));
        assert_relative_eq!(
            area(&s, &region, Measure::Alpha).unwrap(),
            exact,
            max_relative = 1e-12
        );
        // the 2-D path agrees with the 1-D reduction
        let generic = integrate_unit_square(
            |a, t| {
                let p = region.map(a, t);
                s.metric_unchecked(p).det().sqrt() * 2.0 * PI
            },
            &area_quad_options(),
        )
        .unwrap();
        assert_relative_eq!(generic.value, exact, max_relative = 1e-10);
        assert!(rev.m(1.0) > 0.0);
    }

    #[test]
    fn degenerate_region_has_zero_area() {
        let s = lookup("revolution-sqrt").unwrap();
        let region = Region::rect((1.5, 1.5), (0.0, 2.0 * PI));
        let report = area_compare(&s, &region).unwrap();
        assert_eq!(
            (report.area_alpha, report.area_bh, report.area_ht),
            (0.0, 0.0, 0.0)
        );
        assert!(report.verdicts.all());
    }

    #[test]
    fn small_region_ratios_approach_pointwise_coefficients() {
        let s = lookup("revolution-sqrt").unwrap();
        let u0 = 1.3;
        let region = Region::rect((u0, u0 + 1e-4), (0.0, 0.01));
        let r = area_compare(&s, &region).unwrap();
        let b = s.as_revolution().unwrap().b_at(u0 + 5e-5);
        let c = volume_coefficients_closed(b).unwrap();
        assert_relative_eq!(r.ratios.bh_alpha.unwrap(), c.f, max_relative = 1e-6);
        assert_relative_eq!(r.ratios.ht_alpha.unwrap(), c.g, max_relative = 1e-6);
        assert_relative_eq!(r.ratios.ht_bh.unwrap(), c.h, max_relative = 1e-6);
    }

    #[test]
    fn graph_areas_and_convexity_guard() {
        let bump = Surface::from(
            GraphSurface::gaussian_bump(crate::surfaces::gallery_amplitude(), 3.0).unwrap(),
        );
        let region = Region::disk((0.0, 0.0), 2.0);
        let r = area_compare(&bump, &region).unwrap();
        assert!(r.area_bh < r.area_alpha);
        assert!(r.area_ht > r.area_alpha);
        assert!(r.area_alpha > 4.0 * PI);

        let steep = Surface::from(GraphSurface::plane(1.0, 0.0, 0.0, 5.0).unwrap());
        let sq = Region::rect((-1.0, 1.0), (-1.0, 1.0));
        assert!(area(&steep, &sq, Measure::Alpha).is_ok());
        assert!(matches!(
            area(&steep, &sq, Measure::BusemannHausdorff),
            Err(Error::ConvexityViolation { .. })
        ));
    }

    #[test]
    fn plane_area_is_exact() {
        let plane = Surface::from(GraphSurface::plane(0.3, 0.2, 0.0, 5.0).unwrap());
        let sq = Region::rect((-1.0, 2.0), (0.0, 1.0));
        let alpha = area(&plane, &sq, Measure::Alpha).unwrap();
        assert_relative_eq!(
            alpha,
            3.0 * (1.0f64 + 0.09 + 0.04).sqrt(),
            max_relative = 1e-13
        );
        let b = (0.13f64 / 1.13).sqrt();
        let bh = area(&plane, &sq, Measure::BusemannHausdorff).unwrap();
        assert_relative_eq!(bh, alpha * bh_coefficient(b), max_relative = 1e-13);
    }
}
