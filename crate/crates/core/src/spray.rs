//! Geodesic spray of the slope metric on a surface of revolution.
//!
//! Spray coefficients follow the convention `ẍⁱ + 2Gⁱ = 0`. Two routes are
//! provided for `Gⁱ`: the specialised closed form [`slope_spray_closed`] and
//! the general `(α, β)` formula [`slope_spray_generic`], fed by the covariant
//! derivative of `β` and the `φ`-chain. They must agree to round-off.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Sym2, Vec2};
use crate::metric::{self, ADMISSIBLE_LIMIT};
use crate::surfaces::SurfaceOfRevolution;

/// Covariant derivative `b_{i|j}` of `β = du` with respect to `α`, plus its
/// symmetric part `r_ij` and skew part `s_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovariantData {
    pub b11: f64,
    pub b22: f64,
    pub b12: f64,
    pub b21: f64,
    /// `r_ij` as a quadratic form, so that `r₀₀ = r_ij yⁱ yʲ`.
    pub r00_coeffs: Sym2,
    /// `s_12 = ½ (b_{1|2} - b_{2|1})`.
    pub s12: f64,
    pub s_vanishes: bool,
}

impl CovariantData {
    pub fn r00(&self, y: Vec2) -> f64 {
        self.r00_coeffs.quad(y)
    }

    /// Whether `β` is parallel, i.e. every `b_{i|j}` vanishes.
    pub fn is_parallel(&self) -> bool {
        self.b11 == 0.0 && self.b22 == 0.0 && self.b12 == 0.0 && self.b21 == 0.0
    }
}

/// `Q`, `Θ`, `Ψ` of the `(α, β)` spray formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SprayTerms {
    pub q: f64,
    pub theta: f64,
    pub psi: f64,
}

/// Nonzero Christoffel symbols of `a = diag(1 + m'², m²)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Christoffel {
    pub g1_11: f64,
    pub g1_22: f64,
    #[cfg_attr(not(test), allow(dead_code))]
    pub g2_12: f64,
}

impl Christoffel {
    /// From the metric components and their `u`-derivatives.
    pub(crate) fn at(surface: &SurfaceOfRevolution, u: f64) -> Self {
        let m = surface.m(u);
        let d1 = surface.dm(u);
        let d2 = surface.ddm(u);
        let a11 = 1.0 + d1 * d1;
        let a22 = m * m;
        let da11 = 2.0 * d1 * d2;
        let da22 = 2.0 * m * d1;
        Self {
            g1_11: 0.5 * da11 / a11,
            g1_22: -0.5 * da22 / a11,
            g2_12: 0.5 * da22 / a22,
        }
    }
}

fn check_point(surface: &SurfaceOfRevolution, p: Point2) -> Result<()> {
    surface.check_u(p.c1, p.c2)?;
    if surface.m(p.c1) == 0.0 || !surface.m(p.c1).is_finite() {
        return Err(Error::Domain {
            surface: surface.name().to_string(),
            c1: p.c1,
            c2: p.c2,
        });
    }
    Ok(())
}

/// Spray `(𝒢¹_α, 𝒢²_α)` of the induced Riemannian metric:
/// `2𝒢¹ = m'm''/(1+m'²) (y¹)² - mm'/(1+m'²) (y²)²`, `2𝒢² = 2 (m'/m) y¹y²`.
pub fn riemannian_spray(surface: &SurfaceOfRevolution, p: Point2, y: Vec2) -> Result<(f64, f64)> {
    check_point(surface, p)?;
    Ok(riemannian_spray_unchecked(surface, p.c1, y))
}

pub(crate) fn riemannian_spray_unchecked(
    surface: &SurfaceOfRevolution,
    u: f64,
    y: Vec2,
) -> (f64, f64) {
    let m = surface.m(u);
    let d1 = surface.dm(u);
    let d2 = surface.ddm(u);
    let a11 = 1.0 + d1 * d1;
    let g1 = 0.5 * (d1 * d2 / a11 * y.d1 * y.d1 - m * d1 / a11 * y.d2 * y.d2);
    let g2 = d1 / m * y.d1 * y.d2;
    (g1, g2)
}

/// `b_{i|j} = ∂_j b_i - Γᵏ_ij b_k` for `b = (1, 0)`.
pub fn covariant_data(surface: &SurfaceOfRevolution, p: Point2) -> Result<CovariantData> {
    check_point(surface, p)?;
    let gamma = Christoffel::at(surface, p.c1);
    let (b11, b22, b12, b21) = (-gamma.g1_11, -gamma.g1_22, 0.0, 0.0);
    let s12 = 0.5 * (b12 - b21);
    Ok(CovariantData {
        b11,
        b22,
        b12,
        b21,
        r00_coeffs: Sym2::new(b11, 0.5 * (b12 + b21), b22),
        s12,
        s_vanishes: s12 == 0.0,
    })
}

struct Local {
    alpha: f64,
    beta: f64,
    b2: f64,
}

fn local(surface: &SurfaceOfRevolution, p: Point2, y: Vec2) -> Result<Local> {
    check_point(surface, p)?;
    if y.is_zero() {
        return Err(Error::ZeroVector);
    }
    let m = surface.m(p.c1);
    let d1 = surface.dm(p.c1);
    let a11 = 1.0 + d1 * d1;
    let b2 = 1.0 / a11;
    if !(b2.sqrt() < ADMISSIBLE_LIMIT) {
        return Err(Error::ConvexityViolation { b: b2.sqrt() });
    }
    let alpha = (a11 * y.d1 * y.d1 + m * m * y.d2 * y.d2).sqrt();
    Ok(Local {
        alpha,
        beta: y.d1,
        b2,
    })
}

fn denominator(l: &Local) -> Result<f64> {
    let d = (2.0 * l.b2 + 1.0) * l.alpha - 3.0 * l.beta;
    if d <= 1e-12 * l.alpha {
        Err(Error::DegenerateDenominator { value: d })
    } else {
        Ok(d)
    }
}

/// Slope-specialised `Q = 1/(1-2s)`, `Ψ = α/((2b²+1)α - 3β)`,
/// `Θ = (α - 4β)/(2[(2b²+1)α - 3β])`.
pub fn ab_correction_terms(
    surface: &SurfaceOfRevolution,
    p: Point2,
    y: Vec2,
) -> Result<SprayTerms> {
    let l = local(surface, p, y)?;
    let d = denominator(&l)?;
    Ok(SprayTerms {
        q: l.alpha / (l.alpha - 2.0 * l.beta),
        theta: (l.alpha - 4.0 * l.beta) / (2.0 * d),
        psi: l.alpha / d,
    })
}

/// Closed-form spray of the slope metric:
/// `G¹ = 𝒢¹_α (α-2β)² / (α[(2b²+1)α - 3β])`,
/// `G² = 𝒢²_α - 𝒢¹_α (α-4β) y² / (α[(2b²+1)α - 3β])`.
pub fn slope_spray_closed(surface: &SurfaceOfRevolution, p: Point2, y: Vec2) -> Result<(f64, f64)> {
    let l = local(surface, p, y)?;
    let d = denominator(&l)?;
    let (g1a, g2a) = riemannian_spray_unchecked(surface, p.c1, y);
    let ad = l.alpha * d;
    let w = l.alpha - 2.0 * l.beta;
    let g1 = g1a * w * w / ad;
    // both terms of G² carry a factor y², so meridians stay exact
    let g2 = if y.d2 == 0.0 {
        0.0
    } else {
        g2a - g1a * (l.alpha - 4.0 * l.beta) * y.d2 / ad
    };
    Ok((g1, g2))
}

/// `Q, Θ, Ψ` from their general definitions in terms of `φ, φ', φ''`.
fn generic_terms(s: f64, b2: f64) -> SprayTerms {
    let (phi, phi1, phi2) = metric::phi_chain(s);
    let e = phi - s * phi1;
    let denom = e + (b2 - s * s) * phi2;
    SprayTerms {
        q: phi1 / e,
        theta: (phi * phi1 - s * (phi * phi2 + phi1 * phi1)) / (2.0 * phi * denom),
        psi: phi2 / (2.0 * denom),
    }
}

/// Spray from the general `(α, β)` formula
/// `Gⁱ = 𝒢ⁱ_α + αQ sⁱ₀ + (-2Qα s₀ + r₀₀)(Θ yⁱ/α + Ψ bⁱ)`.
pub fn slope_spray_generic(
    surface: &SurfaceOfRevolution,
    p: Point2,
    y: Vec2,
) -> Result<(f64, f64)> {
    let l = local(surface, p, y)?;
    denominator(&l)?;
    let terms = generic_terms(l.beta / l.alpha, l.b2);
    spray_from_terms(surface, p, y, &terms)
}

/// The general formula evaluated with caller-supplied `Q, Θ, Ψ`.
pub(crate) fn spray_from_terms(
    surface: &SurfaceOfRevolution,
    p: Point2,
    y: Vec2,
    terms: &SprayTerms,
) -> Result<(f64, f64)> {
    let cov = covariant_data(surface, p)?;
    let a = Sym2::diag(1.0 + surface.dm(p.c1).powi(2), surface.m(p.c1).powi(2));
    let a_inv = a
        .inverse()
        .ok_or(Error::DegenerateDenominator { value: a.det() })?;
    let b = Vec2::new(1.0, 0.0);
    let b_up = a_inv.apply(b);
    let alpha = a.quad(y).sqrt();

    // s_ij is skew: s_12 = -s_21
    let s_lower = [[0.0, cov.s12], [-cov.s12, 0.0]];
    let ai = a_inv.as_rows();
    let mut s_up = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            s_up[i][j] = ai[i][0] * s_lower[0][j] + ai[i][1] * s_lower[1][j];
        }
    }
    let yv = y.as_array();
    let s_up0 = [
        s_up[0][0] * yv[0] + s_up[0][1] * yv[1],
        s_up[1][0] * yv[0] + s_up[1][1] * yv[1],
    ];
    let s_j = [
        b.d1 * s_up[0][0] + b.d2 * s_up[1][0],
        b.d1 * s_up[0][1] + b.d2 * s_up[1][1],
    ];
    let s0 = s_j[0] * yv[0] + s_j[1] * yv[1];
    let r00 = cov.r00(y);

    let (g1a, g2a) = riemannian_spray_unchecked(surface, p.c1, y);
    let bracket = -2.0 * terms.q * alpha * s0 + r00;
    let bu = b_up.as_array();
    let g = |i: usize, ga: f64| {
        ga + alpha * terms.q * s_up0[i]
            + bracket * (terms.theta * yv[i] / alpha + terms.psi * bu[i])
    };
    Ok((g(0, g1a), g(1, g2a)))
}

/// Right-hand side of the unit-speed geodesic system, `(ü, v̈) = -2(G¹, G²)`.
/// Returns `None` where the spray is undefined (outside the chart or at a
/// degenerate denominator).
pub(crate) fn slope_acceleration(
    surface: &SurfaceOfRevolution,
    u: f64,
    du: f64,
    dv: f64,
) -> Option<(f64, f64)> {
    if !surface.contains_u(u) {
        return None;
    }
    let (g1, g2) = slope_spray_closed(surface, Point2::new(u, 0.0), Vec2::new(du, dv)).ok()?;
    let out = (-2.0 * g1, -2.0 * g2);
    (out.0.is_finite() && out.1.is_finite()).then_some(out)
}

pub(crate) fn riemannian_acceleration(
    surface: &SurfaceOfRevolution,
    u: f64,
    du: f64,
    dv: f64,
) -> Option<(f64, f64)> {
    if !surface.contains_u(u) || surface.m(u) <= 0.0 {
        return None;
    }
    let (g1, g2) = riemannian_spray_unchecked(surface, u, Vec2::new(du, dv));
    let out = (-2.0 * g1, -2.0 * g2);
    (out.0.is_finite() && out.1.is_finite()).then_some(out)
}
