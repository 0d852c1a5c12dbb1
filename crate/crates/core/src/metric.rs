//! The slope metric `F = α²/(α - β)` and everything evaluated pointwise from it:
//! the `φ`-chain of `φ(s) = 1/(1 - s)`, the fundamental tensor `g_ij`, the
//! limaçon indicatrix and strong-convexity scans.
//!
//! Strong convexity of the slope metric at a point is equivalent to `b < 1/2`
//! where `b` is the `α`-norm of `β`. All evaluators reject `b ≥ 1/2 - 1e-12`
//! (and `s ≥ 1/2 - 1e-12`), where `ρ → 0` and `g_ij` degenerates.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Sym2, Vec2};
use crate::surfaces::{Region, Surface};

/// Upper bound (exclusive) for admissible `s = β/α` and `b`.
pub const ADMISSIBLE_LIMIT: f64 = 0.5 - 1e-12;

/// `φ(s)`, `φ'(s)`, `φ''(s)` and the tensor coefficients `ρ, ρ₀, ρ₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiQuantities {
    pub phi: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub rho: f64,
    pub rho0: f64,
    pub rho1: f64,
}

/// Every pointwise metric quantity at `(p, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSample {
    pub alpha: f64,
    pub beta: f64,
    pub s: f64,
    pub b2: f64,
    pub phi: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub rho: f64,
    pub rho0: f64,
    pub rho1: f64,
    pub g: Sym2,
    #[serde(rename = "F")]
    pub f: f64,
}

/// `φ`, `φ'`, `φ''` for `φ(s) = 1/(1 - s)`.
pub(crate) fn phi_chain(s: f64) -> (f64, f64, f64) {
    let w = 1.0 / (1.0 - s);
    (w, w * w, 2.0 * w * w * w)
}

/// `ρ, ρ₀, ρ₁` from an arbitrary `φ`-chain:
/// `ρ = φ² - sφφ'`, `ρ₀ = φφ'' + φ'²`, `ρ₁ = φφ' - sρ₀`.
#[cfg(test)]
pub(crate) fn rho_from_chain(s: f64, phi: f64, phi1: f64, phi2: f64) -> (f64, f64, f64) {
    let rho = phi * phi - s * phi * phi1;
    let rho0 = phi * phi2 + phi1 * phi1;
    let rho1 = phi * phi1 - s * rho0;
    (rho, rho0, rho1)
}

/// Closed forms of `ρ, ρ₀, ρ₁` for the slope metric.
fn rho_closed(s: f64) -> (f64, f64, f64) {
    let w = 1.0 / (1.0 - s);
    let w3 = w * w * w;
    let w4 = w3 * w;
    ((1.0 - 2.0 * s) * w3, 3.0 * w4, (1.0 - 4.0 * s) * w4)
}

/// The `φ`-chain and tensor coefficients at ratio `s < 1/2`.
pub fn phi_quantities(s: f64) -> Result<PhiQuantities> {
    if !(s < ADMISSIBLE_LIMIT) || s.is_nan() {
        return Err(Error::Range { s });
    }
    let (phi, phi1, phi2) = phi_chain(s);
    let (rho, rho0, rho1) = rho_closed(s);
    Ok(PhiQuantities {
        phi,
        phi1,
        phi2,
        rho,
        rho0,
        rho1,
    })
}

/// Fundamental tensor `g_ij = ½ ∂²F²/∂yⁱ∂yʲ` from the Riemannian data, with
/// no admissibility check. Valid wherever `β < α`; used directly by degeneracy
/// probes past the convexity boundary.
pub fn fundamental_tensor(a: &Sym2, b: Vec2, y: Vec2) -> Sym2 {
    let alpha = a.quad(y).sqrt();
    let s = b.dot(y) / alpha;
    let (rho, rho0, rho1) = rho_closed(s);
    // α_i = ∂α/∂yⁱ = a_ij yʲ / α
    let alpha_i = (1.0 / alpha) * a.apply(y);
    rho * *a + rho0 * Sym2::outer(b) + rho1 * Sym2::sym_outer(b, alpha_i)
        - (s * rho1) * Sym2::outer(alpha_i)
}

/// `b² = a^{ij} b_i b_j`, evaluated through the closed forms of each family.
fn b2_unchecked(surface: &Surface, p: Point2) -> f64 {
    match surface {
        Surface::Revolution(s) => {
            let d1 = s.dm(p.c1);
            1.0 / (1.0 + d1 * d1)
        }
        Surface::Graph(s) => {
            let (fx, fy) = s.grad(p.c1, p.c2);
            let g2 = fx * fx + fy * fy;
            g2 / (1.0 + g2)
        }
    }
}

/// `α`-norm `b` of the one-form `β` at `p`. Always in `[0, 1)`.
pub fn b_norm(surface: &Surface, p: Point2) -> Result<f64> {
    surface.check(p)?;
    Ok(b2_unchecked(surface, p).sqrt())
}

fn check_direction(y: Vec2) -> Result<()> {
    if y.is_zero() {
        Err(Error::ZeroVector)
    } else if !(y.d1.is_finite() && y.d2.is_finite()) {
        Err(Error::Config(format!("non-finite direction {y:?}")))
    } else {
        Ok(())
    }
}

fn check_convex(surface: &Surface, p: Point2) -> Result<f64> {
    let b2 = b2_unchecked(surface, p);
    let b = b2.sqrt();
    if b < ADMISSIBLE_LIMIT {
        Ok(b2)
    } else {
        Err(Error::ConvexityViolation { b })
    }
}

/// `(α, β)` at `(p, y)`.
pub fn alpha_beta(surface: &Surface, p: Point2, y: Vec2) -> Result<(f64, f64)> {
    surface.check(p)?;
    check_direction(y)?;
    let a = surface.metric_unchecked(p);
    let b = surface.one_form_unchecked(p);
    Ok((a.quad(y).sqrt(), b.dot(y)))
}

/// Slope norm `F(p, y) = α²/(α - β)`.
pub fn slope_norm(surface: &Surface, p: Point2, y: Vec2) -> Result<f64> {
    surface.check(p)?;
    check_direction(y)?;
    check_convex(surface, p)?;
    let (alpha, beta) = ab_unchecked(surface, p, y);
    Ok(alpha * alpha / (alpha - beta))
}

pub(crate) fn ab_unchecked(surface: &Surface, p: Point2, y: Vec2) -> (f64, f64) {
    let a = surface.metric_unchecked(p);
    let b = surface.one_form_unchecked(p);
    (a.quad(y).sqrt(), b.dot(y))
}

/// Fundamental tensor `g_ij` at an admissible `(p, y)`.
pub fn hessian(surface: &Surface, p: Point2, y: Vec2) -> Result<Sym2> {
    surface.check(p)?;
    check_direction(y)?;
    check_convex(surface, p)?;
    let a = surface.metric_unchecked(p);
    let b = surface.one_form_unchecked(p);
    Ok(fundamental_tensor(&a, b, y))
}

/// All pointwise quantities in one pass.
pub fn sample(surface: &Surface, p: Point2, y: Vec2) -> Result<MetricSample> {
    surface.check(p)?;
    check_direction(y)?;
    let b2 = check_convex(surface, p)?;
    let a = surface.metric_unchecked(p);
    let b = surface.one_form_unchecked(p);
    let alpha = a.quad(y).sqrt();
    let beta = b.dot(y);
    let s = beta / alpha;
    let q = phi_quantities(s)?;
    Ok(MetricSample {
        alpha,
        beta,
        s,
        b2,
        phi: q.phi,
        phi1: q.phi1,
        phi2: q.phi2,
        rho: q.rho,
        rho0: q.rho0,
        rho1: q.rho1,
        g: fundamental_tensor(&a, b, y),
        f: alpha * q.phi,
    })
}

/// Riemannian orthonormal frame `{e₁, e₂}` at `p` with `e₁` pointing along the
/// steepest descent. On flat points (`b = 0`) the chart axes are orthonormalised.
pub fn orthonormal_frame(surface: &Surface, p: Point2) -> Result<(Vec2, Vec2)> {
    surface.check(p)?;
    let a = surface.metric_unchecked(p);
    let b = surface.one_form_unchecked(p);
    let a_inv = a
        .inverse()
        .ok_or_else(|| Error::Config(format!("singular metric at {p:?}")))?;
    let sharp = a_inv.apply(b);
    let bnorm = a.quad(sharp).sqrt();
    let e1 = if bnorm > 0.0 {
        (-1.0 / bnorm) * sharp
    } else {
        let x = Vec2::new(1.0, 0.0);
        (1.0 / a.quad(x).sqrt()) * x
    };
    // e₂ ⟂ e₁: on graphs e₂ ∝ (-f_y, f_x), on revolution surfaces e₂ = ∂_v / m
    let ae1 = a.apply(e1);
    let w = Vec2::new(ae1.d2, -ae1.d1);
    let e2 = (1.0 / a.quad(w).sqrt()) * w;
    Ok((e1, e2))
}

/// Coordinates `(X, Y)` of `y` in the downhill orthonormal frame.
pub fn frame_coordinates(surface: &Surface, p: Point2, y: Vec2) -> Result<(f64, f64)> {
    let (e1, e2) = orthonormal_frame(surface, p)?;
    let a = surface.metric_unchecked(p);
    Ok((a.bilinear(y, e1), a.bilinear(y, e2)))
}

/// Limaçon indicatrix of the tangent plane at `p` in the normalisation
/// `c = 1`, `a = b(p)`; its Okubo norm in frame coordinates is the slope norm.
pub fn local_limacon(surface: &Surface, p: Point2) -> Result<Limacon> {
    let b = b_norm(surface, p)?;
    Ok(Limacon::new(1.0, b))
}

/// Smallest `det g` over `n` directions equally spaced in angle in the
/// downhill frame. Direction `k = n/2` (when `n` is even) is the uphill one,
/// where `s = b` and degeneracy appears first. Requires `b < 1`.
pub fn min_det_over_directions(surface: &Surface, p: Point2, n: usize) -> Result<f64> {
    let (e1, e2) = orthonormal_frame(surface, p)?;
    let a = surface.metric_unchecked(p);
    let b = surface.one_form_unchecked(p);
    let mut worst = f64::INFINITY;
    for k in 0..n {
        let (sin, cos) = (2.0 * PI * k as f64 / n as f64).sin_cos();
        let y = cos * e1 + sin * e2;
        worst = worst.min(fundamental_tensor(&a, b, y).det());
    }
    Ok(worst)
}

/// Limaçon `r = c + a cos θ` in polar coordinates of a tangent plane whose
/// polar axis is the steepest-descent direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Limacon {
    /// Ground speed.
    pub c: f64,
    /// Downhill gravity component `(g/2) sin ε`.
    pub a: f64,
}

impl Limacon {
    pub const fn new(c: f64, a: f64) -> Self {
        Self { c, a }
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.c > 2.0 * self.a
    }

    /// `(X(θ), Y(θ)) = (c + a cos θ)(cos θ, sin θ)`.
    pub fn point(&self, theta: f64) -> (f64, f64) {
        let (sin, cos) = theta.sin_cos();
        let r = self.c + self.a * cos;
        (r * cos, r * sin)
    }

    /// Residual of the implicit equation `X² + Y² - c√(X² + Y²) - aX`.
    pub fn implicit_residual(&self, x: f64, y: f64) -> f64 {
        let r2 = x * x + y * y;
        r2 - self.c * r2.sqrt() - self.a * x
    }

    /// Minkowski norm with this limaçon as unit circle,
    /// `F(X, Y) = (X² + Y²)/(c√(X² + Y²) + aX)`.
    pub fn okubo_norm(&self, x: f64, y: f64) -> Result<f64> {
        if !self.is_strongly_convex() {
            return Err(Error::NonConvexLimacon {
                c: self.c,
                a: self.a,
            });
        }
        if x == 0.0 && y == 0.0 {
            return Err(Error::ZeroVector);
        }
        let r2 = x * x + y * y;
        Ok(r2 / (self.c * r2.sqrt() + self.a * x))
    }
}

/// Point of the limaçon at polar angle `theta`.
pub fn limacon_point(lim: &Limacon, theta: f64) -> (f64, f64) {
    lim.point(theta)
}

pub fn okubo_norm(lim: &Limacon, x: f64, y: f64) -> Result<f64> {
    lim.okubo_norm(x, y)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConvexityOptions {
    /// Samples per axis of the region's parameter square.
    pub grid: usize,
    /// `holds` requires `sup b < 1/2 - tol_margin`.
    pub tol_margin: f64,
    /// Golden-section refinement around the worst grid cell.
    pub refine: bool,
}

impl Default for ConvexityOptions {
    fn default() -> Self {
        Self {
            grid: 201,
            tol_margin: 1e-9,
            refine: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub holds: bool,
    pub worst_b: f64,
    pub worst_point: [f64; 2],
    /// `1/2 - worst_b`; negative when convexity fails.
    pub margin: f64,
}

/// Scans `b` over `region` and reports whether the slope metric is strongly
/// convex throughout.
pub fn convexity_check(
    surface: &Surface,
    region: &Region,
    opts: &ConvexityOptions,
) -> Result<ConvexityReport> {
    if !region.within(surface) {
        let p = region.map(0.0, 0.0);
        return Err(Error::Domain {
            surface: surface.name().to_string(),
            c1: p.c1,
            c2: p.c2,
        });
    }
    if opts.grid < 2 {
        return Err(Error::Config(
            "convexity grid needs at least 2 samples per axis".into(),
        ));
    }
    let eval = |s: f64, t: f64| {
        let b = b2_unchecked(surface, region.map(s, t)).sqrt();
        if b.is_nan() {
            f64::INFINITY
        } else {
            b
        }
    };

    // b on revolution surfaces does not depend on v; one column suffices
    let revolution = matches!(
        (surface, region),
        (Surface::Revolution(_), Region::Rect { .. })
    );
    let n = opts.grid;
    let cols = if revolution { 1 } else { n };
    let step = 1.0 / (n - 1) as f64;
    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    for i in 0..n {
        for j in 0..cols {
            let b = eval(i as f64 * step, j as f64 * step);
            if b > best.0 {
                best = (b, i, j);
            }
        }
    }
    let (mut worst_b, bi, bj) = best;
    let mut ws = bi as f64 * step;
    let mut wt = bj as f64 * step;

    if opts.refine && worst_b.is_finite() {
        let s_lo = (ws - step).max(0.0);
        let s_hi = (ws + step).min(1.0);
        let (t_lo, t_hi) = if revolution {
            (wt, wt)
        } else {
            ((wt - step).max(0.0), (wt + step).min(1.0))
        };
        for _ in 0..3 {
            let (s_new, b_s) = golden_max(|s| eval(s, wt), s_lo, s_hi);
            if b_s > worst_b {
                worst_b = b_s;
                ws = s_new;
            }
            if t_hi > t_lo {
                let (t_new, b_t) = golden_max(|t| eval(ws, t), t_lo, t_hi);
                if b_t > worst_b {
                    worst_b = b_t;
                    wt = t_new;
                }
            }
        }
    }

    let p = region.map(ws, wt);
    Ok(ConvexityReport {
        holds: worst_b < 0.5 - opts.tol_margin,
        worst_b,
        worst_point: [p.c1, p.c2],
        margin: 0.5 - worst_b,
    })
}

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`; the
/// endpoints are also probed so boundary maxima are not lost.
fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    [(lo, f(lo)), (hi, f(hi)), (mid, f(mid))].into_iter().fold(
        (mid, f64::NEG_INFINITY),
        |acc, x| if x.1 > acc.1 { x } else { acc },
    )
}
