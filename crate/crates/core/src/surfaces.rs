//! Surface models: surfaces of revolution `(u, v) ↦ (m(u) cos v, m(u) sin v, u)`
//! and height-field graphs `z = f(x, y)`, together with the Riemannian metric
//! and the height one-form they induce.
//!
//! Every surface carries analytic derivative evaluators. Finite differences are
//! only used by tests, as oracles for those evaluators.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Sym2, Vec2};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type HeightFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type GradFn = Arc<dyn Fn(f64, f64) -> (f64, f64) + Send + Sync>;

/// Amplitude `1/(2√6)` shared by the globally convex graph examples.
pub fn gallery_amplitude() -> f64 {
    1.0 / (2.0 * 6f64.sqrt())
}

/// Caps applied to unbounded chart domains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DomainCaps {
    pub u_max: f64,
    pub xy_bound: f64,
    /// Distance kept from singular endpoints such as `u = 1/√6`.
    pub margin: f64,
}

impl Default for DomainCaps {
    fn default() -> Self {
        Self {
            u_max: 50.0,
            xy_bound: 50.0,
            margin: 1e-3,
        }
    }
}

/// Surface of revolution with profile radius `m(u) > 0` on `[u_min, u_max]`.
#[derive(Clone)]
pub struct SurfaceOfRevolution {
    name: String,
    profile: ScalarFn,
    profile_d1: ScalarFn,
    profile_d2: ScalarFn,
    u_min: f64,
    u_max: f64,
}

impl fmt::Debug for SurfaceOfRevolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceOfRevolution")
            .field("name", &self.name)
            .field("domain", &(self.u_min, self.u_max))
            .finish()
    }
}

impl SurfaceOfRevolution {
    pub fn new(
        name: impl Into<String>,
        domain: (f64, f64),
        profile: impl Fn(f64) -> f64 + Send + Sync + 'static,
        profile_d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        profile_d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let (u_min, u_max) = domain;
        if !(u_min < u_max) || !u_min.is_finite() || !u_max.is_finite() {
            return Err(Error::Config(format!(
                "revolution domain must satisfy u_min < u_max, got ({u_min}, {u_max})"
            )));
        }
        Ok(Self {
            name: name.into(),
            profile: Arc::new(profile),
            profile_d1: Arc::new(profile_d1),
            profile_d2: Arc::new(profile_d2),
            u_min,
            u_max,
        })
    }

    /// `m(u) = √(a u² + c)`. With `a = 6, c = -1` the strong convexity
    /// condition `(m')² > 3` holds on the whole domain `u > 1/√6`.
    pub fn sqrt_quadratic(a: f64, c: f64, domain: (f64, f64)) -> Result<Self> {
        Self::new(
            "revolution-sqrt",
            domain,
            move |u| (a * u * u + c).sqrt(),
            move |u| a * u / (a * u * u + c).sqrt(),
            // m'' = (a m² - a² u²) / m³ = a c / m³
            move |u| a * c / (a * u * u + c).powf(1.5),
        )
    }

    /// `m(u) = ½ √(-2 ln(k u²))` on `0 < u < 1/√k`.
    pub fn log_radius(k: f64, domain: (f64, f64)) -> Result<Self> {
        let m = move |u: f64| 0.5 * (-2.0 * (k * u * u).ln()).sqrt();
        Self::new(
            "revolution-log",
            domain,
            m,
            // m² = -½ ln(k u²)  ⇒  2 m m' = -1/u
            move |u| -1.0 / (2.0 * u * m(u)),
            move |u| {
                let r = m(u);
                let d1 = -1.0 / (2.0 * u * r);
                (r + u * d1) / (2.0 * u * u * r * r)
            },
        )
    }

    /// Cone `m(u) = slope·u + offset`.
    pub fn cone(slope: f64, offset: f64, domain: (f64, f64)) -> Result<Self> {
        Self::new(
            "cone",
            domain,
            move |u| slope * u + offset,
            move |_| slope,
            |_| 0.0,
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.u_min, self.u_max)
    }

    pub fn m(&self, u: f64) -> f64 {
        (self.profile)(u)
    }

    pub fn dm(&self, u: f64) -> f64 {
        (self.profile_d1)(u)
    }

    pub fn ddm(&self, u: f64) -> f64 {
        (self.profile_d2)(u)
    }

    pub fn contains_u(&self, u: f64) -> bool {
        u >= self.u_min && u <= self.u_max
    }

    pub(crate) fn check_u(&self, u: f64, v: f64) -> Result<()> {
        if self.contains_u(u) {
            Ok(())
        } else {
            Err(Error::Domain {
                surface: self.name.clone(),
                c1: u,
                c2: v,
            })
        }
    }

    /// `b = 1/√(1 + m'²)`, the α-norm of `β = u̇`.
    pub fn b_at(&self, u: f64) -> f64 {
        let d1 = self.dm(u);
        1.0 / (1.0 + d1 * d1).sqrt()
    }
}

/// Height field `z = f(x, y)` over a closed rectangle.
#[derive(Clone)]
pub struct GraphSurface {
    name: String,
    height: HeightFn,
    grad: GradFn,
    x_range: (f64, f64),
    y_range: (f64, f64),
}

impl fmt::Debug for GraphSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphSurface")
            .field("name", &self.name)
            .field("x_range", &self.x_range)
            .field("y_range", &self.y_range)
            .finish()
    }
}

impl GraphSurface {
    pub fn new(
        name: impl Into<String>,
        x_range: (f64, f64),
        y_range: (f64, f64),
        height: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        grad: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
    ) -> Result<Self> {
        for (lo, hi) in [x_range, y_range] {
            if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::Config(format!(
                    "graph domain bounds must be finite with lo <= hi, got ({lo}, {hi})"
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            height: Arc::new(height),
            grad: Arc::new(grad),
            x_range,
            y_range,
        })
    }

    /// Plane `z = p x + q y + r`.
    pub fn plane(p: f64, q: f64, r: f64, bound: f64) -> Result<Self> {
        Self::new(
            "plane",
            (-bound, bound),
            (-bound, bound),
            move |x, y| p * x + q * y + r,
            move |_, _| (p, q),
        )
    }

    /// Paraboloid `z = apex - k (x² + y²)`.
    pub fn paraboloid(apex: f64, k: f64, bound: f64) -> Result<Self> {
        Self::new(
            "paraboloid",
            (-bound, bound),
            (-bound, bound),
            move |x, y| apex - k * (x * x + y * y),
            move |x, y| (-2.0 * k * x, -2.0 * k * y),
        )
    }

    /// `z = amp · exp(-(x² + y²))`.
    pub fn gaussian_bump(amp: f64, bound: f64) -> Result<Self> {
        Self::new(
            "gaussian-bump",
            (-bound, bound),
            (-bound, bound),
            move |x, y| amp * (-(x * x + y * y)).exp(),
            move |x, y| {
                let e = amp * (-(x * x + y * y)).exp();
                (-2.0 * x * e, -2.0 * y * e)
            },
        )
    }

    /// `z = amp · exp(-(x + shift)²)`.
    pub fn ridge(amp: f64, shift: f64, bound: f64) -> Result<Self> {
        Self::new(
            "ridge",
            (-bound, bound),
            (-bound, bound),
            move |x, _| amp * (-(x + shift) * (x + shift)).exp(),
            move |x, _| {
                let w = x + shift;
                (-2.0 * w * amp * (-w * w).exp(), 0.0)
            },
        )
    }

    /// `z = amp · arctan(x + y)`.
    pub fn arctan_slope(amp: f64, bound: f64) -> Result<Self> {
        Self::new(
            "arctan-slope",
            (-bound, bound),
            (-bound, bound),
            move |x, y| amp * (x + y).atan(),
            move |x, y| {
                let w = x + y;
                let d = amp / (1.0 + w * w);
                (d, d)
            },
        )
    }

    /// `z = amp · ((x + y) - ln(e^{x+y} + 1))`.
    pub fn softplus_slope(amp: f64, bound: f64) -> Result<Self> {
        Self::new(
            "softplus-slope",
            (-bound, bound),
            (-bound, bound),
            move |x, y| {
                let w = x + y;
                amp * (w - softplus(w))
            },
            move |x, y| {
                // d/dw (w - ln(1 + e^w)) = 1/(1 + e^w)
                let d = amp * logistic(-(x + y));
                (d, d)
            },
        )
    }

    /// `z = amp · ln(√((x + y)² + 1) + x + y) = amp · asinh(x + y)`.
    pub fn asinh_slope(amp: f64, bound: f64) -> Result<Self> {
        Self::new(
            "asinh-slope",
            (-bound, bound),
            (-bound, bound),
            move |x, y| amp * (x + y).asinh(),
            move |x, y| {
                let w = x + y;
                let d = amp / (1.0 + w * w).sqrt();
                (d, d)
            },
        )
    }

    pub fn with_domain(mut self, x_range: (f64, f64), y_range: (f64, f64)) -> Result<Self> {
        let probe = Self::new(&*self.name, x_range, y_range, |_, _| 0.0, |_, _| (0.0, 0.0))?;
        self.x_range = probe.x_range;
        self.y_range = probe.y_range;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn x_range(&self) -> (f64, f64) {
        self.x_range
    }

    pub fn y_range(&self) -> (f64, f64) {
        self.y_range
    }

    pub fn height(&self, x: f64, y: f64) -> f64 {
        (self.height)(x, y)
    }

    pub fn grad(&self, x: f64, y: f64) -> (f64, f64) {
        (self.grad)(x, y)
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.c1 >= self.x_range.0
            && p.c1 <= self.x_range.1
            && p.c2 >= self.y_range.0
            && p.c2 <= self.y_range.1
    }

    /// `b = √(|∇f|² / (1 + |∇f|²))`.
    pub fn b_at(&self, x: f64, y: f64) -> f64 {
        let (fx, fy) = self.grad(x, y);
        let g2 = fx * fx + fy * fy;
        (g2 / (1.0 + g2)).sqrt()
    }
}

fn softplus(w: f64) -> f64 {
    w.max(0.0) + (-w.abs()).exp().ln_1p()
}

fn logistic(w: f64) -> f64 {
    if w >= 0.0 {
        1.0 / (1.0 + (-w).exp())
    } else {
        let e = w.exp();
        e / (1.0 + e)
    }
}

/// Either kind of surface. Metric-level operations accept any surface; the
/// spray and geodesic machinery works on [`SurfaceOfRevolution`] only.
#[derive(Debug, Clone)]
pub enum Surface {
    Revolution(SurfaceOfRevolution),
    Graph(GraphSurface),
}

impl From<SurfaceOfRevolution> for Surface {
    fn from(s: SurfaceOfRevolution) -> Self {
        Surface::Revolution(s)
    }
}

impl From<GraphSurface> for Surface {
    fn from(s: GraphSurface) -> Self {
        Surface::Graph(s)
    }
}

impl Surface {
    pub fn name(&self) -> &str {
        match self {
            Surface::Revolution(s) => s.name(),
            Surface::Graph(s) => s.name(),
        }
    }

    pub fn as_revolution(&self) -> Option<&SurfaceOfRevolution> {
        match self {
            Surface::Revolution(s) => Some(s),
            Surface::Graph(_) => None,
        }
    }

    pub fn as_graph(&self) -> Option<&GraphSurface> {
        match self {
            Surface::Graph(s) => Some(s),
            Surface::Revolution(_) => None,
        }
    }

    /// Whether `p` lies in the chart domain. On revolution surfaces only `u`
    /// is constrained; `v` is an angle.
    pub fn contains(&self, p: Point2) -> bool {
        match self {
            Surface::Revolution(s) => s.contains_u(p.c1),
            Surface::Graph(s) => s.contains(p),
        }
    }

    pub fn check(&self, p: Point2) -> Result<()> {
        if self.contains(p) && p.c1.is_finite() && p.c2.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain {
                surface: self.name().to_string(),
                c1: p.c1,
                c2: p.c2,
            })
        }
    }

    /// Induced Riemannian metric `a_ij` at `p`.
    pub fn riemannian_metric_at(&self, p: Point2) -> Result<Sym2> {
        self.check(p)?;
        Ok(self.metric_unchecked(p))
    }

    pub(crate) fn metric_unchecked(&self, p: Point2) -> Sym2 {
        match self {
            Surface::Revolution(s) => {
                let m = s.m(p.c1);
                let d1 = s.dm(p.c1);
                Sym2::diag(1.0 + d1 * d1, m * m)
            }
            Surface::Graph(s) => {
                let (fx, fy) = s.grad(p.c1, p.c2);
                Sym2::new(1.0 + fx * fx, fx * fy, 1.0 + fy * fy)
            }
        }
    }

    /// Components `(b₁, b₂)` of the one-form `β`: `(f_x, f_y)` on graphs and
    /// `(1, 0)` on revolution surfaces.
    pub fn one_form_at(&self, p: Point2) -> Result<Vec2> {
        self.check(p)?;
        Ok(self.one_form_unchecked(p))
    }

    pub(crate) fn one_form_unchecked(&self, p: Point2) -> Vec2 {
        match self {
            Surface::Revolution(_) => Vec2::new(1.0, 0.0),
            Surface::Graph(s) => {
                let (fx, fy) = s.grad(p.c1, p.c2);
                Vec2::new(fx, fy)
            }
        }
    }

    /// The whole chart as a region: the `(x, y)` rectangle, or the `u`
    /// interval times one full turn in `v`.
    pub fn default_region(&self) -> Region {
        match self {
            Surface::Revolution(s) => Region::Rect {
                c1: [s.u_min, s.u_max],
                c2: [0.0, 2.0 * PI],
            },
            Surface::Graph(s) => Region::Rect {
                c1: [s.x_range.0, s.x_range.1],
                c2: [s.y_range.0, s.y_range.1],
            },
        }
    }
}

/// A compact chart region used by convexity scans and area integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Rect { c1: [f64; 2], c2: [f64; 2] },
    Disk { center: [f64; 2], radius: f64 },
}

impl Region {
    pub fn rect(c1: (f64, f64), c2: (f64, f64)) -> Self {
        Region::Rect {
            c1: [c1.0, c1.1],
            c2: [c2.0, c2.1],
        }
    }

    pub fn disk(center: (f64, f64), radius: f64) -> Self {
        Region::Disk {
            center: [center.0, center.1],
            radius,
        }
    }

    /// Maps the unit square onto the region: affinely for rectangles, through
    /// polar coordinates `(r, θ) = (s R, 2π t)` for disks.
    pub fn map(&self, s: f64, t: f64) -> Point2 {
        match *self {
            Region::Rect { c1, c2 } => {
                Point2::new(c1[0] + s * (c1[1] - c1[0]), c2[0] + t * (c2[1] - c2[0]))
            }
            Region::Disk { center, radius } => {
                let (sin, cos) = (2.0 * PI * t).sin_cos();
                Point2::new(center[0] + s * radius * cos, center[1] + s * radius * sin)
            }
        }
    }

    /// Chart measure `∫ dc1 dc2`.
    pub fn chart_measure(&self) -> f64 {
        match *self {
            Region::Rect { c1, c2 } => (c1[1] - c1[0]).abs() * (c2[1] - c2[0]).abs(),
            Region::Disk { radius, .. } => PI * radius * radius,
        }
    }

    pub fn is_valid(&self) -> bool {
        match *self {
            Region::Rect { c1, c2 } => {
                c1.iter().chain(c2.iter()).all(|x| x.is_finite())
                    && c1[0] <= c1[1]
                    && c2[0] <= c2[1]
            }
            Region::Disk { center, radius } => {
                center.iter().all(|x| x.is_finite()) && radius.is_finite() && radius >= 0.0
            }
        }
    }

    /// Whether every point of the region lies inside the surface chart.
    pub fn within(&self, surface: &Surface) -> bool {
        if !self.is_valid() {
            return false;
        }
        match *self {
            Region::Rect { c1, c2 } => [c1[0], c1[1]].iter().all(|&a| {
                [c2[0], c2[1]]
                    .iter()
                    .all(|&b| surface.contains(Point2::new(a, b)))
            }),
            Region::Disk { center, radius } => {
                let (x0, y0) = (center[0], center[1]);
                [
                    (x0 - radius, y0 - radius),
                    (x0 + radius, y0 + radius),
                    (x0 - radius, y0 + radius),
                    (x0 + radius, y0 - radius),
                ]
                .iter()
                .all(|&(a, b)| surface.contains(Point2::new(a, b)))
            }
        }
    }
}

/// Named surfaces covering every worked example, with default caps.
pub fn gallery() -> Vec<Surface> {
    gallery_with(DomainCaps::default())
}

pub fn gallery_with(caps: DomainCaps) -> Vec<Surface> {
    GALLERY_NAMES
        .iter()
        .map(|name| lookup_with(name, caps).expect("gallery entries are well formed"))
        .collect()
}

pub const GALLERY_NAMES: [&str; 9] = [
    "plane",
    "paraboloid",
    "gaussian-bump",
    "ridge",
    "arctan-slope",
    "softplus-slope",
    "asinh-slope",
    "revolution-sqrt",
    "revolution-log",
];

/// Gallery entry by name, with default caps.
pub fn lookup(name: &str) -> Option<Surface> {
    lookup_with(name, DomainCaps::default())
}

pub fn lookup_with(name: &str, caps: DomainCaps) -> Option<Surface> {
    let amp = gallery_amplitude();
    let bound = caps.xy_bound;
    let surface: Surface = match name {
        "plane" => GraphSurface::plane(0.0, 0.0, 0.0, bound).ok()?.into(),
        "paraboloid" => GraphSurface::paraboloid(100.0, 1.0, bound).ok()?.into(),
        "gaussian-bump" => GraphSurface::gaussian_bump(amp, bound).ok()?.into(),
        "ridge" => GraphSurface::ridge(amp, 2.0, bound).ok()?.into(),
        "arctan-slope" => GraphSurface::arctan_slope(amp, bound).ok()?.into(),
        "softplus-slope" => GraphSurface::softplus_slope(amp, bound).ok()?.into(),
        "asinh-slope" => GraphSurface::asinh_slope(amp, bound).ok()?.into(),
        "revolution-sqrt" => {
            let lo = 1.0 / 6f64.sqrt() + caps.margin;
            SurfaceOfRevolution::sqrt_quadratic(6.0, -1.0, (lo, caps.u_max))
                .ok()?
                .into()
        }
        "revolution-log" => {
            let hi = 1.0 / (2.0 * 6f64.sqrt()) - caps.margin;
            SurfaceOfRevolution::log_radius(24.0, (caps.margin, hi))
                .ok()?
                .into()
        }
        _ => return None,
    };
    Some(surface)
}
