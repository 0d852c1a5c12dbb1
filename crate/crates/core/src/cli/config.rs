//! JSON run configuration.
//!
//! ```json
//! {
//!   "surface": { "family": "revolution-sqrt", "params": { "a": 6, "c": -1 }, "domain": { "u": [0.5, 50] } },
//!   "seed": 0,
//!   "format": "csv",
//!   "convexity":  { "region": { "rect": { "c1": [-1, 1], "c2": [-1, 1] } }, "grid": 201 },
//!   "geodesic":   { "u0": 1.0, "v0": 0.0, "angle": 1.5707963267948966, "length": 5.0,
//!                   "model": "slope", "integrator": { "method": "rk45_adaptive", "tol": 1e-10 } },
//!   "indicatrix": { "c": 1.0, "a": 0.4, "samples": 720 },
//!   "area":       { "region": { "rect": { "c1": [1, 2], "c2": [0, 6.283185307179586] } }, "random_subregions": 20 },
//!   "volcoeff":   { "b_min": 0.01, "b_max": 0.49, "step": 0.01 }
//! }
//! ```
//!
//! Every section is optional; a command only reads its own section and the
//! surface. Unknown keys are rejected.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geodesics::{IntegratorOptions, SprayModel};
use crate::metric::ConvexityOptions;
use crate::surfaces::{
    gallery_amplitude, DomainCaps, GraphSurface, Region, Surface, SurfaceOfRevolution,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub surface: Option<SurfaceSpec>,
    #[serde(default)]
    pub seed: u64,
    pub format: Option<Format>,
    #[serde(default)]
    pub caps: DomainCaps,
    #[serde(default)]
    pub convexity: ConvexityConfig,
    pub geodesic: Option<GeodesicConfig>,
    #[serde(default)]
    pub indicatrix: IndicatrixConfig,
    #[serde(default)]
    pub area: AreaConfig,
    #[serde(default)]
    pub volcoeff: VolcoeffConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn build_surface(&self) -> Result<Surface> {
        self.surface
            .as_ref()
            .ok_or_else(|| Error::Config("missing `surface` section".into()))?
            .build(self.caps)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub family: String,
    #[serde(default)]
    pub params: serde_json::Map<String, Value>,
    pub domain: Option<DomainSpec>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub u: Option<[f64; 2]>,
    pub x: Option<[f64; 2]>,
    pub y: Option<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaneParams {
    #[serde(default)]
    p: f64,
    #[serde(default)]
    q: f64,
    #[serde(default)]
    r: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct ParaboloidParams {
    apex: f64,
    k: f64,
}

impl Default for ParaboloidParams {
    fn default() -> Self {
        Self {
            apex: 100.0,
            k: 1.0,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct AmplitudeParams {
    amplitude: f64,
    shift: Option<f64>,
}

impl Default for AmplitudeParams {
    fn default() -> Self {
        Self {
            amplitude: gallery_amplitude(),
            shift: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct SqrtParams {
    a: f64,
    c: f64,
}

impl Default for SqrtParams {
    fn default() -> Self {
        Self { a: 6.0, c: -1.0 }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct LogParams {
    k: f64,
}

impl Default for LogParams {
    fn default() -> Self {
        Self { k: 24.0 }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeParams {
    slope: f64,
    #[serde(default)]
    offset: f64,
}

fn params<T: DeserializeOwned>(family: &str, map: &serde_json::Map<String, Value>) -> Result<T> {
    serde_json::from_value(Value::Object(map.clone()))
        .map_err(|e| Error::Config(format!("bad params for `{family}`: {e}")))
}

fn finite_pair(name: &str, r: [f64; 2]) -> Result<(f64, f64)> {
    if r[0].is_finite() && r[1].is_finite() && r[0] < r[1] {
        Ok((r[0], r[1]))
    } else {
        Err(Error::Config(format!(
            "domain `{name}` must be an increasing finite pair, got {r:?}"
        )))
    }
}

impl SurfaceSpec {
    pub fn build(&self, caps: DomainCaps) -> Result<Surface> {
        let domain = self.domain.clone().unwrap_or_default();
        let family = self.family.as_str();
        let graph = |g: GraphSurface| -> Result<Surface> {
            if domain.u.is_some() {
                return Err(Error::Config(format!(
                    "graph family `{family}` takes an x/y domain"
                )));
            }
            let x = domain
                .x
                .map(|r| finite_pair("x", r))
                .transpose()?
                .unwrap_or(g.x_range());
            let y = domain
                .y
                .map(|r| finite_pair("y", r))
                .transpose()?
                .unwrap_or(g.y_range());
            Ok(g.with_domain(x, y)?.into())
        };
        let revolution = |default: Option<(f64, f64)>,
                          make: &dyn Fn((f64, f64)) -> Result<SurfaceOfRevolution>|
         -> Result<Surface> {
            if domain.x.is_some() || domain.y.is_some() {
                return Err(Error::Config(format!(
                    "revolution family `{family}` takes a u domain"
                )));
            }
            let u = match (domain.u, default) {
                (Some(r), _) => finite_pair("u", r)?,
                (None, Some(d)) => d,
                (None, None) => {
                    return Err(Error::Config(format!(
                        "family `{family}` needs an explicit u domain"
                    )))
                }
            };
            Ok(make(u)?.into())
        };
        let bound = caps.xy_bound;
        match family {
            "plane" => {
                let p: PlaneParams = params(family, &self.params)?;
                graph(GraphSurface::plane(p.p, p.q, p.r, bound)?)
            }
            "paraboloid" => {
                let p: ParaboloidParams = params(family, &self.params)?;
                graph(GraphSurface::paraboloid(p.apex, p.k, bound)?)
            }
            "gaussian-bump" | "ridge" | "arctan-slope" | "softplus-slope" | "asinh-slope" => {
                let p: AmplitudeParams = params(family, &self.params)?;
                if p.shift.is_some() && family != "ridge" {
                    return Err(Error::Config(format!(
                        "`shift` only applies to `ridge`, not `{family}`"
                    )));
                }
                let a = p.amplitude;
                let g = match family {
                    "gaussian-bump" => GraphSurface::gaussian_bump(a, bound)?,
                    "ridge" => GraphSurface::ridge(a, p.shift.unwrap_or(2.0), bound)?,
                    "arctan-slope" => GraphSurface::arctan_slope(a, bound)?,
                    "softplus-slope" => GraphSurface::softplus_slope(a, bound)?,
                    _ => GraphSurface::asinh_slope(a, bound)?,
                };
                graph(g)
            }
            "revolution-sqrt" => {
                let p: SqrtParams = params(family, &self.params)?;
                if p.a <= 0.0 {
                    return Err(Error::Config("revolution-sqrt needs a > 0".into()));
                }
                let lo = if p.c < 0.0 { (-p.c / p.a).sqrt() } else { 0.0 } + caps.margin;
                revolution(Some((lo, caps.u_max)), &|d| {
                    SurfaceOfRevolution::sqrt_quadratic(p.a, p.c, d)
                })
            }
            "revolution-log" => {
                let p: LogParams = params(family, &self.params)?;
                if p.k <= 0.0 {
                    return Err(Error::Config("revolution-log needs k > 0".into()));
                }
                let hi = 1.0 / p.k.sqrt() - caps.margin;
                revolution(Some((caps.margin, hi)), &|d| {
                    SurfaceOfRevolution::log_radius(p.k, d)
                })
            }
            "cone" => {
                let p: ConeParams = params(family, &self.params)?;
                revolution(None, &|d| SurfaceOfRevolution::cone(p.slope, p.offset, d))
            }
            other => Err(Error::Config(format!("unknown surface family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConvexityConfig {
    pub region: Option<Region>,
    pub grid: Option<usize>,
    pub tol_margin: Option<f64>,
    pub refine: Option<bool>,
}

impl ConvexityConfig {
    pub fn options(&self) -> ConvexityOptions {
        let d = ConvexityOptions::default();
        ConvexityOptions {
            grid: self.grid.unwrap_or(d.grid),
            tol_margin: self.tol_margin.unwrap_or(d.tol_margin),
            refine: self.refine.unwrap_or(d.refine),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicConfig {
    pub u0: f64,
    #[serde(default)]
    pub v0: f64,
    /// Angle from the downhill meridian in the orthonormal frame.
    #[serde(default)]
    pub angle: f64,
    #[serde(default = "default_length")]
    pub length: f64,
    #[serde(default)]
    pub model: SprayModel,
    #[serde(default)]
    pub integrator: IntegratorOptions,
}

fn default_length() -> f64 {
    10.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IndicatrixConfig {
    pub c: f64,
    pub a: f64,
    pub samples: usize,
    /// Take the limaçon of this surface point instead of `(c, a)`.
    pub point: Option<[f64; 2]>,
}

impl Default for IndicatrixConfig {
    fn default() -> Self {
        Self {
            c: 1.0,
            a: 0.0,
            samples: 720,
            point: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AreaConfig {
    pub region: Option<Region>,
    pub random_subregions: usize,
    pub slack: f64,
}

impl Default for AreaConfig {
    fn default() -> Self {
        Self {
            region: None,
            random_subregions: 0,
            slack: crate::measures::RATIO_SLACK,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VolcoeffConfig {
    pub b_min: f64,
    pub b_max: f64,
    pub step: f64,
    /// Explicit list; overrides the range when present.
    pub values: Option<Vec<f64>>,
}

impl Default for VolcoeffConfig {
    fn default() -> Self {
        Self {
            b_min: 0.01,
            b_max: 0.49,
            step: 0.01,
            values: None,
        }
    }
}

impl VolcoeffConfig {
    pub fn grid(&self) -> Result<Vec<f64>> {
        let grid = match &self.values {
            Some(v) => v.clone(),
            None => {
                if !(self.step > 0.0) || !(self.b_max >= self.b_min) {
                    return Err(Error::Config(
                        "volcoeff needs step > 0 and b_max >= b_min".into(),
                    ));
                }
                let n = ((self.b_max - self.b_min) / self.step + 1e-9).floor() as usize + 1;
                // snap to 12 decimals so a 0.01 grid prints as 0.01, 0.02, ...
                (0..n)
                    .map(|k| ((self.b_min + k as f64 * self.step) * 1e12).round() / 1e12)
                    .collect()
            }
        };
        if grid.is_empty() {
            return Err(Error::Config("volcoeff grid is empty".into()));
        }
        if let Some(bad) = grid.iter().find(|b| !(**b >= 0.0 && **b < 0.5)) {
            return Err(Error::Config(format!("b = {bad} is outside [0, 1/2)")));
        }
        Ok(grid)
    }
}
