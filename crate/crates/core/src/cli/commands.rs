use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::{Format, RunConfig};
use crate::error::{Error, Result};
use crate::export::{self, fmt_f64, CsvTable};
use crate::geodesics::{self, ExitReason, GeodesicState};
use crate::measures::{self, AreaReport};
use crate::metric::{self, ConvexityReport, Limacon};
use crate::surfaces::{Region, Surface};
use crate::Point2;

/// Result of a command: the file body, a one-line summary for stderr, and
/// whether the mathematical verdict passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub body: String,
    pub summary: String,
    pub passed: bool,
}

fn surface_for(cfg: &RunConfig) -> Result<Surface> {
    // any failure to build the surface is a configuration problem
    cfg.build_surface().map_err(|e| match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    })
}

fn region_in(surface: &Surface, region: Option<Region>) -> Result<Region> {
    let region = region.unwrap_or_else(|| surface.default_region());
    if region.within(surface) {
        Ok(region)
    } else {
        Err(Error::Config(format!(
            "region {region:?} is not inside the chart of `{}`",
            surface.name()
        )))
    }
}

#[derive(Serialize)]
struct ConvexityDocument<'a> {
    surface: &'a str,
    region: Region,
    #[serde(flatten)]
    report: ConvexityReport,
}

pub fn convexity(cfg: &RunConfig, format: Format) -> Result<Outcome> {
    let surface = surface_for(cfg)?;
    let region = region_in(&surface, cfg.convexity.region)?;
    let report = metric::convexity_check(&surface, &region, &cfg.convexity.options())?;
    let body = match format {
        Format::Json => export::to_json(&ConvexityDocument {
            surface: surface.name(),
            region,
            report,
        })?,
        Format::Csv => {
            let mut t = CsvTable::new(&[
                "surface", "holds", "worst_b", "worst_c1", "worst_c2", "margin",
            ])?;
            t.row([
                surface.name().to_string(),
                report.holds.to_string(),
                fmt_f64(report.worst_b),
                fmt_f64(report.worst_point[0]),
                fmt_f64(report.worst_point[1]),
                fmt_f64(report.margin),
            ])?;
            t.finish()?
        }
    };
    Ok(Outcome {
        body,
        summary: format!(
            "convexity {}: sup b = {} at ({}, {})",
            if report.holds { "holds" } else { "fails" },
            report.worst_b,
            report.worst_point[0],
            report.worst_point[1]
        ),
        passed: report.holds,
    })
}

pub fn geodesic(cfg: &RunConfig, format: Format) -> Result<Outcome> {
    let surface = surface_for(cfg)?;
    let rev = surface
        .as_revolution()
        .ok_or_else(|| Error::Config("geodesic runs need a surface of revolution".into()))?;
    let g = cfg
        .geodesic
        .as_ref()
        .ok_or_else(|| Error::Config("missing `geodesic` section".into()))?;
    if !rev.contains_u(g.u0) {
        return Err(Error::Config(format!("u0 = {} is outside the chart", g.u0)));
    }
    let y = geodesics::direction_from_angle(rev, g.u0, g.angle, g.model)?;
    let init = GeodesicState::new(g.u0, g.v0, y.d1, y.d2);
    let mut opts = g.integrator;
    opts.model = g.model;
    let trace = geodesics::integrate_geodesic(rev, init, g.length, &opts)?;
    let body = match format {
        Format::Csv => export::trace_csv(rev, &trace)?,
        Format::Json => export::trace_json(rev, &trace)?,
    };
    let premature = trace.exit_reason != ExitReason::Completed && trace.length() < 0.01 * g.length;
    let nu0 = match g.model {
        geodesics::SprayModel::Slope => trace.clairaut[0],
        geodesics::SprayModel::Riemannian => trace.clairaut_riem[0],
    };
    Ok(Outcome {
        body,
        summary: format!(
            "nu = {nu0}, drift = {:e}, exit_reason = {:?}, length = {}",
            trace.stats.max_clairaut_drift,
            trace.exit_reason,
            trace.length()
        ),
        passed: !premature,
    })
}

pub fn indicatrix(cfg: &RunConfig, format: Format) -> Result<Outcome> {
    let ic = &cfg.indicatrix;
    if ic.samples == 0 {
        return Err(Error::Config("indicatrix needs at least one sample".into()));
    }
    let (lim, frame) = match ic.point {
        Some([c1, c2]) => {
            let surface = surface_for(cfg)?;
            let p = Point2::new(c1, c2);
            if !surface.contains(p) {
                return Err(Error::Config(format!("point {p:?} is outside the chart")));
            }
            let lim = metric::local_limacon(&surface, p)?;
            let frame = metric::orthonormal_frame(&surface, p)?;
            (lim, Some((surface, p, frame)))
        }
        None => {
            if !(ic.c > 0.0 && ic.a >= 0.0 && ic.c.is_finite() && ic.a.is_finite()) {
                return Err(Error::Config(format!(
                    "limacon needs c > 0 and a >= 0, got c = {}, a = {}",
                    ic.c, ic.a
                )));
            }
            (Limacon::new(ic.c, ic.a), None)
        }
    };
    if !lim.is_strongly_convex() {
        return Err(Error::NonConvexLimacon { c: lim.c, a: lim.a });
    }

    #[derive(Serialize)]
    struct Row {
        theta: f64,
        #[serde(rename = "X")]
        x: f64,
        #[serde(rename = "Y")]
        y: f64,
        #[serde(rename = "F_okubo")]
        f_okubo: f64,
        #[serde(rename = "F_slope")]
        f_slope: Option<f64>,
    }
    let mut rows = Vec::with_capacity(ic.samples);
    let mut worst: f64 = 0.0;
    for k in 0..ic.samples {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / ic.samples as f64;
        let (x, y) = lim.point(theta);
        let f_okubo = lim.okubo_norm(x, y)?;
        worst = worst.max((f_okubo - 1.0).abs());
        let f_slope = match &frame {
            Some((surface, p, (e1, e2))) => {
                let f = metric::slope_norm(surface, *p, x * *e1 + y * *e2)?;
                worst = worst.max((f - 1.0).abs());
                Some(f)
            }
            None => None,
        };
        rows.push(Row {
            theta,
            x,
            y,
            f_okubo,
            f_slope,
        });
    }
    let body = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                c: f64,
                a: f64,
                max_deviation: f64,
                samples: Vec<Row>,
            }
            export::to_json(&Doc {
                c: lim.c,
                a: lim.a,
                max_deviation: worst,
                samples: rows,
            })?
        }
        Format::Csv => {
            let mut t = CsvTable::new(&["theta", "X", "Y", "F_okubo", "F_slope"])?;
            for r in &rows {
                t.row([
                    fmt_f64(r.theta),
                    fmt_f64(r.x),
                    fmt_f64(r.y),
                    fmt_f64(r.f_okubo),
                    r.f_slope.map(fmt_f64).unwrap_or_default(),
                ])?;
            }
            t.finish()?
        }
    };
    let passed = worst <= 1e-12;
    Ok(Outcome {
        body,
        summary: format!(
            "limacon c = {}, a = {}: max |F - 1| = {worst:e}",
            lim.c, lim.a
        ),
        passed,
    })
}

/// `n` random subregions of `region`, reproducible from `seed`.
pub fn random_subregions(region: &Region, n: usize, seed: u64) -> Vec<Region> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sorted_pair = |lo: f64, hi: f64| {
        let a = lo + (hi - lo) * rng.gen::<f64>();
        let b = lo + (hi - lo) * rng.gen::<f64>();
        (a.min(b), a.max(b))
    };
    (0..n)
        .map(|_| match *region {
            Region::Rect { c1, c2 } => {
                Region::rect(sorted_pair(c1[0], c1[1]), sorted_pair(c2[0], c2[1]))
            }
            Region::Disk { center, radius } => {
                // centre within R/2 of the original, radius at most R/2
                let (r, t) = sorted_pair(0.0, 1.0);
                let (angle, _) = sorted_pair(0.0, 2.0 * std::f64::consts::PI);
                let rc = 0.5 * radius * r;
                Region::disk(
                    (center[0] + rc * angle.cos(), center[1] + rc * angle.sin()),
                    0.5 * radius * t,
                )
            }
        })
        .collect()
}

#[derive(Serialize)]
struct AreaDocument<'a> {
    surface: &'a str,
    #[serde(flatten)]
    report: AreaReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    subregions: Vec<AreaReport>,
}

pub fn area(cfg: &RunConfig, format: Format) -> Result<Outcome> {
    let surface = surface_for(cfg)?;
    let region = region_in(&surface, cfg.area.region)?;
    if !(cfg.area.slack >= 0.0) {
        return Err(Error::Config("area slack must be non-negative".into()));
    }
    let main = measures::area_compare_with_slack(&surface, &region, cfg.area.slack)?;
    let subs = random_subregions(&region, cfg.area.random_subregions, cfg.seed)
        .iter()
        .map(|r| measures::area_compare_with_slack(&surface, r, cfg.area.slack))
        .collect::<Result<Vec<_>>>()?;
    let failures = std::iter::once(&main)
        .chain(&subs)
        .filter(|r| !r.verdicts.all())
        .count();
    let body = match format {
        Format::Json => export::to_json(&AreaDocument {
            surface: surface.name(),
            report: main,
            subregions: subs.clone(),
        })?,
        Format::Csv => {
            let mut all = vec![main];
            all.extend(subs.iter().copied());
            export::area_csv(&all)?
        }
    };
    Ok(Outcome {
        body,
        summary: format!(
            "alpha = {}, BH = {}, HT = {}; {} of {} regions fail a comparison verdict",
            main.area_alpha,
            main.area_bh,
            main.area_ht,
            failures,
            1 + subs.len()
        ),
        passed: failures == 0,
    })
}

pub fn volcoeff(cfg: &RunConfig, format: Format) -> Result<Outcome> {
    let grid = cfg.volcoeff.grid()?;
    let rows = grid
        .iter()
        .map(|&b| measures::volume_coefficients(b))
        .collect::<Result<Vec<_>>>()?;
    let monotone = measures::monotonicity_holds(&rows);
    let max_dev = rows.iter().fold(0.0f64, |acc, r| {
        acc.max((r.f - r.f_quad.unwrap_or(f64::NAN)).abs())
            .max((r.g - r.g_quad.unwrap_or(f64::NAN)).abs())
    });
    let body = match format {
        Format::Csv => export::volcoeff_csv(&rows, monotone)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                rows: &'a [measures::VolumeCoefficients],
                monotonicity: &'static str,
                max_quad_deviation: f64,
            }
            export::to_json(&Doc {
                rows: &rows,
                monotonicity: if monotone { "pass" } else { "fail" },
                max_quad_deviation: max_dev,
            })?
        }
    };
    Ok(Outcome {
        body,
        summary: format!(
            "{} rows, monotonicity {}, max |closed - quadrature| = {max_dev:e}",
            rows.len(),
            if monotone { "pass" } else { "fail" }
        ),
        passed: monotone && max_dev <= 1e-8,
    })
}
