//! Unit-speed geodesics on surfaces of revolution.
//!
//! The state is `(u, v, u̇, v̇)` in arclength. Slope-metric runs use the
//! closed-form spray and conserve `ν_F = ρ m² v̇`; Riemannian runs use the
//! Levi-Civita spray and conserve `ν = m² v̇`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Vec2};
use crate::metric::ADMISSIBLE_LIMIT;
use crate::spray;
use crate::surfaces::SurfaceOfRevolution;

/// One sample of a geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicState {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub s: f64,
}

impl GeodesicState {
    pub fn new(u: f64, v: f64, du: f64, dv: f64) -> Self {
        Self {
            u,
            v,
            du,
            dv,
            s: 0.0,
        }
    }

    pub fn point(&self) -> Point2 {
        Point2::new(self.u, self.v)
    }

    pub fn velocity(&self) -> Vec2 {
        Vec2::new(self.du, self.dv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Rk4Fixed,
    Rk45Adaptive,
}

/// Which spray drives the integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SprayModel {
    #[default]
    Slope,
    Riemannian,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegratorOptions {
    pub method: Method,
    /// Fixed step for RK4, initial step for the adaptive method.
    pub step: f64,
    pub tol: f64,
    pub max_steps: usize,
    /// Accepted steps between rescalings to unit speed; 0 disables them.
    pub renormalize_every: usize,
    /// Keep every `record_stride`-th accepted step (the last one is always kept).
    pub record_stride: usize,
    pub model: SprayModel,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            method: Method::Rk45Adaptive,
            step: 1e-3,
            tol: 1e-10,
            max_steps: 10_000_000,
            renormalize_every: 100,
            record_stride: 1,
            model: SprayModel::Slope,
        }
    }
}

impl IntegratorOptions {
    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::Config(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_steps == 0 || self.record_stride == 0 {
            return Err(Error::Config(
                "max_steps and record_stride must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitReason {
    Completed,
    DomainExit,
    StepFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TraceStats {
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub renormalizations: usize,
    /// Largest `|ν(s) - ν(0)|` over every accepted step.
    pub max_clairaut_drift: f64,
    /// Largest `|speed - 1|` seen before a rescaling (or at any step when off).
    pub max_speed_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicTrace {
    pub model: SprayModel,
    pub states: Vec<GeodesicState>,
    /// `ν_F` at each recorded state.
    pub clairaut: Vec<f64>,
    /// `m² v̇` at each recorded state.
    pub clairaut_riem: Vec<f64>,
    pub exit_reason: ExitReason,
    pub stats: TraceStats,
}

impl GeodesicTrace {
    pub fn last(&self) -> &GeodesicState {
        self.states
            .last()
            .expect("a trace always holds its initial state")
    }

    pub fn length(&self) -> f64 {
        self.last().s
    }

    /// Drift of the quantity conserved by the trace's own model.
    pub fn conserved_drift(&self) -> f64 {
        let values = match self.model {
            SprayModel::Slope => &self.clairaut,
            SprayModel::Riemannian => &self.clairaut_riem,
        };
        let first = values[0];
        values.iter().fold(0.0, |acc, v| acc.max((v - first).abs()))
    }
}

fn alpha_beta_rev(surface: &SurfaceOfRevolution, u: f64, du: f64, dv: f64) -> (f64, f64) {
    let m = surface.m(u);
    let d1 = surface.dm(u);
    (((1.0 + d1 * d1) * du * du + m * m * dv * dv).sqrt(), du)
}

fn admissible(surface: &SurfaceOfRevolution, u: f64) -> Result<()> {
    let b = surface.b_at(u);
    if b < ADMISSIBLE_LIMIT {
        Ok(())
    } else {
        Err(Error::ConvexityViolation { b })
    }
}

/// Speed of `(du, dv)` at `u`: `F` for the slope model, `α` for the Riemannian one.
pub fn speed(surface: &SurfaceOfRevolution, u: f64, du: f64, dv: f64, model: SprayModel) -> f64 {
    let (alpha, beta) = alpha_beta_rev(surface, u, du, dv);
    match model {
        SprayModel::Slope => alpha * alpha / (alpha - beta),
        SprayModel::Riemannian => alpha,
    }
}

/// Rescale `y` to unit slope norm. Direction is preserved.
pub fn unit_normalize(surface: &SurfaceOfRevolution, p: Point2, y: Vec2) -> Result<Vec2> {
    surface.check_u(p.c1, p.c2)?;
    if y.is_zero() {
        return Err(Error::ZeroVector);
    }
    admissible(surface, p.c1)?;
    let f = speed(surface, p.c1, y.d1, y.d2, SprayModel::Slope);
    Ok((1.0 / f) * y)
}

/// `ν_F = ρ m² v̇`, with `ρ = α²(α - 2β)/(α - β)³`.
pub fn clairaut_value(surface: &SurfaceOfRevolution, state: &GeodesicState) -> Result<f64> {
    surface.check_u(state.u, state.v)?;
    admissible(surface, state.u)?;
    if state.du == 0.0 && state.dv == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(clairaut_unchecked(surface, state.u, state.du, state.dv))
}

fn clairaut_unchecked(surface: &SurfaceOfRevolution, u: f64, du: f64, dv: f64) -> f64 {
    let (alpha, beta) = alpha_beta_rev(surface, u, du, dv);
    let w = alpha - beta;
    let rho = alpha * alpha * (alpha - 2.0 * beta) / (w * w * w);
    let m = surface.m(u);
    rho * m * m * dv
}

/// Riemannian Clairaut constant `m² v̇`.
pub fn riemannian_clairaut(surface: &SurfaceOfRevolution, state: &GeodesicState) -> f64 {
    let m = surface.m(state.u);
    m * m * state.dv
}

/// `(ü, v̈)` at a state, for the chosen model.
pub fn geodesic_acceleration(
    surface: &SurfaceOfRevolution,
    state: &GeodesicState,
    model: SprayModel,
) -> Result<(f64, f64)> {
    surface.check_u(state.u, state.v)?;
    if model == SprayModel::Slope {
        admissible(surface, state.u)?;
    }
    let acc = match model {
        SprayModel::Slope => spray::slope_acceleration(surface, state.u, state.du, state.dv),
        SprayModel::Riemannian => {
            spray::riemannian_acceleration(surface, state.u, state.du, state.dv)
        }
    };
    acc.ok_or(Error::DegenerateDenominator { value: 0.0 })
}

/// Unit vector making angle `theta` with the downhill meridian in the
/// orthonormal frame `e₁ = -∂_u/√(1+m'²)`, `e₂ = ∂_v/m`.
pub fn direction_from_angle(
    surface: &SurfaceOfRevolution,
    u: f64,
    theta: f64,
    model: SprayModel,
) -> Result<Vec2> {
    surface.check_u(u, 0.0)?;
    if model == SprayModel::Slope {
        admissible(surface, u)?;
    }
    let (sin, cos) = theta.sin_cos();
    let y = Vec2::new(
        -cos / (1.0 + surface.dm(u).powi(2)).sqrt(),
        sin / surface.m(u),
    );
    let f = speed(surface, u, y.d1, y.d2, model);
    Ok((1.0 / f) * y)
}

/// Which sign of `u̇` to select in [`velocity_from_clairaut`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    DuPositive,
    DuNegative,
}

/// Unit velocity at `u` with prescribed `ν_F` on the requested branch.
///
/// Along each half of the unit circle `ν_F` is monotone in the frame angle,
/// running between `-m(u)` and `m(u)`, so a bracketing bisection on the angle
/// suffices. `|ν_F| = m(u)` returns the parallel-tangent vector.
pub fn velocity_from_clairaut(
    surface: &SurfaceOfRevolution,
    u: f64,
    nu: f64,
    branch: Branch,
) -> Result<Vec2> {
    surface.check_u(u, 0.0)?;
    admissible(surface, u)?;
    let m = surface.m(u);
    if !nu.is_finite() || nu.abs() > m * (1.0 + 1e-12) {
        return Err(Error::Unattainable { u, nu, max: m });
    }
    if nu.abs() >= m {
        return Ok(Vec2::new(0.0, nu.signum() / m));
    }
    // du < 0 on θ ∈ [-π/2, π/2]; du > 0 on θ ∈ [π/2, 3π/2]
    let (lo, hi) = match branch {
        Branch::DuNegative => (-FRAC_PI_2, FRAC_PI_2),
        Branch::DuPositive => (FRAC_PI_2, 3.0 * FRAC_PI_2),
    };
    let nu_at = |theta: f64| {
        let y = direction_from_angle(surface, u, theta, SprayModel::Slope).expect("checked above");
        clairaut_unchecked(surface, u, y.d1, y.d2)
    };

    const PROBES: usize = 64;
    let mut prev = nu_at(lo);
    let increasing = nu_at(hi) > prev;
    for k in 1..=PROBES {
        let next = nu_at(lo + (hi - lo) * k as f64 / PROBES as f64);
        if (next > prev) != increasing && (next - prev).abs() > 1e-14 * m {
            return Err(Error::AmbiguousBranch { nu });
        }
        prev = next;
    }

    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if (nu_at(mid) < nu) == increasing {
            a = mid;
        } else {
            b = mid;
        }
    }
    let theta = 0.5 * (a + b);
    direction_from_angle(surface, u, theta, SprayModel::Slope)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurningPointReport {
    pub verdict: Verdict,
    /// `min m(u(s)) - m(u(0))` over interior samples.
    pub min_margin: f64,
    pub samples: usize,
}

/// For a parallel-tangent start, every later sample must stay at radius at
/// least `m(u(0))` (up to `1e-9`).
pub fn turning_point_check(
    surface: &SurfaceOfRevolution,
    trace: &GeodesicTrace,
) -> TurningPointReport {
    let first = trace.states[0];
    let parallel =
        first.dv != 0.0 && first.du.abs() <= 1e-12 * (first.dv.abs() * surface.m(first.u));
    if !parallel || trace.states.len() < 2 {
        return TurningPointReport {
            verdict: Verdict::NotApplicable,
            min_margin: f64::NAN,
            samples: 0,
        };
    }
    let m0 = surface.m(first.u);
    let interior = &trace.states[1..];
    let min_margin = interior
        .iter()
        .map(|st| surface.m(st.u) - m0)
        .fold(f64::INFINITY, f64::min);
    TurningPointReport {
        verdict: if min_margin > -1e-9 {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        min_margin,
        samples: interior.len(),
    }
}

type State4 = [f64; 4];

enum RhsError {
    Outside,
    Degenerate,
}

struct System<'a> {
    surface: &'a SurfaceOfRevolution,
    model: SprayModel,
}

impl System<'_> {
    fn rhs(&self, y: &State4) -> std::result::Result<State4, RhsError> {
        let [u, _, du, dv] = *y;
        if !self.surface.contains_u(u) {
            return Err(RhsError::Outside);
        }
        let acc = match self.model {
            SprayModel::Slope => spray::slope_acceleration(self.surface, u, du, dv),
            SprayModel::Riemannian => spray::riemannian_acceleration(self.surface, u, du, dv),
        };
        let (ddu, ddv) = acc.ok_or(RhsError::Degenerate)?;
        Ok([du, dv, ddu, ddv])
    }
}

fn axpy(y: &State4, h: f64, terms: &[(f64, &State4)]) -> State4 {
    let mut out = *y;
    for i in 0..4 {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        out[i] += h * acc;
    }
    out
}

fn rk4_step(sys: &System, y: &State4, h: f64) -> std::result::Result<State4, RhsError> {
    let k1 = sys.rhs(y)?;
    let k2 = sys.rhs(&axpy(y, 0.5 * h, &[(1.0, &k1)]))?;
    let k3 = sys.rhs(&axpy(y, 0.5 * h, &[(1.0, &k2)]))?;
    let k4 = sys.rhs(&axpy(y, h, &[(1.0, &k3)]))?;
    Ok(axpy(
        y,
        h / 6.0,
        &[(1.0, &k1), (2.0, &k2), (2.0, &k3), (1.0, &k4)],
    ))
}

// Dormand–Prince 5(4) tableau; the system is autonomous so the nodes c_i are not needed
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// One Dormand–Prince step: the fifth-order solution and the embedded error.
fn dopri_step(sys: &System, y: &State4, h: f64) -> std::result::Result<(State4, State4), RhsError> {
    let k1 = sys.rhs(y)?;
    let k2 = sys.rhs(&axpy(y, h, &[(A21, &k1)]))?;
    let k3 = sys.rhs(&axpy(y, h, &[(A31, &k1), (A32, &k2)]))?;
    let k4 = sys.rhs(&axpy(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = sys.rhs(&axpy(
        y,
        h,
        &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
    ))?;
    let k6 = sys.rhs(&axpy(
        y,
        h,
        &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
    ))?;
    let y5 = axpy(
        y,
        h,
        &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
    );
    if !y5.iter().all(|x| x.is_finite()) {
        return Err(RhsError::Degenerate);
    }
    let k7 = sys.rhs(&y5)?;
    let err = axpy(
        &[0.0; 4],
        h,
        &[
            (E1, &k1),
            (E3, &k3),
            (E4, &k4),
            (E5, &k5),
            (E6, &k6),
            (E7, &k7),
        ],
    );
    Ok((y5, err))
}

/// Scaled RMS error. `v` is measured absolutely so that the accepted step
/// sequence does not depend on where the run starts in `v`.
fn error_norm(err: &State4, y0: &State4, y1: &State4, tol: f64) -> f64 {
    let mut sum = 0.0;
    for i in 0..4 {
        let scale = if i == 1 {
            tol
        } else {
            tol * (1.0 + y0[i].abs().max(y1[i].abs()))
        };
        sum += (err[i] / scale).powi(2);
    }
    (sum / 4.0).sqrt()
}

/// Integrate a unit-speed geodesic for arclength `length`.
///
/// Leaving the chart or a collapse of the adaptive step ends the run early;
/// the partial trace is returned with the corresponding [`ExitReason`].
pub fn integrate_geodesic(
    surface: &SurfaceOfRevolution,
    init: GeodesicState,
    length: f64,
    opts: &IntegratorOptions,
) -> Result<GeodesicTrace> {
    opts.validate()?;
    if !(length >= 0.0 && length.is_finite()) {
        return Err(Error::Config(format!(
            "length must be non-negative, got {length}"
        )));
    }
    surface.check_u(init.u, init.v)?;
    if init.du == 0.0 && init.dv == 0.0 {
        return Err(Error::ZeroVector);
    }
    if opts.model == SprayModel::Slope {
        admissible(surface, init.u)?;
    }
    let f0 = speed(surface, init.u, init.du, init.dv, opts.model);
    if (f0 - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnitSpeed { speed: f0 });
    }

    let sys = System {
        surface,
        model: opts.model,
    };
    let mut run = Run::new(surface, opts, init);
    let mut y: State4 = [init.u, init.v, init.du, init.dv];
    let mut s = init.s;
    let end = init.s + length;
    let mut h = opts.step.min(length.max(f64::MIN_POSITIVE));
    let mut exit = ExitReason::Completed;
    let mut steps = 0usize;

    while s < end {
        if steps >= opts.max_steps {
            exit = ExitReason::StepFailure;
            break;
        }
        steps += 1;
        let last = end - s <= h * (1.0 + 1e-12);
        let h_try = if last { end - s } else { h };
        match opts.method {
            Method::Rk4Fixed => match rk4_step(&sys, &y, h_try) {
                Ok(next) if surface.contains_u(next[0]) => {
                    y = next;
                    s = if last { end } else { s + h_try };
                    run.accept(&mut y, s);
                }
                Ok(_) | Err(RhsError::Outside) => {
                    exit = ExitReason::DomainExit;
                    break;
                }
                Err(RhsError::Degenerate) => {
                    exit = ExitReason::StepFailure;
                    break;
                }
            },
            Method::Rk45Adaptive => {
                let h_min = 1e-14 * (1.0 + s.abs());
                let outcome = dopri_step(&sys, &y, h_try);
                let (accepted, factor) = match &outcome {
                    Ok((next, err)) if surface.contains_u(next[0]) => {
                        let e = error_norm(err, &y, next, opts.tol);
                        if e <= 1.0 {
                            let grow = if e == 0.0 {
                                5.0
                            } else {
                                (0.9 * e.powf(-0.2)).clamp(0.2, 5.0)
                            };
                            (Some(*next), grow)
                        } else {
                            (None, (0.9 * e.powf(-0.2)).clamp(0.1, 0.9))
                        }
                    }
                    _ => (None, 0.5),
                };
                match accepted {
                    Some(next) => {
                        y = next;
                        s = if last { end } else { s + h_try };
                        run.accept(&mut y, s);
                        if !last {
                            h = h_try * factor;
                        }
                    }
                    None => {
                        run.stats.rejected_steps += 1;
                        h = h_try * factor;
                        if h < h_min {
                            exit = match outcome {
                                Err(RhsError::Outside) => ExitReason::DomainExit,
                                Ok((next, _)) if !surface.contains_u(next[0]) => {
                                    ExitReason::DomainExit
                                }
                                _ => ExitReason::StepFailure,
                            };
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(run.finish(exit))
}

/// Bookkeeping shared by both steppers.
struct Run<'a> {
    surface: &'a SurfaceOfRevolution,
    opts: &'a IntegratorOptions,
    trace: GeodesicTrace,
    nu0: f64,
    since_renorm: usize,
    since_record: usize,
    pending: Option<GeodesicState>,
    stats: TraceStats,
}

impl<'a> Run<'a> {
    fn new(
        surface: &'a SurfaceOfRevolution,
        opts: &'a IntegratorOptions,
        init: GeodesicState,
    ) -> Self {
        let mut run = Self {
            surface,
            opts,
            trace: GeodesicTrace {
                model: opts.model,
                states: Vec::new(),
                clairaut: Vec::new(),
                clairaut_riem: Vec::new(),
                exit_reason: ExitReason::Completed,
                stats: TraceStats::default(),
            },
            nu0: 0.0,
            since_renorm: 0,
            since_record: 0,
            pending: None,
            stats: TraceStats::default(),
        };
        run.nu0 = run.conserved(&init);
        run.record(init);
        run
    }

    fn conserved(&self, st: &GeodesicState) -> f64 {
        match self.opts.model {
            SprayModel::Slope => clairaut_unchecked(self.surface, st.u, st.du, st.dv),
            SprayModel::Riemannian => riemannian_clairaut(self.surface, st),
        }
    }

    fn record(&mut self, st: GeodesicState) {
        self.trace
            .clairaut
            .push(clairaut_unchecked(self.surface, st.u, st.du, st.dv));
        self.trace
            .clairaut_riem
            .push(riemannian_clairaut(self.surface, &st));
        self.trace.states.push(st);
    }

    fn accept(&mut self, y: &mut State4, s: f64) {
        self.stats.accepted_steps += 1;
        let f = speed(self.surface, y[0], y[2], y[3], self.opts.model);
        self.stats.max_speed_drift = self.stats.max_speed_drift.max((f - 1.0).abs());
        self.since_renorm += 1;
        if self.opts.renormalize_every > 0 && self.since_renorm >= self.opts.renormalize_every {
            y[2] /= f;
            y[3] /= f;
            self.since_renorm = 0;
            self.stats.renormalizations += 1;
        }
        let st = GeodesicState {
            u: y[0],
            v: y[1],
            du: y[2],
            dv: y[3],
            s,
        };
        let drift = (self.conserved(&st) - self.nu0).abs();
        self.stats.max_clairaut_drift = self.stats.max_clairaut_drift.max(drift);
        self.since_record += 1;
        if self.since_record >= self.opts.record_stride {
            self.since_record = 0;
            self.pending = None;
            self.record(st);
        } else {
            self.pending = Some(st);
        }
    }

    fn finish(mut self, exit: ExitReason) -> GeodesicTrace {
        if let Some(st) = self.pending.take() {
            self.record(st);
        }
        self.trace.exit_reason = exit;
        self.trace.stats = self.stats;
        self.trace
    }
}

/// Parallel-tangent unit state at `(u, v)`, with `v̇` of the given sign.
pub fn parallel_start(
    surface: &SurfaceOfRevolution,
    u: f64,
    v: f64,
    sign: f64,
) -> Result<GeodesicState> {
    surface.check_u(u, v)?;
    let dv = if sign < 0.0 { -1.0 } else { 1.0 } / surface.m(u);
    Ok(GeodesicState::new(u, v, 0.0, dv))
}

/// Meridian unit state at `(u, v)`; `downhill` selects `u̇ < 0`.
pub fn meridian_start(
    surface: &SurfaceOfRevolution,
    u: f64,
    v: f64,
    downhill: bool,
) -> Result<GeodesicState> {
    let theta = if downhill { 0.0 } else { PI };
    let y = direction_from_angle(surface, u, theta, SprayModel::Slope)?;
    Ok(GeodesicState::new(u, v, y.d1, 0.0))
}
