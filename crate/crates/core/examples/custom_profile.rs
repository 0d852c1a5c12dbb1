//! A user-supplied profile: the cone m(u) = 2u has (m')^2 = 4 > 3, so its
//! slope metric is strongly convex everywhere.

use slopegeo::geodesics::{
    direction_from_angle, integrate_geodesic, GeodesicState, IntegratorOptions, SprayModel,
};
use slopegeo::metric::{convexity_check, ConvexityOptions};
use slopegeo::surfaces::{Surface, SurfaceOfRevolution};

fn main() -> slopegeo::Result<()> {
    let cone = SurfaceOfRevolution::new("cone-2u", (0.1, 20.0), |u| 2.0 * u, |_| 2.0, |_| 0.0)?;
    let surface = Surface::from(cone.clone());
    let report = convexity_check(
        &surface,
        &surface.default_region(),
        &ConvexityOptions::default(),
    )?;
    println!(
        "b = {:.6} everywhere, convex: {}",
        report.worst_b, report.holds
    );

    let y = direction_from_angle(&cone, 3.0, 1.0, SprayModel::Slope)?;
    let init = GeodesicState::new(3.0, 0.0, y.d1, y.d2);
    let trace = integrate_geodesic(&cone, init, 4.0, &IntegratorOptions::default())?;
    let end = trace.last();
    println!(
        "end u={:.9} v={:.9}; drift {:e}",
        end.u, end.v, trace.stats.max_clairaut_drift
    );
    Ok(())
}
