//! Scan the gallery for strong convexity of the slope metric.

use slopegeo::metric::{convexity_check, ConvexityOptions};
use slopegeo::surfaces::gallery;

fn main() -> slopegeo::Result<()> {
    for surface in gallery() {
        let region = surface.default_region();
        let report = convexity_check(&surface, &region, &ConvexityOptions::default())?;
        println!(
            "{:<16} holds={:<5} sup b={:.6} at ({:.4}, {:.4})",
            surface.name(),
            report.holds,
            report.worst_b,
            report.worst_point[0],
            report.worst_point[1]
        );
    }
    Ok(())
}
