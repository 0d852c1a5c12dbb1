//! Closed-form spray against the general (alpha, beta) formula.

use slopegeo::spray::{ab_correction_terms, slope_spray_closed, slope_spray_generic};
use slopegeo::surfaces::lookup;
use slopegeo::{Point2, Vec2};

fn main() -> slopegeo::Result<()> {
    let surface = lookup("revolution-sqrt").expect("gallery entry");
    let rev = surface.as_revolution().expect("surface of revolution");
    let p = Point2::new(1.5, 0.0);
    for y in [
        Vec2::new(0.2, 0.3),
        Vec2::new(-0.4, 0.1),
        Vec2::new(0.0, 1.0),
    ] {
        let closed = slope_spray_closed(rev, p, y)?;
        let generic = slope_spray_generic(rev, p, y)?;
        let t = ab_correction_terms(rev, p, y)?;
        println!(
            "y={:?}  closed=({:+.12e}, {:+.12e})  generic=({:+.12e}, {:+.12e})  Q={:.6} Theta={:.6} Psi={:.6}",
            y.as_array(),
            closed.0,
            closed.1,
            generic.0,
            generic.1,
            t.q,
            t.theta,
            t.psi
        );
    }
    Ok(())
}
