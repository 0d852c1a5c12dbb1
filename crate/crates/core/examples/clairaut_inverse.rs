//! Recover unit velocities from a prescribed Clairaut constant.

use slopegeo::geodesics::{clairaut_value, velocity_from_clairaut, Branch, GeodesicState};
use slopegeo::surfaces::lookup;

fn main() -> slopegeo::Result<()> {
    let surface = lookup("revolution-sqrt").expect("gallery entry");
    let rev = surface.as_revolution().expect("surface of revolution");
    let u = 1.25;
    let m = rev.m(u);
    for frac in [-0.8, -0.25, 0.0, 0.5, 1.0] {
        for branch in [Branch::DuNegative, Branch::DuPositive] {
            let y = velocity_from_clairaut(rev, u, frac * m, branch)?;
            let back = clairaut_value(rev, &GeodesicState::new(u, 0.0, y.d1, y.d2))?;
            println!(
                "nu={:+.6}  {branch:?}: (du, dv)=({:+.9}, {:+.9})  check={:+.3e}",
                frac * m,
                y.d1,
                y.d2,
                back - frac * m
            );
        }
    }
    Ok(())
}
