//! The limacon indicatrix at a point of a graph and its Okubo norm.

use std::f64::consts::PI;

use slopegeo::metric::{local_limacon, orthonormal_frame, slope_norm};
use slopegeo::surfaces::lookup;
use slopegeo::Point2;

fn main() -> slopegeo::Result<()> {
    let surface = lookup("gaussian-bump").expect("gallery entry");
    let p = Point2::new(0.7, 0.1);
    let lim = local_limacon(&surface, p)?;
    let (e1, e2) = orthonormal_frame(&surface, p)?;
    println!("limacon r = {} + {:.6} cos(theta)", lim.c, lim.a);
    for k in 0..8 {
        let theta = 2.0 * PI * k as f64 / 8.0;
        let (x, y) = lim.point(theta);
        let okubo = lim.okubo_norm(x, y)?;
        let slope = slope_norm(&surface, p, x * e1 + y * e2)?;
        println!("theta={theta:.4}  (X, Y)=({x:+.6}, {y:+.6})  okubo={okubo:.15}  F={slope:.15}");
    }
    Ok(())
}
