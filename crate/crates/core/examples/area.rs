//! Riemannian, Busemann-Hausdorff and Holmes-Thompson areas of an annulus.

use std::f64::consts::PI;

use slopegeo::measures::area_compare;
use slopegeo::surfaces::{lookup, Region};

fn main() -> slopegeo::Result<()> {
    let surface = lookup("revolution-sqrt").expect("gallery entry");
    let report = area_compare(&surface, &Region::rect((1.0, 2.0), (0.0, 2.0 * PI)))?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
