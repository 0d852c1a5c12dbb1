//! Volume coefficients f, g, h from closed forms and from quadrature.

use slopegeo::measures::volume_coefficients;

fn main() -> slopegeo::Result<()> {
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>10}",
        "b", "f", "g", "h", "|dg|"
    );
    for k in (0..=49).step_by(7) {
        let b = k as f64 / 100.0;
        let c = volume_coefficients(b)?;
        let dg = (c.g - c.g_quad.unwrap_or(f64::NAN)).abs();
        println!("{b:5.2} {:12.9} {:12.9} {:12.9} {dg:10.2e}", c.f, c.g, c.h);
    }
    Ok(())
}
