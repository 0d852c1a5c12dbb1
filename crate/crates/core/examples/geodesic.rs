//! A parallel-tangent geodesic on m(u) = sqrt(6u^2 - 1): it never stays on
//! the parallel, and its Clairaut constant stays at m(u0).

use slopegeo::geodesics::{
    integrate_geodesic, parallel_start, turning_point_check, IntegratorOptions,
};
use slopegeo::surfaces::lookup;

fn main() -> slopegeo::Result<()> {
    let surface = lookup("revolution-sqrt").expect("gallery entry");
    let rev = surface.as_revolution().expect("surface of revolution");
    let init = parallel_start(rev, 1.0, 0.0, 1.0)?;
    let trace = integrate_geodesic(rev, init, 10.0, &IntegratorOptions::default())?;
    for st in trace.states.iter().step_by(trace.states.len() / 10 + 1) {
        println!("s={:7.3}  u={:.9}  v={:+.9}", st.s, st.u, st.v);
    }
    println!("exit: {:?}", trace.exit_reason);
    println!(
        "nu_F(0) = {:.15}  m(u0) = {:.15}",
        trace.clairaut[0],
        rev.m(1.0)
    );
    println!("max drift = {:e}", trace.stats.max_clairaut_drift);
    println!("turning point: {:?}", turning_point_check(rev, &trace));
    Ok(())
}
