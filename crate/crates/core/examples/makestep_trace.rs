//! Shows the cone state of MakeStep after every step.

use geodesic_cw::makestep_cw::trace;
use geodesic_cw::{fixtures, PathQuery, WorkspaceMeter};

fn main() -> Result<(), geodesic_cw::Error> {
    let poly = fixtures::staircase(2);
    let (s, t) = fixtures::staircase_query(2);
    let meter = WorkspaceMeter::new();
    let path = trace(&poly, PathQuery::new(s, t), &meter, |st| {
        println!(
            "step {:>3}: p = {} ({:?})  q1 = {}  q2 = {}  next {:?}",
            st.steps, st.p, st.p_vertex, st.q1.point, st.q2.point, st.next_side
        );
    })?;
    println!("path:");
    for p in &path {
        println!("  {p}");
    }
    println!("peak workspace {} words", meter.peak());
    Ok(())
}
