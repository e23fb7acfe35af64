//! Walks the constrained Delaunay triangulation without storing it, printing
//! each triangle the path passes through.

use geodesic_cw::delaunay_cw::{cdt_third_vertex, trace};
use geodesic_cw::fixtures;
use geodesic_cw::{PathQuery, WorkspaceMeter};

fn main() -> Result<(), geodesic_cw::Error> {
    let poly = fixtures::staircase(3);
    let (s, t) = fixtures::staircase_query(3);

    // Every boundary edge has exactly one triangle on its interior side.
    let apex = cdt_third_vertex(&poly, 0, 1)?;
    println!("triangle on edge 0-1 has apex {apex:?}");

    let meter = WorkspaceMeter::new();
    let path = trace(&poly, PathQuery::new(s, t), &meter, |tri| {
        println!("  enter {tri:?}")
    })?;
    println!(
        "path: {} points, peak workspace {} words",
        path.len(),
        meter.peak()
    );
    Ok(())
}
