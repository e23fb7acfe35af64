//! Prints the funnel after each diagonal of the Lee-Preparata walk.

use geodesic_cw::fixtures;
use geodesic_cw::geom::Side;
use geodesic_cw::lee_preparata::trace;
use geodesic_cw::triangulate::triangulate_ear_clipping;
use geodesic_cw::{PathQuery, WorkspaceMeter};

fn main() -> Result<(), geodesic_cw::Error> {
    let poly = fixtures::comb(4);
    let (s, t) = fixtures::comb_query(4);
    let tr = triangulate_ear_clipping(&poly)?;
    let meter = WorkspaceMeter::new();
    let mut step = 0;
    let path = trace(&poly, &tr, PathQuery::new(s, t), &meter, |f| {
        step += 1;
        println!(
            "step {step:>2}: left chain {:>2}, right chain {:>2}, concave {}",
            f.chain(Side::Left).len(),
            f.chain(Side::Right).len(),
            f.is_concave()
        );
    })?;
    println!(
        "path has {} points; peak workspace {} words",
        path.len(),
        meter.peak()
    );
    Ok(())
}
