//! Locates trapezoids of the vertical decomposition and walks them toward a
//! target.
//!
//! `trapezoid_of` needs distinct vertex x-coordinates, which random polygons
//! have. The full walk shears internally when they are not distinct.

use geodesic_cw::polygen::generate_instance;
use geodesic_cw::trapezoid_cw::{trace, trapezoid_neighbors, trapezoid_of};
use geodesic_cw::{PathQuery, WorkspaceMeter};

fn main() -> Result<(), geodesic_cw::Error> {
    let inst = generate_instance(24, 3)?;
    let poly = inst.polygon;
    let (s, t) = (inst.points[0], inst.points[inst.points.len() / 2]);

    let tr = trapezoid_of(&poly, s)?;
    println!("s lies in {tr:?}");
    for (nb, wall) in trapezoid_neighbors(&poly, &tr)? {
        println!("  neighbour across x = {:.3}: {:?}", wall.x, nb.key());
    }

    let meter = WorkspaceMeter::new();
    let mut visited = 0;
    let path = trace(&poly, PathQuery::new(s, t), &meter, |tr| {
        visited += 1;
        println!("  enter x in [{:.3}, {:.3}]", tr.left_x, tr.right_x);
    })?;
    println!(
        "{visited} trapezoids entered, {} bends, peak {} words",
        path.len() - 2,
        meter.peak()
    );
    Ok(())
}
