//! Runs all four algorithms on one random polygon and checks them against
//! the visibility-graph reference.
//!
//! ```text
//! cargo run --release --example compare_algorithms -- 48 7
//! ```

use std::error::Error;

use geodesic_cw::oracle::{oracle_shortest_path, path_length};
use geodesic_cw::polygen::generate_instance;
use geodesic_cw::triangulate::triangulate_ear_clipping;
use geodesic_cw::{metered_run, Algorithm, PathQuery};

fn main() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(48), |a| a.parse())?;
    let seed: u64 = args.next().map_or(Ok(7), |a| a.parse())?;

    let inst = generate_instance(n, seed)?;
    let poly = &inst.polygon;
    let tr = triangulate_ear_clipping(poly)?;
    let q = PathQuery::new(inst.points[0], inst.points[inst.points.len() / 2]);
    let reference = oracle_shortest_path(poly, q)?;
    println!("n = {n}, seed = {seed}, s = {}, t = {}", q.s, q.t);
    println!(
        "reference: {} points, length {:.9}",
        reference.len(),
        path_length(&reference)
    );

    for alg in Algorithm::ALL {
        let run = metered_run(alg, poly, Some(&tr), q)?;
        let gap = (path_length(&run.path) - path_length(&reference)).abs();
        println!(
            "{:<14} {:>3} points  length gap {gap:.1e}  peak {:>4} words  {:>9.1?}",
            alg.name(),
            run.path.len(),
            run.peak_words,
            run.cpu_time
        );
    }
    Ok(())
}
