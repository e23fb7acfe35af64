//! Writes random simple polygons and their query points to a directory.
//!
//! ```text
//! cargo run --example generate_polygon -- out/ 64 1 2 3
//! ```

use std::error::Error;
use std::path::PathBuf;

use geodesic_cw::polygen::{generate_polygon, sample_query_points, write_polygon};

fn main() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "polygons".into()));
    let n: usize = args.next().map_or(Ok(32), |a| a.parse())?;
    let mut seeds: Vec<u64> = args.map(|a| a.parse()).collect::<Result<_, _>>()?;
    if seeds.is_empty() {
        seeds.push(1);
    }

    for seed in seeds {
        let poly = generate_polygon(n, seed)?;
        let qp = sample_query_points(&poly);
        let path = write_polygon(&dir, &poly, seed)?;
        let report = poly.general_position_report();
        println!(
            "{}: area {:.4}, {} query points{}, general position {}",
            path.display(),
            poly.area(),
            qp.points.len(),
            if qp.fallback {
                " (ear-clipping fallback)"
            } else {
                ""
            },
            if report.is_clean() { "ok" } else { "violated" }
        );
    }
    Ok(())
}
