//! Fits runtime exponents to an aggregate CSV written by the bench binary.
//!
//! ```text
//! cargo run --release --bin bench -- --out results
//! cargo run --example fit_scaling -- results/aggregate.csv
//! ```

use std::error::Error;
use std::path::PathBuf;

use geodesic_cw::bench::{fit_scaling_csv, AGGREGATE_FILE};

fn main() -> Result<(), Box<dyn Error>> {
    let path = std::env::args().nth(1).map_or_else(
        || PathBuf::from("results").join(AGGREGATE_FILE),
        PathBuf::from,
    );
    for f in fit_scaling_csv(&path)? {
        println!(
            "{:<14} time ~ n^{:.2}  (residual {:.3}, sizes {:?})",
            f.algorithm.name(),
            f.fit.slope,
            f.fit.residual,
            f.sizes
        );
    }
    Ok(())
}
