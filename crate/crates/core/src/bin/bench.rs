use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use geodesic_cw::bench::{fit_scaling, run_benchmark, write_report, BenchConfig};
use geodesic_cw::Algorithm;

/// Times the four shortest-path algorithms on random polygons and writes
/// aggregate and per-pair CSV files.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    #[arg(long, value_delimiter = ',', default_value = "16,32,64,128,256,512")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    polygons_per_size: usize,
    #[arg(long, default_value_t = 200)]
    max_pairs: usize,
    #[arg(long, default_value_t = 5)]
    repeats_min: usize,
    #[arg(long, default_value_t = 20)]
    repeats_max: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    oracle_max_n: usize,
    #[arg(long, default_value_t = 128)]
    delaunay_max_n: usize,
    /// Comma-separated subset of lee_preparata, delaunay, trapezoid, makestep.
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<Algorithm>>,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = BenchConfig {
        sizes: args.sizes,
        polygons_per_size: args.polygons_per_size,
        max_pairs: args.max_pairs,
        repeats_min: args.repeats_min,
        repeats_max: args.repeats_max,
        seed: args.seed,
        oracle_max_n: args.oracle_max_n,
        delaunay_max_n: args.delaunay_max_n,
        algorithms: args.algorithms.unwrap_or_else(|| Algorithm::ALL.to_vec()),
        repro_dir: args.out.clone(),
    };
    let report = match run_benchmark(&cfg, |n| eprintln!("n = {n}")) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("bench: {e}");
            return ExitCode::FAILURE;
        }
    };
    let (agg, detail) = match write_report(&report, &args.out) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("bench: writing results: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("wrote {} and {}", agg.display(), detail.display());
    for alg in &cfg.algorithms {
        let rows: Vec<_> = report
            .aggregate
            .iter()
            .filter(|r| r.algorithm == *alg)
            .cloned()
            .collect();
        match fit_scaling(&rows, 32..=usize::MAX) {
            Ok(fits) => {
                for f in fits {
                    println!(
                        "{:<14} slope {:.3}  residual {:.3}",
                        alg.name(),
                        f.fit.slope,
                        f.fit.residual
                    );
                }
            }
            Err(e) => println!("{:<14} no fit: {e}", alg.name()),
        }
    }
    ExitCode::SUCCESS
}
