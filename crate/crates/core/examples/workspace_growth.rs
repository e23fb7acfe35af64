//! Peak workspace of each algorithm as the polygon grows.
//!
//! The constant-workspace walks stay flat; the funnel grows with n.

use geodesic_cw::polygen::generate_instance;
use geodesic_cw::triangulate::triangulate_ear_clipping;
use geodesic_cw::{metered_run, Algorithm, PathQuery};

fn main() -> Result<(), geodesic_cw::Error> {
    print!("{:>6}", "n");
    for alg in Algorithm::ALL {
        print!("{:>15}", alg.name());
    }
    println!();
    for n in [16, 32, 64, 128, 256] {
        let inst = generate_instance(n, 11)?;
        let tr = triangulate_ear_clipping(&inst.polygon)?;
        let pts = &inst.points;
        print!("{n:>6}");
        for alg in Algorithm::ALL {
            if alg == Algorithm::Delaunay && n > 128 {
                print!("{:>15}", "-");
                continue;
            }
            let mut peak = 0;
            for i in 0..pts.len().min(8) {
                let q = PathQuery::new(pts[i], pts[(i + pts.len() / 2) % pts.len()]);
                peak = peak.max(metered_run(alg, &inst.polygon, Some(&tr), q)?.peak_words);
            }
            print!("{peak:>15}");
        }
        println!();
    }
    Ok(())
}
