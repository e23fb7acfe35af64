//! Random simple polygons and interior query points.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{barycenter, segments_intersect, Point};
use crate::oracle::oracle_cdt;
use crate::polygon::Polygon;
use crate::triangulate::triangulate_ear_clipping;
use crate::Error;

/// A polygon with its query points.
#[derive(Clone, Debug)]
pub struct TestInstance {
    pub polygon: Polygon,
    pub points: Vec<Point>,
    pub seed: u64,
}

/// Query points and whether they came from the ear-clipping fallback.
#[derive(Clone, Debug)]
pub struct QueryPoints {
    pub points: Vec<Point>,
    pub fallback: bool,
}

/// Random simple polygon with `n` vertices in the unit square.
///
/// Uniform random points joined in random order, then untangled by 2-opt
/// moves: whenever two edges intersect, the chain between them is reversed.
pub fn generate_polygon(n: usize, seed: u64) -> Result<Polygon, Error> {
    if n < 3 {
        return Err(Error::Degenerate(format!("{n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 40));
    loop {
        let mut pts: Vec<Point> = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        pts.shuffle(&mut rng);
        untangle(&mut pts);
        // Measure-zero degeneracies (repeated or collinear points) are redrawn.
        if let Ok(poly) = Polygon::new(pts) {
            return Ok(poly);
        }
    }
}

fn untangle(pts: &mut [Point]) {
    let n = pts.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (pts[i], pts[i + 1]);
                let (c, d) = (pts[j], pts[(j + 1) % n]);
                if segments_intersect(a, b, c, d) {
                    pts[i + 1..=j].reverse();
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Barycenters of the constrained Delaunay triangles incident to each edge,
/// deduplicated by exact equality.
pub fn sample_query_points(poly: &Polygon) -> QueryPoints {
    let (triangles, fallback) = match oracle_cdt(poly) {
        Ok(t) => (t, false),
        Err(_) => match triangulate_ear_clipping(poly) {
            Ok(tr) => (tr.triangles, true),
            Err(_) => {
                return QueryPoints {
                    points: Vec::new(),
                    fallback: true,
                }
            }
        },
    };
    let mut by_edge: HashMap<(usize, usize), usize> = HashMap::new();
    for (id, t) in triangles.iter().enumerate() {
        for k in 0..3 {
            by_edge.insert((t[k], t[(k + 1) % 3]), id);
        }
    }
    let mut points: Vec<Point> = Vec::new();
    for e in 0..poly.len() {
        let Some(&id) = by_edge.get(&(e, poly.next(e))) else {
            continue;
        };
        let mut t = triangles[id];
        t.sort_unstable();
        let b = barycenter(poly.vertex(t[0]), poly.vertex(t[1]), poly.vertex(t[2]));
        if !points.contains(&b) {
            points.push(b);
        }
    }
    QueryPoints { points, fallback }
}

pub fn generate_instance(n: usize, seed: u64) -> Result<TestInstance, Error> {
    let polygon = generate_polygon(n, seed)?;
    let points = sample_query_points(&polygon).points;
    Ok(TestInstance {
        polygon,
        points,
        seed,
    })
}

pub fn instance_file_name(n: usize, seed: u64) -> String {
    format!("poly_n{n}_s{seed}.txt")
}

/// Writes the polygon under its canonical file name in `dir`.
pub fn write_polygon(dir: &Path, poly: &Polygon, seed: u64) -> Result<PathBuf, Error> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(instance_file_name(poly.len(), seed));
    std::fs::write(&path, poly.to_text())?;
    Ok(path)
}
