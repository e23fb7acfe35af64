//! Shortest path in a polygon read from a file.
//!
//! ```text
//! cargo run --example shortest_path -- polygon.txt 0.1,0.2 0.8,0.7 trapezoid
//! ```
//!
//! Without arguments the path is computed in a built-in L-shaped room.

use std::error::Error;
use std::fs::File;

use geodesic_cw::fixtures;
use geodesic_cw::oracle::path_length;
use geodesic_cw::{shortest_path, Algorithm, PathQuery, Point, Polygon};

fn parse_point(s: &str) -> Result<Point, Box<dyn Error>> {
    let (x, y) = s.split_once(',').ok_or("points are written x,y")?;
    Ok(Point::new(x.trim().parse()?, y.trim().parse()?))
}

fn main() -> Result<(), Box<dyn Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (poly, s, t, alg) = match args.as_slice() {
        [] => (
            fixtures::l_shape(),
            Point::new(3.5, 1.0),
            Point::new(1.0, 3.5),
            Algorithm::MakeStep,
        ),
        [file, s, t, rest @ ..] => {
            let alg = match rest.first() {
                Some(name) => name.parse()?,
                None => Algorithm::MakeStep,
            };
            (
                Polygon::load(File::open(file)?)?,
                parse_point(s)?,
                parse_point(t)?,
                alg,
            )
        }
        _ => return Err("usage: shortest_path [POLYGON S T [ALGORITHM]]".into()),
    };

    let path = shortest_path(alg, &poly, PathQuery::new(s, t))?;
    println!(
        "{alg}: {} points, length {:.6}",
        path.len(),
        path_length(&path)
    );
    for p in &path {
        println!("  {p}");
    }
    Ok(())
}
