//! Geodesic shortest paths inside simple polygons.
//!
//! Four algorithms compute the same Euclidean shortest path between two
//! interior points:
//!
//! * [`lee_preparata`]: funnel walk over a stored triangulation, linear space.
//! * [`delaunay_cw`]: walks the constrained Delaunay triangulation without
//!   storing it, constant workspace, cubic time.
//! * [`trapezoid_cw`]: walks the vertical trapezoidal decomposition without
//!   storing it, constant workspace, quadratic time.
//! * [`makestep_cw`]: shrinks a cone-bounded subpolygon around the target,
//!   constant workspace, quadratic time.
//!
//! The constant-workspace algorithms treat the [`Polygon`] as read-only input
//! and report their mutable state to a [`WorkspaceMeter`].

pub mod bench;
mod cone;
pub mod delaunay_cw;
pub mod fixtures;
pub mod geom;
pub mod lee_preparata;
pub mod makestep_cw;
pub mod oracle;
pub mod polygen;
pub mod polygon;
pub mod trapezoid_cw;
pub mod triangulate;
pub mod workspace;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

pub use geom::{Orientation, Point};
pub use polygon::{BoundaryPoint, EdgeRef, Location, PathQuery, Polygon};
pub use workspace::WorkspaceMeter;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate polygon: {0}")]
    Degenerate(String),
    #[error("polygon is not simple: {0}")]
    NotSimple(String),
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("general position violation: {0}")]
    GeneralPosition(String),
    #[error("cocircular degeneracy")]
    CocircularDegeneracy,
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("no termination within the step budget")]
    NoTermination,
    #[error("algorithms disagree; reproduction bundle written to {}", .0.display())]
    Disagreement(std::path::PathBuf),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    LeePreparata,
    Delaunay,
    Trapezoid,
    MakeStep,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::LeePreparata,
        Algorithm::Delaunay,
        Algorithm::Trapezoid,
        Algorithm::MakeStep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::LeePreparata => "lee_preparata",
            Algorithm::Delaunay => "delaunay",
            Algorithm::Trapezoid => "trapezoid",
            Algorithm::MakeStep => "makestep",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown algorithm {s:?}")))
    }
}

/// Geodesic from `q.s` to `q.t` with the chosen algorithm.
///
/// Lee–Preparata triangulates on the fly here; use
/// [`lee_preparata::lp_shortest_path`] to reuse a triangulation.
pub fn shortest_path(alg: Algorithm, poly: &Polygon, q: PathQuery) -> Result<Vec<Point>, Error> {
    match alg {
        Algorithm::LeePreparata => {
            let tr = triangulate::triangulate_ear_clipping(poly)?;
            lee_preparata::lp_shortest_path(poly, &tr, q)
        }
        _ => run_metered(alg, poly, None, q, &WorkspaceMeter::new()),
    }
}

fn run_metered(
    alg: Algorithm,
    poly: &Polygon,
    tr: Option<&triangulate::Triangulation>,
    q: PathQuery,
    meter: &WorkspaceMeter,
) -> Result<Vec<Point>, Error> {
    match alg {
        Algorithm::LeePreparata => match tr {
            Some(tr) => lee_preparata::lp_shortest_path_metered(poly, tr, q, meter),
            None => {
                let tr = triangulate::triangulate_ear_clipping(poly)?;
                lee_preparata::lp_shortest_path_metered(poly, &tr, q, meter)
            }
        },
        Algorithm::Delaunay => delaunay_cw::delaunay_shortest_path_metered(poly, q, meter),
        Algorithm::Trapezoid => trapezoid_cw::trapezoid_shortest_path_metered(poly, q, meter),
        Algorithm::MakeStep => makestep_cw::makestep_shortest_path_metered(poly, q, meter),
    }
}

/// Result of [`metered_run`].
#[derive(Clone, Debug)]
pub struct MeteredRun {
    pub path: Vec<Point>,
    pub peak_words: usize,
    pub cpu_time: Duration,
}

/// Runs one query while counting peak workspace words and processor time.
///
/// For Lee–Preparata the triangulation in `tr` is treated as input and is
/// neither timed nor charged; when `tr` is `None` it is built before the
/// clock starts.
pub fn metered_run(
    alg: Algorithm,
    poly: &Polygon,
    tr: Option<&triangulate::Triangulation>,
    q: PathQuery,
) -> Result<MeteredRun, Error> {
    let owned;
    let tr = match (alg, tr) {
        (Algorithm::LeePreparata, None) => {
            owned = triangulate::triangulate_ear_clipping(poly)?;
            Some(&owned)
        }
        (_, tr) => tr,
    };
    let meter = WorkspaceMeter::new();
    let start = workspace::process_cpu_time();
    let path = run_metered(alg, poly, tr, q, &meter)?;
    let cpu_time = workspace::process_cpu_time().saturating_sub(start);
    Ok(MeteredRun {
        path,
        peak_words: meter.peak(),
        cpu_time,
    })
}
