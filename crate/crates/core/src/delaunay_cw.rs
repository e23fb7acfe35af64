//! Constant-workspace geodesics over the implicit constrained Delaunay
//! triangulation. Triangles are rebuilt on demand from their sides, so a step
//! across one diagonal costs `O(n^2)` and a query `O(n^3)`.

pub use crate::cone::VisibilityCone;
use crate::cone::{cone_walk, ConeWalk, Corridor, Portal, Step};
use crate::geom::{in_circle_unchecked, orient, point_in_triangle, Orientation, Point};
use crate::polygon::{BoundaryPoint, Location, PathQuery, Polygon};
use crate::workspace::WorkspaceMeter;
use crate::Error;

/// A triangle as counterclockwise vertex indices.
pub type Triangle = [usize; 3];

/// A chord between two polygon vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub u: usize,
    pub v: usize,
}

impl Diagonal {
    pub fn same_as(&self, other: &Diagonal) -> bool {
        (self.u, self.v) == (other.u, other.v) || (self.u, self.v) == (other.v, other.u)
    }
}

/// Number of edges properly crossed by `ab`. Always scans every edge, so a
/// triangle search costs the same whatever the candidates look like.
fn crossings(poly: &Polygon, a: Point, b: Point) -> usize {
    (0..poly.len())
        .filter(|&i| {
            let (c, d) = poly.edge(i);
            crate::geom::segments_properly_cross(a, b, c, d)
        })
        .count()
}

/// Whether the segment between vertices `u` and `w` lies inside the polygon.
fn vertices_see(poly: &Polygon, u: usize, w: usize) -> bool {
    if poly.next(u) == w || poly.next(w) == u {
        return true;
    }
    let (pu, pw) = (poly.vertex(u), poly.vertex(w));
    let (a, b) = (poly.vertex(poly.prev(u)), poly.vertex(poly.next(u)));
    let into_interior = if orient(a, pu, b) == Orientation::Left {
        orient(a, pu, pw) == Orientation::Left && orient(pu, b, pw) == Orientation::Left
    } else {
        orient(a, pu, pw) == Orientation::Left || orient(pu, b, pw) == Orientation::Left
    };
    if crossings(poly, pu, pw) > 0 || !into_interior {
        return false;
    }
    // A vertex on the open segment means the segment is not a single chord.
    !(0..poly.len()).any(|i| i != u && i != w && crate::geom::on_segment(pu, pw, poly.vertex(i)))
}

/// The apex of the constrained Delaunay triangle left of `u -> v`, or `None`
/// if `u -> v` is a polygon edge traversed clockwise.
pub fn cdt_third_vertex(poly: &Polygon, u: usize, v: usize) -> Result<Option<usize>, Error> {
    let (pu, pv) = (poly.vertex(u), poly.vertex(v));
    let mut best: Option<usize> = None;
    let mut tie = false;
    for w in 0..poly.len() {
        if w == u || w == v || orient(pu, pv, poly.vertex(w)) != Orientation::Left {
            continue;
        }
        if !(vertices_see(poly, u, w) && vertices_see(poly, v, w)) {
            continue;
        }
        let ic = best.map(|b| in_circle_unchecked(pu, pv, poly.vertex(b), poly.vertex(w)));
        if ic.is_some_and(|ic| ic < 0.0) {
            continue;
        }
        if ic == Some(0.0) {
            tie = true;
        } else {
            best = Some(w);
            tie = false;
        }
    }
    if tie {
        return Err(Error::CocircularDegeneracy);
    }
    Ok(best)
}

/// Triangle on the left of `u -> v`, rotated so it starts with `u`.
fn triangle_left_of(poly: &Polygon, u: usize, v: usize) -> Result<Triangle, Error> {
    match cdt_third_vertex(poly, u, v)? {
        Some(w) => Ok([u, v, w]),
        None => Err(Error::Internal(format!("no triangle left of ({u}, {v})"))),
    }
}

/// The side of `tri` separating it from `t` and the triangle beyond.
pub fn cdt_next_triangle_toward(
    poly: &Polygon,
    tri: Triangle,
    t: Point,
) -> Result<(Diagonal, Triangle), Error> {
    let [a, b, c] = tri.map(|i| poly.vertex(i));
    if point_in_triangle(a, b, c, t) {
        return Err(Error::Precondition(
            "target lies in the current triangle".into(),
        ));
    }
    for k in 0..3 {
        let (x, y) = (tri[k], tri[(k + 1) % 3]);
        if poly.next(x) == y {
            continue;
        }
        if poly.part_contains(
            BoundaryPoint::vertex(poly, y),
            BoundaryPoint::vertex(poly, x),
            t,
        ) {
            return Ok((Diagonal { u: x, v: y }, triangle_left_of(poly, y, x)?));
        }
    }
    Err(Error::InvariantViolation(
        "no side of the triangle separates it from the target".into(),
    ))
}

/// The triangle containing `q`, found by walking from the triangle on edge 0.
pub fn cdt_locate(poly: &Polygon, q: Point) -> Result<Triangle, Error> {
    let mut tri = triangle_left_of(poly, 0, 1)?;
    for _ in 0..poly.len() {
        let [a, b, c] = tri.map(|i| poly.vertex(i));
        if point_in_triangle(a, b, c, q) {
            return Ok(tri);
        }
        tri = cdt_next_triangle_toward(poly, tri, q)?.1;
    }
    Err(Error::GeneralPosition(
        "triangle walk did not reach the query point (degeneracy)".into(),
    ))
}

struct Cdt<'a> {
    poly: &'a Polygon,
}

impl Corridor for Cdt<'_> {
    type Cell = Triangle;

    fn locate(&self, q: Point) -> Result<Triangle, Error> {
        cdt_locate(self.poly, q)
    }

    fn cell_contains(&self, tri: &Triangle, q: Point) -> bool {
        let [a, b, c] = tri.map(|i| self.poly.vertex(i));
        point_in_triangle(a, b, c, q)
    }

    fn next_toward(&self, tri: &Triangle, t: Point) -> Result<(Portal, Portal, Triangle), Error> {
        let (d, next) = cdt_next_triangle_toward(self.poly, *tri, t)?;
        let p = |i| Portal::at_vertex(self.poly.vertex(i), i);
        Ok((p(d.v), p(d.u), next))
    }
}

fn check_query(poly: &Polygon, q: PathQuery) -> Result<(), Error> {
    for p in [q.s, q.t] {
        if poly.contains(p) != Location::Inside {
            return Err(Error::Precondition(format!(
                "{p} is not strictly inside the polygon"
            )));
        }
    }
    Ok(())
}

pub fn delaunay_shortest_path(poly: &Polygon, q: PathQuery) -> Result<Vec<Point>, Error> {
    delaunay_shortest_path_metered(poly, q, &WorkspaceMeter::new())
}

pub(crate) fn delaunay_shortest_path_metered(
    poly: &Polygon,
    q: PathQuery,
    meter: &WorkspaceMeter,
) -> Result<Vec<Point>, Error> {
    trace(poly, q, meter, |_| {})
}

/// Runs the walk, handing every triangle entered to `visit`.
pub fn trace(
    poly: &Polygon,
    q: PathQuery,
    meter: &WorkspaceMeter,
    mut visit: impl FnMut(Triangle),
) -> Result<Vec<Point>, Error> {
    check_query(poly, q)?;
    let mut path = vec![q.s];
    if q.s != q.t {
        let n = poly.len();
        let emitted = cone_walk(
            &Cdt { poly },
            q.s,
            q.t,
            4 * n * n + 64,
            meter,
            |step| match *step {
                Step::Crossed { cell, .. } | Step::Emitted { cell, .. } => visit(cell),
                Step::Done => {}
            },
        )?;
        path.extend(emitted.into_iter().map(|i| poly.vertex(i)));
        path.push(q.t);
    }
    Ok(path)
}

/// Resumes the walk from vertex `cusp` inside triangle `tri` until the
/// diagonal `target` has been crossed, or until `t` is visible when `target`
/// is `None`. Only window endpoints of the sleeve between them are wrapped
/// around. Returns the final cusp, the vertices emitted on the way, and the
/// last cone.
pub fn restricted_gift_wrap(
    poly: &Polygon,
    cusp: usize,
    tri: Triangle,
    target: Option<Diagonal>,
    t: Point,
) -> Result<(Point, Vec<Point>, VisibilityCone), Error> {
    let cdt = Cdt { poly };
    let mut walk = ConeWalk::new(&cdt, Portal::at_vertex(poly.vertex(cusp), cusp), tri, t);
    let mut emitted = Vec::new();
    for _ in 0..4 * poly.len() * poly.len() + 64 {
        match walk.step()? {
            Step::Crossed { left, right, .. } => {
                let crossed = Diagonal {
                    u: left.vertex.unwrap_or(usize::MAX),
                    v: right.vertex.unwrap_or(usize::MAX),
                };
                if target.is_some_and(|d| crossed.same_as(&d)) {
                    return Ok((walk.cusp().point, emitted, walk.cone()));
                }
            }
            Step::Emitted { vertex, .. } => emitted.push(poly.vertex(vertex)),
            Step::Done if target.is_none() => return Ok((walk.cusp().point, emitted, walk.cone())),
            Step::Done => {
                return Err(Error::Precondition(
                    "target diagonal is not on the way to t".into(),
                ))
            }
        }
    }
    Err(Error::NoTermination)
}
