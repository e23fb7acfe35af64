//! Small hand-built polygons used by tests, examples and the benchmark
//! self-checks.

use crate::geom::Point;
use crate::polygon::{BoundaryPoint, Polygon};

fn poly(pts: &[(f64, f64)]) -> Polygon {
    Polygon::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).expect("fixture is simple")
}

pub fn triangle() -> Polygon {
    poly(&[(0., 0.), (4., 1.), (1., 3.)])
}

/// Axis-aligned square `[0, 4]^2`.
pub fn square() -> Polygon {
    poly(&[(0., 0.), (4., 0.), (4., 4.), (0., 4.)])
}

pub fn convex_quad() -> Polygon {
    poly(&[(0., 0.), (4., 0.), (5., 3.), (1., 4.)])
}

/// L-shape with its single reflex vertex at `(2, 2)`.
pub fn l_shape() -> Polygon {
    poly(&[(0., 0.), (4., 0.), (4., 2.), (2., 2.), (2., 4.), (0., 4.)])
}

/// Corridor with `k` triangular teeth alternating from the top and the bottom
/// wall. A path from the left end to the right end wraps around every tip.
pub fn comb(k: usize) -> Polygon {
    let width = 2.0 * k as f64 + 2.0;
    let tip = |i: usize| 2.0 * (i as f64 + 1.0) + 0.13 * (i % 3) as f64;
    let mut pts = vec![(0.0, 0.0)];
    for i in (0..k).filter(|i| i % 2 == 1) {
        let c = tip(i);
        pts.extend([
            (c - 0.45, 0.0),
            (c, 3.1 - 0.07 * (i % 2) as f64),
            (c + 0.41, 0.0),
        ]);
    }
    pts.extend([(width, 0.0), (width, 4.0)]);
    for i in (0..k).rev().filter(|i| i % 2 == 0) {
        let c = tip(i);
        pts.extend([
            (c + 0.43, 4.0),
            (c, 0.9 + 0.05 * (i % 4) as f64),
            (c - 0.39, 4.0),
        ]);
    }
    pts.push((0.0, 4.0));
    poly(&pts)
}

/// Endpoints for a query that threads every tooth of [`comb`].
pub fn comb_query(k: usize) -> (Point, Point) {
    (Point::new(0.7, 2.0), Point::new(2.0 * k as f64 + 1.3, 2.0))
}

/// A corridor climbing `k` steps; lower-right and upper-left walls are
/// irregular staircases so no three corners line up.
pub fn staircase(k: usize) -> Polygon {
    let mut lower = vec![(0.0, 0.0)];
    let mut upper = vec![(0.0, 1.0)];
    let (mut x, mut y) = (0.0, 0.0);
    for i in 0..k {
        let run = 2.0 + 0.17 * (i % 3) as f64;
        let rise = 1.6 + 0.11 * (i % 4) as f64;
        lower.push((x + run + 1.0, y));
        lower.push((x + run + 1.0, y + rise));
        upper.push((x + run, y + 1.0));
        upper.push((x + run, y + rise + 1.0));
        x += run;
        y += rise;
    }
    lower.push((x + 3.0, y));
    upper.push((x + 3.0, y + 1.0));
    let mut pts = lower;
    pts.extend(upper.into_iter().rev());
    poly(&pts)
}

pub fn staircase_query(k: usize) -> (Point, Point) {
    let poly = staircase(k);
    let s = Point::new(0.3, 0.5);
    let end = poly.vertex(2 * k + 1);
    (s, Point::new(end.x - 0.3, end.y + 0.5))
}

/// Gift-wrapping decoy: a long excursion of the boundary between the cusp's
/// supporting vertex and the next funnel vertex contains a vertex (`u`) that
/// an unrestricted wrap would pick although it is not visible.
pub struct DecoyFixture {
    pub polygon: Polygon,
    pub s: Point,
    pub t: Point,
    /// Supporting vertex `v` of the blocked cone ray.
    pub v: usize,
    /// True next funnel vertex `w`.
    pub w: usize,
    /// The invisible decoy `u`.
    pub u: usize,
}

pub fn decoy() -> DecoyFixture {
    let polygon = poly(&[
        (-0.5, -1.0),
        (0.0, 0.0),
        (1.0, 1.0),
        (9.0, 1.3),
        (4.8, 4.2),
        (8.0, 1.6),
        (3.0, 2.0),
        (7.0, 2.0),
        (5.0, 3.5),
        (-1.0, 4.5),
    ]);
    DecoyFixture {
        polygon,
        s: Point::new(-0.45, 0.2),
        t: Point::new(6.0, 2.25),
        v: 2,
        w: 6,
        u: 4,
    }
}

/// Cone-splitting configuration where the segment from `q'` to `q1` leaves
/// the polygon; only the splitter `p -> q'` gives a well-defined choice.
pub struct SplitterFixture {
    pub polygon: Polygon,
    pub p: Point,
    pub q1: BoundaryPoint,
    pub q2: BoundaryPoint,
    pub t: Point,
}

pub fn splitter() -> SplitterFixture {
    let polygon = poly(&[
        (-1.0, -1.0),
        (10.0, -1.0),
        (11.0, 8.0),
        (1.0, 6.0),
        (-1.0, 7.0),
        (-1.0, 5.0),
        (5.0, 4.0),
        (-2.0, 1.5),
    ]);
    let v4 = polygon.vertex(2);
    let v5 = polygon.vertex(3);
    let v2 = polygon.vertex(6);
    let v1 = polygon.vertex(7);
    let q1 = BoundaryPoint::on_edge(&polygon, 2, v4 + (v5 - v4) * 0.4);
    let q2 = BoundaryPoint::on_edge(&polygon, 6, v1.midpoint(v2));
    let p = Point::new(4.5, 2.0);
    // t sits halfway between v2 and its projection onto the line q'q1.
    let qp = polygon
        .first_ray_hit(p, v5, 0.0, 1.0, |_| false)
        .expect("ray p -> succ(q1) is blocked")
        .0
        .point;
    let d = q1.point - qp;
    let proj = qp + d * ((v2 - qp).dot(d) / d.dot(d));
    SplitterFixture {
        polygon,
        p,
        q1,
        q2,
        t: proj.midpoint(v2),
    }
}
