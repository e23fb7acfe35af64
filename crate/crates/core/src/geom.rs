//! Geometric predicates and constructions shared by every algorithm.
//!
//! Everything is evaluated with plain `f64` determinants. No angle is ever
//! computed; direction comparisons go through [`orient`]. `Collinear` means the
//! determinant is exactly zero, so callers that care about near-degenerate
//! input must handle it themselves (usually via an edge reference).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::Error;

/// A point in the plane with finite IEEE-754 double coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// Result of the three-point orientation test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Left or right of a walking direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// The orientation that points to this side.
    pub fn orientation(self) -> Orientation {
        match self {
            Side::Left => Orientation::Left,
            Side::Right => Orientation::Right,
        }
    }
}

/// Twice the signed area of triangle `abc`.
#[inline]
pub fn det(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Position of `c` relative to the directed line through `a` and `b`.
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> Orientation {
    let d = det(a, b, c);
    if d > 0.0 {
        Orientation::Left
    } else if d < 0.0 {
        Orientation::Right
    } else {
        Orientation::Collinear
    }
}

/// True iff the open segments `ab` and `cd` share exactly one point.
/// Touching at an endpoint and collinear overlap are not proper crossings.
pub fn segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
        && o1 != o2
        && o3 != o4
}

/// `c` lies on the closed segment `ab` (exact collinearity plus box test).
pub fn on_segment(a: Point, b: Point, c: Point) -> bool {
    orient(a, b, c) == Orientation::Collinear
        && c.x >= a.x.min(b.x)
        && c.x <= a.x.max(b.x)
        && c.y >= a.y.min(b.y)
        && c.y <= a.y.max(b.y)
}

/// True iff the closed segments `ab` and `cd` have any point in common.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    segments_properly_cross(a, b, c, d)
        || on_segment(a, b, c)
        || on_segment(a, b, d)
        || on_segment(c, d, a)
        || on_segment(c, d, b)
}

/// In-circle determinant for the counterclockwise triangle `abc`.
///
/// Positive iff `d` is strictly inside the circumcircle, zero iff the four
/// points are cocircular, negative iff `d` is outside.
pub fn in_circle(a: Point, b: Point, c: Point, d: Point) -> Result<f64, Error> {
    match orient(a, b, c) {
        Orientation::Collinear => return Err(Error::DegenerateTriangle),
        Orientation::Right => {
            return Err(Error::Precondition(
                "in_circle expects a counterclockwise triangle".into(),
            ))
        }
        Orientation::Left => {}
    }
    Ok(in_circle_unchecked(a, b, c, d))
}

#[inline]
pub(crate) fn in_circle_unchecked(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let (adx, ady) = (a.x - d.x, a.y - d.y);
    let (bdx, bdy) = (b.x - d.x, b.y - d.y);
    let (cdx, cdy) = (c.x - d.x, c.y - d.y);
    let alift = adx * adx + ady * ady;
    let blift = bdx * bdx + bdy * bdy;
    let clift = cdx * cdx + cdy * cdy;
    alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady)
}

/// A ray/segment hit: the point and the ray parameter (`through` sits at 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayHit {
    pub point: Point,
    pub t: f64,
}

/// Intersects the ray from `origin` through `through` with the closed segment
/// `cd`. Parallel and collinear configurations report no hit.
pub fn ray_segment_intersection(
    origin: Point,
    through: Point,
    c: Point,
    d: Point,
) -> Option<RayHit> {
    let r = through - origin;
    let s = d - c;
    let denom = r.cross(s);
    if denom == 0.0 {
        return None;
    }
    let w = c - origin;
    let t = w.cross(s) / denom;
    let u = w.cross(r) / denom;
    if t < 0.0 || !(0.0..=1.0).contains(&u) {
        return None;
    }
    // Snap to segment endpoints so the hit is exactly representable there.
    let point = if u == 0.0 {
        c
    } else if u == 1.0 {
        d
    } else {
        c + s * u
    };
    Some(RayHit { point, t })
}

/// Closed point-in-triangle test, orientation agnostic.
pub fn point_in_triangle(a: Point, b: Point, c: Point, q: Point) -> bool {
    let o1 = orient(a, b, q);
    let o2 = orient(b, c, q);
    let o3 = orient(c, a, q);
    let has_left = [o1, o2, o3].contains(&Orientation::Left);
    let has_right = [o1, o2, o3].contains(&Orientation::Right);
    !(has_left && has_right)
}

pub fn barycenter(a: Point, b: Point, c: Point) -> Point {
    Point::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
}
