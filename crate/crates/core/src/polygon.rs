//! The read-only simple polygon, boundary points with edge references, and
//! the `x + εy` shear used to restore distinct x-coordinates.

use std::fmt::Write as _;
use std::io::Read;

use crate::geom::{
    det, on_segment, orient, segments_intersect, segments_properly_cross, Orientation, Point,
};
use crate::Error;

/// Edge `i` joins vertex `i` and vertex `i + 1 (mod n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef(pub usize);

/// A point on the boundary together with the edge it logically lies on.
///
/// Computed intersection points are rarely exactly on their edge; the edge
/// reference is what later chain walks trust. A boundary point that coincides
/// with a vertex always refers to the edge starting at that vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub point: Point,
    pub edge: EdgeRef,
}

impl BoundaryPoint {
    pub fn vertex(poly: &Polygon, i: usize) -> Self {
        Self {
            point: poly.vertex(i),
            edge: EdgeRef(i),
        }
    }

    /// Boundary point on edge `edge`, snapped to a vertex when it coincides
    /// with one of the edge's endpoints.
    pub fn on_edge(poly: &Polygon, edge: usize, point: Point) -> Self {
        let next = poly.next(edge);
        if point == poly.vertex(next) {
            Self::vertex(poly, next)
        } else {
            Self {
                point,
                edge: EdgeRef(edge),
            }
        }
    }

    /// Index of the vertex this point sits on, if any.
    pub fn vertex_index(&self, poly: &Polygon) -> Option<usize> {
        (self.point == poly.vertex(self.edge.0)).then_some(self.edge.0)
    }

    /// First vertex strictly after this point in counterclockwise order.
    pub fn successor(&self, poly: &Polygon) -> usize {
        poly.next(self.edge.0)
    }

    /// Last vertex strictly before this point in counterclockwise order.
    pub fn predecessor(&self, poly: &Polygon) -> usize {
        match self.vertex_index(poly) {
            Some(i) => poly.prev(i),
            None => self.edge.0,
        }
    }

    fn param(&self, poly: &Polygon, eps: f64) -> f64 {
        let (a, b) = poly.edge(self.edge.0);
        let (a, b) = (shear(a, eps), shear(b, eps));
        (self.point - a).dot(b - a)
    }
}

/// Source and target of a geodesic query.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathQuery {
    pub s: Point,
    pub t: Point,
}

impl PathQuery {
    pub fn new(s: Point, t: Point) -> Self {
        Self { s, t }
    }

    pub fn reversed(self) -> Self {
        Self {
            s: self.t,
            t: self.s,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A simple polygon with counterclockwise vertices. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Validates `vertices` and normalizes them to counterclockwise order.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, Error> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::Degenerate(format!("{n} vertices")));
        }
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::Parse(format!("non-finite coordinate {p}")));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::Degenerate(format!(
                    "vertices {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if segments_intersect(a, b, c, d) {
                    return Err(Error::NotSimple(format!("edges {i} and {j} intersect")));
                }
            }
        }
        let area = signed_area(&vertices);
        if area == 0.0 {
            return Err(Error::Degenerate("zero area".into()));
        }
        // Adjacent edges folding back onto each other.
        for i in 0..n {
            let (a, b, c) = (
                vertices[(i + n - 1) % n],
                vertices[i],
                vertices[(i + 1) % n],
            );
            if orient(a, b, c) == Orientation::Collinear && (a - b).dot(c - b) > 0.0 {
                return Err(Error::NotSimple(format!("spike at vertex {i}")));
            }
        }
        if area < 0.0 {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    /// Builds a polygon from vertices already known to be simple and
    /// counterclockwise.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point>) -> Self {
        debug_assert!(signed_area(&vertices) > 0.0);
        Self { vertices }
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let n: usize = first
            .parse()
            .map_err(|e| Error::Parse(format!("line {ln}: bad vertex count {first:?}: {e}")))?;
        let mut vertices = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = lines.next().ok_or_else(|| {
                Error::Parse(format!("expected {n} vertices, found {}", vertices.len()))
            })?;
            let mut it = line.split_whitespace();
            let mut coord = || -> Result<f64, Error> {
                let tok = it
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {ln}: missing coordinate")))?;
                tok.parse()
                    .map_err(|e| Error::Parse(format!("line {ln}: {tok:?}: {e}")))
            };
            let x = coord()?;
            let y = coord()?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("line {ln}: trailing tokens")));
            }
            vertices.push(Point::new(x, y));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse(format!(
                "line {ln}: unexpected data after {n} vertices"
            )));
        }
        Self::new(vertices)
    }

    pub fn load<R: Read>(mut reader: R) -> Result<Self, Error> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::parse(&text)
    }

    /// Text form accepted by [`Polygon::parse`]; coordinates round-trip exactly.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.len());
        for v in &self.vertices {
            let _ = writeln!(s, "{} {}", v.x, v.y);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    #[inline]
    pub fn next(&self, i: usize) -> usize {
        if i + 1 == self.vertices.len() {
            0
        } else {
            i + 1
        }
    }

    #[inline]
    pub fn prev(&self, i: usize) -> usize {
        if i == 0 {
            self.vertices.len() - 1
        } else {
            i - 1
        }
    }

    #[inline]
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertices[i], self.vertices[self.next(i)])
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Interior angle at vertex `i` exceeds 180 degrees.
    pub fn is_reflex(&self, i: usize) -> bool {
        orient(
            self.vertex(self.prev(i)),
            self.vertex(i),
            self.vertex(self.next(i)),
        ) == Orientation::Right
    }

    pub fn contains(&self, q: Point) -> Location {
        for i in 0..self.len() {
            let (a, b) = self.edge(i);
            if on_segment(a, b, q) {
                return Location::Boundary;
            }
        }
        if ring_contains(self.vertices.iter().copied(), q) {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// True iff no polygon edge properly crosses the open segment `ab`.
    pub fn segment_clear(&self, a: Point, b: Point) -> bool {
        (0..self.len()).all(|i| {
            let (c, d) = self.edge(i);
            !segments_properly_cross(a, b, c, d)
        })
    }

    /// Counterclockwise boundary walk from `from` to `to`, both included.
    /// Equal endpoints denote the full loop.
    pub fn chain(&self, from: BoundaryPoint, to: BoundaryPoint) -> Chain<'_> {
        self.chain_sheared(from, to, 0.0)
    }

    /// [`Polygon::chain`] in the image of the shear with parameter `eps`;
    /// `from` and `to` are given in sheared coordinates.
    pub(crate) fn chain_sheared(
        &self,
        from: BoundaryPoint,
        to: BoundaryPoint,
        eps: f64,
    ) -> Chain<'_> {
        let n = self.len();
        let (ja, jb) = (from.edge.0, to.edge.0);
        let mut count = (jb + n - ja) % n;
        if count == 0 && to.param(self, eps) <= from.param(self, eps) {
            count = n;
        }
        let at_vertex = to.point == shear(self.vertex(jb), eps);
        let last = if count > 0 && at_vertex {
            None
        } else {
            Some(to.point)
        };
        Chain {
            poly: self,
            eps,
            first: Some(from.point),
            next_vertex: self.next(ja),
            remaining: count,
            last,
        }
    }

    /// Whether `q` lies in the part of the polygon to the left of the chord
    /// `a -> b`, i.e. the region bounded by the chord and the boundary walk
    /// from `b` back to `a`.
    pub fn part_contains(&self, a: BoundaryPoint, b: BoundaryPoint, q: Point) -> bool {
        ring_contains(self.chain(b, a), q)
    }

    /// Whether `q` lies in the region bounded by `apex -> a`, the boundary walk
    /// from `a` to `b`, and `b -> apex`.
    pub fn fan_contains(&self, apex: Point, a: BoundaryPoint, b: BoundaryPoint, q: Point) -> bool {
        ring_contains(std::iter::once(apex).chain(self.chain(a, b)), q)
    }

    /// First boundary hit of the ray `origin -> through` with parameter in
    /// `(t_min, t_max)`, skipping edges for which `skip` holds.
    pub fn first_ray_hit(
        &self,
        origin: Point,
        through: Point,
        t_min: f64,
        t_max: f64,
        skip: impl Fn(usize) -> bool,
    ) -> Option<(BoundaryPoint, f64)> {
        let mut best: Option<(usize, Point, f64)> = None;
        for i in 0..self.len() {
            if skip(i) {
                continue;
            }
            let (c, d) = self.edge(i);
            if let Some(h) = crate::geom::ray_segment_intersection(origin, through, c, d) {
                if h.t > t_min && h.t < t_max && best.is_none_or(|(_, _, bt)| h.t < bt) {
                    best = Some((i, h.point, h.t));
                }
            }
        }
        best.map(|(i, p, t)| (BoundaryPoint::on_edge(self, i, p), t))
    }

    /// Image under `(x, y) -> (x + eps * y, y)`.
    pub fn apply_shear(&self, eps: f64) -> Polygon {
        Polygon::from_ccw_unchecked(self.vertices.iter().map(|&v| shear(v, eps)).collect())
    }

    /// A shear parameter that keeps the strict x-order of vertices with
    /// distinct x and separates vertices sharing an x-coordinate.
    pub fn choose_shear_epsilon(&self) -> Result<f64, Error> {
        let v = &self.vertices;
        let mut gap = f64::INFINITY;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let d = (v[i].x - v[j].x).abs();
                if d > 0.0 && d < gap {
                    gap = d;
                }
            }
        }
        if !gap.is_finite() {
            return Err(Error::Internal(
                "all vertices share one x-coordinate".into(),
            ));
        }
        let max_y = v.iter().map(|p| p.y.abs()).fold(0.0, f64::max);
        Ok(if max_y > 0.0 {
            gap / (4.0 * max_y)
        } else {
            1.0
        })
    }

    /// Any two vertices share an x-coordinate. Constant extra space.
    pub fn has_equal_x(&self) -> bool {
        let v = &self.vertices;
        // A branch-free inner loop vectorizes, overflow checks or not; the
        // scan is quadratic either way.
        (0..v.len()).any(|i| {
            let x = v[i].x;
            v[i + 1..].iter().fold(false, |hit, p| hit | (p.x == x))
        })
    }

    pub fn general_position_report(&self) -> GeneralPositionReport {
        let n = self.len();
        let v = &self.vertices;
        let mut report = GeneralPositionReport::default();
        for i in 0..n {
            for j in i + 1..n {
                if v[i].x == v[j].x {
                    report.equal_x_pairs.push((i, j));
                }
                if v[i].y == v[j].y {
                    report.equal_y_pairs.push((i, j));
                }
                for k in j + 1..n {
                    if det(v[i], v[j], v[k]) == 0.0 {
                        report.collinear_triples.push([i, j, k]);
                    }
                }
            }
        }
        report
    }
}

pub fn shear(p: Point, eps: f64) -> Point {
    Point::new(p.x + eps * p.y, p.y)
}

pub fn unshear(p: Point, eps: f64) -> Point {
    Point::new(p.x - eps * p.y, p.y)
}

/// Violations of the general-position assumptions, by vertex index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneralPositionReport {
    pub collinear_triples: Vec<[usize; 3]>,
    pub equal_x_pairs: Vec<(usize, usize)>,
    pub equal_y_pairs: Vec<(usize, usize)>,
}

impl GeneralPositionReport {
    pub fn is_clean(&self) -> bool {
        self.collinear_triples.is_empty() && self.equal_x_pairs.is_empty()
    }
}

/// Boundary walk produced by [`Polygon::chain`].
#[derive(Clone, Debug)]
pub struct Chain<'a> {
    poly: &'a Polygon,
    eps: f64,
    first: Option<Point>,
    next_vertex: usize,
    remaining: usize,
    last: Option<Point>,
}

impl Iterator for Chain<'_> {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if let Some(p) = self.first.take() {
            return Some(p);
        }
        if self.remaining > 0 {
            let v = shear(self.poly.vertex(self.next_vertex), self.eps);
            self.next_vertex = self.poly.next(self.next_vertex);
            self.remaining -= 1;
            return Some(v);
        }
        self.last.take()
    }
}

pub fn signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    0.5 * (0..n)
        .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
        .sum::<f64>()
}

/// Even-odd point-in-ring test over a closed ring given as a point sequence.
/// Points on the ring boundary may go either way.
pub fn ring_contains(ring: impl IntoIterator<Item = Point>, q: Point) -> bool {
    let mut it = ring.into_iter();
    let Some(first) = it.next() else { return false };
    let mut inside = false;
    let mut prev = first;
    let mut step = |a: Point, b: Point| {
        if (a.y > q.y) != (b.y > q.y) {
            let o = orient(a, b, q);
            if (b.y > a.y && o == Orientation::Left) || (b.y < a.y && o == Orientation::Right) {
                inside = !inside;
            }
        }
    };
    for p in it {
        step(prev, p);
        prev = p;
    }
    step(prev, first);
    inside
}
