//! Constant-workspace geodesics over the implicit vertical trapezoidal
//! decomposition. Every trapezoid is recomputed from scratch in `O(n)`, which
//! gives `O(n^2)` per query.
//!
//! Vertex x-coordinates must be distinct. When they are not, the algorithm
//! works on the image of the shear `x -> x + eps * y` without copying the
//! polygon and maps emitted vertices back by index.

use crate::cone::{cone_walk, Corridor, Portal, Step};
use crate::geom::Point;
use crate::polygon::{ring_contains, shear, BoundaryPoint, EdgeRef, Location, PathQuery, Polygon};
use crate::workspace::WorkspaceMeter;
use crate::Error;

/// A trapezoid of the decomposition: the region between two edges and two
/// vertical walls through vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trapezoid {
    pub top: EdgeRef,
    pub bottom: EdgeRef,
    pub left_x: f64,
    pub right_x: f64,
    pub left_vertex: usize,
    pub right_vertex: usize,
}

impl Trapezoid {
    /// Identity independent of the floating-point wall positions.
    pub fn key(&self) -> (EdgeRef, EdgeRef, usize, usize) {
        (self.top, self.bottom, self.left_vertex, self.right_vertex)
    }
}

/// Side from which a vertical line is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bias {
    /// Just left of the line.
    Left,
    /// Just right of the line; also used for points strictly between walls.
    Right,
}

/// One positive-length piece of a wall, bottom end first.
#[derive(Clone, Copy, Debug)]
pub struct WallPiece {
    pub x: f64,
    pub low: Portal,
    pub high: Portal,
    low_edge: EdgeRef,
    high_edge: EdgeRef,
    /// True for a right wall.
    rightward: bool,
}

impl WallPiece {
    fn boundary_points(&self) -> (BoundaryPoint, BoundaryPoint) {
        (
            BoundaryPoint {
                point: self.low.point,
                edge: self.low_edge,
            },
            BoundaryPoint {
                point: self.high.point,
                edge: self.high_edge,
            },
        )
    }
}

/// The polygon seen through the shear with parameter `eps`.
#[derive(Clone, Copy)]
struct View<'a> {
    poly: &'a Polygon,
    eps: f64,
}

impl View<'_> {
    #[inline]
    fn v(&self, i: usize) -> Point {
        shear(self.poly.vertex(i), self.eps)
    }

    #[inline]
    fn edge(&self, e: usize) -> (Point, Point) {
        (self.v(e), self.v(self.poly.next(e)))
    }

    /// Edge endpoint with the smaller (`left`) or larger x.
    fn end(&self, e: usize, left: bool) -> usize {
        let (a, b) = self.edge(e);
        if (a.x < b.x) == left {
            e
        } else {
            self.poly.next(e)
        }
    }

    fn y_at(&self, e: usize, x: f64) -> f64 {
        let (a, b) = self.edge(e);
        if x == a.x {
            a.y
        } else if x == b.x {
            b.y
        } else {
            a.y + (b.y - a.y) * ((x - a.x) / (b.x - a.x))
        }
    }

    fn trapezoid_at(&self, q: Point, bias: Bias) -> Result<Trapezoid, Error> {
        if self.eps == 0.0 {
            self.trapezoid_at_in::<false>(q, bias)
        } else {
            self.trapezoid_at_in::<true>(q, bias)
        }
    }

    // Both scans read the vertex slice directly; this is the hot loop of the walk.
    fn trapezoid_at_in<const SHEARED: bool>(
        &self,
        q: Point,
        bias: Bias,
    ) -> Result<Trapezoid, Error> {
        let verts = self.poly.vertices();
        let n = verts.len();
        let at = |p: Point| if SHEARED { shear(p, self.eps) } else { p };
        // Nearest spanning edge below and above q, with its ordering key.
        let mut below: Option<(usize, (f64, f64))> = None;
        let mut above: Option<(usize, (f64, f64))> = None;
        let mut a = at(verts[n - 1]);
        for (i, &raw) in verts.iter().enumerate() {
            let b = at(raw);
            let (lo, hi) = if a.x < b.x { (a.x, b.x) } else { (b.x, a.x) };
            let spans = match bias {
                Bias::Right => lo <= q.x && q.x < hi,
                Bias::Left => lo < q.x && q.x <= hi,
            };
            if spans {
                let e = if i == 0 { n - 1 } else { i - 1 };
                let y = if q.x == a.x {
                    a.y
                } else if q.x == b.x {
                    b.y
                } else {
                    a.y + (b.y - a.y) * ((q.x - a.x) / (b.x - a.x))
                };
                let slope = (b.y - a.y) / (b.x - a.x);
                let k = (y, if bias == Bias::Right { slope } else { -slope });
                if k.0 < q.y {
                    if below.is_none_or(|(_, bk)| k > bk) {
                        below = Some((e, k));
                    }
                } else if k.0 > q.y {
                    if above.is_none_or(|(_, ak)| k < ak) {
                        above = Some((e, k));
                    }
                } else {
                    return Err(Error::GeneralPosition(format!("{q} lies on edge {e}")));
                }
            }
            a = b;
        }
        let (Some((bottom, _)), Some((top, _))) = (below, above) else {
            return Err(Error::Precondition(format!(
                "{q} is not inside the polygon"
            )));
        };
        let (lb, lt) = (self.end(bottom, true), self.end(top, true));
        let (mut left_vertex, mut left_x) = if self.v(lb).x >= self.v(lt).x {
            (lb, self.v(lb).x)
        } else {
            (lt, self.v(lt).x)
        };
        let (rb, rt) = (self.end(bottom, false), self.end(top, false));
        let (mut right_vertex, mut right_x) = if self.v(rb).x <= self.v(rt).x {
            (rb, self.v(rb).x)
        } else {
            (rt, self.v(rt).x)
        };
        for (i, &raw) in verts.iter().enumerate() {
            let p = at(raw);
            let on_left = match bias {
                Bias::Right => p.x <= q.x,
                Bias::Left => p.x < q.x,
            };
            let candidate = if on_left { p.x > left_x } else { p.x < right_x };
            if !candidate || !(self.y_at(bottom, p.x) < p.y && p.y < self.y_at(top, p.x)) {
                continue;
            }
            if on_left {
                (left_vertex, left_x) = (i, p.x);
            } else {
                (right_vertex, right_x) = (i, p.x);
            }
        }
        Ok(Trapezoid {
            top: EdgeRef(top),
            bottom: EdgeRef(bottom),
            left_x,
            right_x,
            left_vertex,
            right_vertex,
        })
    }

    fn contains(&self, tr: &Trapezoid, q: Point) -> bool {
        tr.left_x <= q.x
            && q.x <= tr.right_x
            && self.y_at(tr.bottom.0, q.x) <= q.y
            && q.y <= self.y_at(tr.top.0, q.x)
    }

    /// Positive-length pieces of the left or right wall.
    fn wall_pieces(&self, tr: &Trapezoid, rightward: bool) -> impl Iterator<Item = WallPiece> {
        let (x, v) = if rightward {
            (tr.right_x, tr.right_vertex)
        } else {
            (tr.left_x, tr.left_vertex)
        };
        let (lo, hi) = (self.y_at(tr.bottom.0, x), self.y_at(tr.top.0, x));
        let vy = self.v(v).y;
        let at_v = Portal::at_vertex(self.v(v), v);
        let low = Portal::on_edge(Point::new(x, lo), tr.bottom.0);
        let high = Portal::on_edge(Point::new(x, hi), tr.top.0);
        let piece = |low: Portal, low_edge: EdgeRef, high: Portal, high_edge: EdgeRef| WallPiece {
            x,
            low,
            high,
            low_edge,
            high_edge,
            rightward,
        };
        let vref = EdgeRef(v);
        let lower = (lo < vy).then(|| piece(low, tr.bottom, at_v, vref));
        let upper = (vy < hi).then(|| piece(at_v, vref, high, tr.top));
        lower.into_iter().chain(upper)
    }

    /// Whether `t` lies in the part of the polygon beyond `w`.
    fn beyond(&self, w: &WallPiece, t: Point) -> bool {
        let (low, high) = w.boundary_points();
        if w.rightward {
            ring_contains(self.poly.chain_sheared(low, high, self.eps), t)
        } else {
            ring_contains(self.poly.chain_sheared(high, low, self.eps), t)
        }
    }

    /// The wall piece with `t` beyond it. Exactly one qualifies, so the last
    /// candidate is taken untested; the walls facing `t` are tried first.
    fn exit_toward(&self, tr: &Trapezoid, t: Point) -> Result<WallPiece, Error> {
        let right_first = t.x > tr.right_x;
        let mut pieces = self
            .wall_pieces(tr, right_first)
            .chain(self.wall_pieces(tr, !right_first))
            .peekable();
        while let Some(w) = pieces.next() {
            if pieces.peek().is_none() || self.beyond(&w, t) {
                return Ok(w);
            }
        }
        Err(Error::InvariantViolation("trapezoid has no walls".into()))
    }

    fn across(&self, w: &WallPiece) -> Result<Trapezoid, Error> {
        let probe = Point::new(w.x, 0.5 * (w.low.point.y + w.high.point.y));
        self.trapezoid_at(probe, if w.rightward { Bias::Right } else { Bias::Left })
    }
}

impl Corridor for View<'_> {
    type Cell = Trapezoid;

    fn locate(&self, q: Point) -> Result<Trapezoid, Error> {
        self.trapezoid_at(q, Bias::Right)
    }

    fn cell_contains(&self, tr: &Trapezoid, q: Point) -> bool {
        self.contains(tr, q)
    }

    fn direction(&self, apex: &Portal, p: &Portal) -> Point {
        match (apex.vertex, p.edge) {
            (Some(a), Some(e)) if a == e => self.v(self.poly.next(e)),
            (Some(a), Some(e)) if a == self.poly.next(e) => self.v(e),
            _ => p.point,
        }
    }

    fn next_toward(&self, tr: &Trapezoid, t: Point) -> Result<(Portal, Portal, Trapezoid), Error> {
        let w = self.exit_toward(tr, t)?;
        let next = self.across(&w)?;
        Ok(if w.rightward {
            (w.high, w.low, next)
        } else {
            (w.low, w.high, next)
        })
    }
}

fn distinct_x(poly: &Polygon) -> Result<View<'_>, Error> {
    if poly.has_equal_x() {
        return Err(Error::Precondition(
            "duplicate vertex x-coordinates; shear first".into(),
        ));
    }
    Ok(View { poly, eps: 0.0 })
}

/// The trapezoid containing `q`; `poly` must have distinct x-coordinates.
pub fn trapezoid_of(poly: &Polygon, q: Point) -> Result<Trapezoid, Error> {
    distinct_x(poly)?.trapezoid_at(q, Bias::Right)
}

/// Trapezoids sharing a positive-length wall piece with `tr`.
pub fn trapezoid_neighbors(
    poly: &Polygon,
    tr: &Trapezoid,
) -> Result<Vec<(Trapezoid, WallPiece)>, Error> {
    let view = distinct_x(poly)?;
    let mut out = Vec::new();
    for rightward in [true, false] {
        for w in view.wall_pieces(tr, rightward) {
            out.push((view.across(&w)?, w));
        }
    }
    Ok(out)
}

/// The wall piece of `tr` on the way to `t` and the trapezoid beyond it.
pub fn trapezoid_next_toward(
    poly: &Polygon,
    tr: &Trapezoid,
    t: Point,
) -> Result<(WallPiece, Trapezoid), Error> {
    let view = distinct_x(poly)?;
    if view.contains(tr, t) {
        return Err(Error::Precondition(
            "target lies in the current trapezoid".into(),
        ));
    }
    let w = view.exit_toward(tr, t)?;
    Ok((w, view.across(&w)?))
}

pub fn trapezoid_contains(poly: &Polygon, tr: &Trapezoid, q: Point) -> bool {
    View { poly, eps: 0.0 }.contains(tr, q)
}

pub fn trapezoid_shortest_path(poly: &Polygon, q: PathQuery) -> Result<Vec<Point>, Error> {
    trapezoid_shortest_path_metered(poly, q, &WorkspaceMeter::new())
}

pub(crate) fn trapezoid_shortest_path_metered(
    poly: &Polygon,
    q: PathQuery,
    meter: &WorkspaceMeter,
) -> Result<Vec<Point>, Error> {
    trace(poly, q, meter, |_| {})
}

/// Runs the walk, handing every trapezoid entered to `visit`. Trapezoids are
/// in sheared coordinates when the polygon needed a shear.
pub fn trace(
    poly: &Polygon,
    q: PathQuery,
    meter: &WorkspaceMeter,
    mut visit: impl FnMut(Trapezoid),
) -> Result<Vec<Point>, Error> {
    for p in [q.s, q.t] {
        if poly.contains(p) != Location::Inside {
            return Err(Error::Precondition(format!(
                "{p} is not strictly inside the polygon"
            )));
        }
    }
    let _locals = meter.frame_of::<View<'_>>();
    let mut path = vec![q.s];
    if q.s == q.t {
        return Ok(path);
    }
    let eps = if poly.has_equal_x() {
        poly.choose_shear_epsilon()?
    } else {
        0.0
    };
    let view = View { poly, eps };
    if eps != 0.0
        && (0..poly.len()).any(|i| (i + 1..poly.len()).any(|j| view.v(i).x == view.v(j).x))
    {
        return Err(Error::GeneralPosition(
            "shear left equal x-coordinates".into(),
        ));
    }
    let budget = 8 * poly.len() * poly.len() + 64;
    let emitted = cone_walk(
        &view,
        shear(q.s, eps),
        shear(q.t, eps),
        budget,
        meter,
        |step| match *step {
            Step::Crossed { cell, .. } | Step::Emitted { cell, .. } => visit(cell),
            Step::Done => {}
        },
    )?;
    path.extend(emitted.into_iter().map(|i| poly.vertex(i)));
    path.push(q.t);
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{
        oracle_shortest_path, oracle_trapezoid_adjacency, oracle_trapezoidation, OracleTrapezoid,
    };

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn sheared(poly: &Polygon) -> Polygon {
        poly.apply_shear(poly.choose_shear_epsilon().unwrap())
    }

    fn matches(a: &Trapezoid, b: &OracleTrapezoid) -> bool {
        a.top == b.top && a.bottom == b.bottom && a.left_x == b.left_x && a.right_x == b.right_x
    }

    fn center(poly: &Polygon, t: &OracleTrapezoid) -> Point {
        let x = 0.5 * (t.left_x + t.right_x);
        let (b, top) = t.height_at(poly, x);
        p(x, 0.5 * (b + top))
    }

    #[test]
    fn square_examples() {
        let sq = sheared(&fixtures::square());
        let eps = fixtures::square().choose_shear_epsilon().unwrap();
        let mid = trapezoid_of(&sq, shear(p(2., 2.), eps)).unwrap();
        assert_eq!((mid.bottom, mid.top), (EdgeRef(0), EdgeRef(2)));
        assert_eq!(trapezoid_neighbors(&sq, &mid).unwrap().len(), 2);
        let corner = trapezoid_of(&sq, shear(p(0.2, 0.5), eps)).unwrap();
        assert_eq!(trapezoid_neighbors(&sq, &corner).unwrap().len(), 1);
        assert!(trapezoid_of(&fixtures::square(), p(2., 2.)).is_err());
    }

    #[test]
    fn l_shape_example() {
        let l = fixtures::l_shape();
        let eps = l.choose_shear_epsilon().unwrap();
        let sl = l.apply_shear(eps);
        let tr = trapezoid_of(&sl, shear(p(3., 1.), eps)).unwrap();
        assert_eq!((tr.bottom, tr.top), (EdgeRef(0), EdgeRef(2)));
        assert_eq!(tr.left_vertex, 3);
    }

    #[test]
    fn decomposition_matches_oracle() {
        let mut polys = vec![
            sheared(&fixtures::square()),
            sheared(&fixtures::l_shape()),
            fixtures::triangle(),
        ];
        polys.extend((0..20).map(|seed| crate::polygen::generate_polygon(30, seed).unwrap()));
        for poly in &polys {
            let traps = oracle_trapezoidation(poly).unwrap();
            let adj = oracle_trapezoid_adjacency(poly, &traps);
            for (i, ot) in traps.iter().enumerate() {
                let tr = trapezoid_of(poly, center(poly, ot)).unwrap();
                assert!(matches(&tr, ot), "{tr:?} vs {ot:?}");
                let nb = trapezoid_neighbors(poly, &tr).unwrap();
                assert!(nb.len() <= 4);
                let expected = adj.iter().filter(|&&(a, b)| a == i || b == i).count();
                assert_eq!(nb.len(), expected);
                for (t, _) in &nb {
                    assert!(traps.iter().any(|o| matches(t, o)));
                }
            }
        }
    }

    #[test]
    fn walls_separate() {
        for seed in 0..10 {
            let poly = crate::polygen::generate_polygon(30, seed).unwrap();
            let pts = crate::polygen::sample_query_points(&poly).points;
            let (s, t) = (pts[0], pts[pts.len() - 1]);
            let mut tr = trapezoid_of(&poly, s).unwrap();
            let mut steps = 0;
            while !trapezoid_contains(&poly, &tr, t) {
                let (w, next) = trapezoid_next_toward(&poly, &tr, t).unwrap();
                let (lo, hi) = w.boundary_points();
                assert_ne!(poly.part_contains(lo, hi, s), poly.part_contains(lo, hi, t));
                tr = next;
                steps += 1;
                assert!(steps < poly.len());
            }
        }
    }

    #[test]
    fn paths_match_oracle() {
        let sq = fixtures::square();
        assert_eq!(
            trapezoid_shortest_path(&sq, PathQuery::new(p(1., 1.), p(3., 3.))).unwrap(),
            vec![p(1., 1.), p(3., 3.)]
        );
        let l = fixtures::l_shape();
        assert_eq!(
            trapezoid_shortest_path(&l, PathQuery::new(p(3.5, 1.), p(1., 3.5))).unwrap(),
            vec![p(3.5, 1.), p(2., 2.), p(1., 3.5)]
        );
        for k in 1..5 {
            let poly = fixtures::comb(k);
            let (s, t) = fixtures::comb_query(k);
            let q = PathQuery::new(s, t);
            assert_eq!(
                trapezoid_shortest_path(&poly, q).unwrap(),
                oracle_shortest_path(&poly, q).unwrap()
            );
        }
        for seed in 0..20 {
            let poly = crate::polygen::generate_polygon(32, seed).unwrap();
            let traps = oracle_trapezoidation(&poly).unwrap();
            let pts = crate::polygen::sample_query_points(&poly).points;
            for (i, &s) in pts.iter().enumerate().step_by(3) {
                for &t in pts.iter().skip(i + 1).step_by(5) {
                    let q = PathQuery::new(s, t);
                    let got = trace(&poly, q, &WorkspaceMeter::new(), |tr| {
                        assert!(traps.iter().any(|o| matches(&tr, o)));
                    })
                    .unwrap();
                    assert_eq!(got, oracle_shortest_path(&poly, q).unwrap(), "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn decoy_is_never_wrapped() {
        let f = fixtures::decoy();
        let q = PathQuery::new(f.s, f.t);
        let path = trapezoid_shortest_path(&f.polygon, q).unwrap();
        assert_eq!(path, oracle_shortest_path(&f.polygon, q).unwrap());
        assert!(!path.contains(&f.polygon.vertex(f.u)));
    }
}
