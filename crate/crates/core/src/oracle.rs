//! Brute-force reference constructions: visibility-graph shortest paths,
//! the constrained Delaunay triangulation via edge flips, and the full
//! vertical trapezoidation.
//!
//! Nothing here shares code with the algorithms under test beyond the
//! predicates in [`crate::geom`].

use std::collections::HashMap;

use crate::geom::{in_circle_unchecked, on_segment, orient, Orientation, Point};
use crate::polygon::{EdgeRef, Location, PathQuery, Polygon};
use crate::triangulate::triangulate_ear_clipping;
use crate::Error;

/// Closed visibility: the segment `ab` stays inside the closed polygon.
pub fn visible(poly: &Polygon, a: Point, b: Point) -> bool {
    if a == b {
        return true;
    }
    if !poly.segment_clear(a, b) {
        return false;
    }
    let d = b - a;
    let index = |p: Point| poly.vertices().iter().position(|&v| v == p);
    let mut cuts = vec![(0.0, index(a)), (1.0, index(b))];
    for (i, &v) in poly.vertices().iter().enumerate() {
        if v != a && v != b && on_segment(a, b, v) {
            cuts.push(((v - a).dot(d) / d.dot(d), Some(i)));
        }
    }
    cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
    // A piece joining adjacent vertices is a polygon edge; its rounded
    // midpoint may fall on either side.
    cuts.windows(2).all(|w| match (w[0].1, w[1].1) {
        (Some(i), Some(j)) if poly.next(i) == j || poly.next(j) == i => true,
        _ => poly.contains(a + d * (0.5 * (w[0].0 + w[1].0))) != Location::Outside,
    })
}

/// The geodesic `[s, w1, .., wk, t]` by Dijkstra over the visibility graph of
/// `{s, t}` and all vertices. Collinear bends are dropped.
pub fn oracle_shortest_path(poly: &Polygon, q: PathQuery) -> Result<Vec<Point>, Error> {
    for p in [q.s, q.t] {
        if poly.contains(p) != Location::Inside {
            return Err(Error::Precondition(format!(
                "{p} is not strictly inside the polygon"
            )));
        }
    }
    if q.s == q.t {
        return Ok(vec![q.s]);
    }
    let nodes: Vec<Point> = [q.s, q.t]
        .into_iter()
        .chain(poly.vertices().iter().copied())
        .collect();
    let m = nodes.len();
    let mut dist = vec![f64::INFINITY; m];
    let mut parent = vec![usize::MAX; m];
    let mut done = vec![false; m];
    dist[0] = 0.0;
    while let Some(u) = (0..m)
        .filter(|&i| !done[i] && dist[i].is_finite())
        .min_by(|&i, &j| dist[i].total_cmp(&dist[j]))
    {
        done[u] = true;
        if u == 1 {
            break;
        }
        for v in 0..m {
            if done[v] {
                continue;
            }
            let nd = dist[u] + nodes[u].dist(nodes[v]);
            if nd < dist[v] && visible(poly, nodes[u], nodes[v]) {
                dist[v] = nd;
                parent[v] = u;
            }
        }
    }
    if !done[1] {
        return Err(Error::Internal(
            "target unreachable in visibility graph".into(),
        ));
    }
    let mut path = vec![nodes[1]];
    let mut cur = 1;
    while cur != 0 {
        cur = parent[cur];
        path.push(nodes[cur]);
    }
    path.reverse();
    let mut out: Vec<Point> = Vec::with_capacity(path.len());
    for (i, &p) in path.iter().enumerate() {
        if i + 1 < path.len()
            && !out.is_empty()
            && orient(*out.last().unwrap(), p, path[i + 1]) == Orientation::Collinear
        {
            continue;
        }
        out.push(p);
    }
    Ok(out)
}

/// Euclidean length of a polyline.
pub fn path_length(path: &[Point]) -> f64 {
    path.windows(2).fold(0.0, |acc, w| acc + w[0].dist(w[1]))
}

/// The constrained Delaunay triangulation as counterclockwise index triples,
/// obtained by flipping non-locally-Delaunay diagonals of an ear-clipping
/// triangulation until none remain.
pub fn oracle_cdt(poly: &Polygon) -> Result<Vec<[usize; 3]>, Error> {
    let n = poly.len();
    let mut tris = triangulate_ear_clipping(poly)?.triangles;
    let is_edge = |a: usize, b: usize| poly.next(a) == b || poly.next(b) == a;
    let v = |i: usize| poly.vertex(i);
    let budget = n * n * n + 16;
    for _ in 0..budget {
        let mut half: HashMap<(usize, usize), usize> = HashMap::new();
        for (id, t) in tris.iter().enumerate() {
            for k in 0..3 {
                half.insert((t[k], t[(k + 1) % 3]), id);
            }
        }
        let mut flipped = false;
        let mut tie = false;
        for (id, t) in tris.clone().iter().enumerate() {
            for k in 0..3 {
                let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
                if is_edge(a, b) || a > b {
                    continue;
                }
                let other = half[&(b, a)];
                let d = tris[other]
                    .iter()
                    .copied()
                    .find(|&x| x != a && x != b)
                    .unwrap();
                let ic = in_circle_unchecked(v(a), v(b), v(c), v(d));
                if ic > 0.0 {
                    tris[id] = [a, d, c];
                    tris[other] = [d, b, c];
                    flipped = true;
                    break;
                }
                if ic == 0.0 {
                    tie = true;
                }
            }
            if flipped {
                break;
            }
        }
        if !flipped {
            if tie {
                return Err(Error::CocircularDegeneracy);
            }
            for t in &mut tris {
                let k = (0..3).min_by_key(|&k| t[k]).unwrap();
                t.rotate_left(k);
            }
            tris.sort_unstable();
            return Ok(tris);
        }
    }
    Err(Error::Internal("edge flipping did not converge".into()))
}

/// One trapezoid of the vertical decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleTrapezoid {
    pub bottom: EdgeRef,
    pub top: EdgeRef,
    pub left_x: f64,
    pub right_x: f64,
}

impl OracleTrapezoid {
    pub fn height_at(&self, poly: &Polygon, x: f64) -> (f64, f64) {
        (
            edge_y_at(poly, self.bottom.0, x),
            edge_y_at(poly, self.top.0, x),
        )
    }

    pub fn area(&self, poly: &Polygon) -> f64 {
        let (b0, t0) = self.height_at(poly, self.left_x);
        let (b1, t1) = self.height_at(poly, self.right_x);
        0.5 * (self.right_x - self.left_x) * ((t0 - b0) + (t1 - b1))
    }

    /// Strict interior test.
    pub fn contains(&self, poly: &Polygon, q: Point) -> bool {
        if q.x <= self.left_x || q.x >= self.right_x {
            return false;
        }
        let (b, t) = self.height_at(poly, q.x);
        b < q.y && q.y < t
    }
}

pub(crate) fn edge_y_at(poly: &Polygon, e: usize, x: f64) -> f64 {
    let (a, b) = poly.edge(e);
    a.y + (b.y - a.y) * ((x - a.x) / (b.x - a.x))
}

/// The vertical decomposition built slab by slab: pieces between consecutive
/// crossing edges in adjacent slabs merge when they share both edges.
pub fn oracle_trapezoidation(poly: &Polygon) -> Result<Vec<OracleTrapezoid>, Error> {
    if poly.has_equal_x() {
        return Err(Error::Precondition("duplicate vertex x-coordinates".into()));
    }
    let n = poly.len();
    let mut xs: Vec<f64> = poly.vertices().iter().map(|v| v.x).collect();
    xs.sort_by(f64::total_cmp);
    let mut done: Vec<OracleTrapezoid> = Vec::new();
    let mut open: Vec<OracleTrapezoid> = Vec::new();
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let mid = 0.5 * (x0 + x1);
        let mut crossing: Vec<usize> = (0..n)
            .filter(|&e| {
                let (a, b) = poly.edge(e);
                a.x.min(b.x) <= x0 && a.x.max(b.x) >= x1
            })
            .collect();
        crossing.sort_by(|&e, &f| edge_y_at(poly, e, mid).total_cmp(&edge_y_at(poly, f, mid)));
        if !crossing.len().is_multiple_of(2) {
            return Err(Error::Internal("odd number of edges across a slab".into()));
        }
        let mut next_open = Vec::new();
        for pair in crossing.chunks(2) {
            let (bottom, top) = (EdgeRef(pair[0]), EdgeRef(pair[1]));
            match open.iter().position(|t| t.bottom == bottom && t.top == top) {
                Some(i) => {
                    let mut t = open.swap_remove(i);
                    t.right_x = x1;
                    next_open.push(t);
                }
                None => next_open.push(OracleTrapezoid {
                    bottom,
                    top,
                    left_x: x0,
                    right_x: x1,
                }),
            }
        }
        done.append(&mut open);
        open = next_open;
    }
    done.append(&mut open);
    done.sort_by(|a, b| a.left_x.total_cmp(&b.left_x).then(a.bottom.cmp(&b.bottom)));
    Ok(done)
}

/// Index pairs of trapezoids sharing a vertical wall of positive length.
pub fn oracle_trapezoid_adjacency(
    poly: &Polygon,
    traps: &[OracleTrapezoid],
) -> Vec<(usize, usize)> {
    let mut adj = Vec::new();
    for (i, a) in traps.iter().enumerate() {
        for (j, b) in traps.iter().enumerate() {
            if a.right_x != b.left_x {
                continue;
            }
            let x = a.right_x;
            let (ab, at) = a.height_at(poly, x);
            let (bb, bt) = b.height_at(poly, x);
            if at.min(bt) > ab.max(bb) {
                adj.push((i, j));
            }
        }
    }
    adj
}
