//! Ear-clipping triangulation and its dual tree, used by the linear-space
//! funnel algorithm.

use std::collections::{HashMap, VecDeque};

use crate::geom::{orient, point_in_triangle, Orientation, Point};
use crate::polygon::Polygon;
use crate::workspace::WorkspaceMeter;
use crate::Error;

/// A triangle-to-triangle adjacency across a diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Adjacency {
    pub triangle: usize,
    pub diagonal: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    /// Counterclockwise vertex-index triples.
    pub triangles: Vec<[usize; 3]>,
    pub diagonals: Vec<(usize, usize)>,
    pub neighbors: Vec<Vec<Adjacency>>,
}

/// Triangulates by repeatedly clipping ears. `O(n^2)` ear scans on typical
/// input.
pub fn triangulate_ear_clipping(poly: &Polygon) -> Result<Triangulation, Error> {
    let n = poly.len();
    let mut next: Vec<usize> = (0..n).map(|i| poly.next(i)).collect();
    let mut prev: Vec<usize> = (0..n).map(|i| poly.prev(i)).collect();
    let mut triangles = Vec::with_capacity(n - 2);
    let mut remaining = n;
    let mut cur = 0;
    let mut since_clip = 0;
    while remaining > 3 {
        if is_ear(poly, &prev, &next, cur, remaining) {
            let (a, c) = (prev[cur], next[cur]);
            triangles.push([a, cur, c]);
            next[a] = c;
            prev[c] = a;
            remaining -= 1;
            since_clip = 0;
            cur = a;
        } else {
            cur = next[cur];
            since_clip += 1;
            if since_clip > remaining {
                return Err(Error::GeneralPosition("ear clipping found no ear".into()));
            }
        }
    }
    triangles.push([prev[cur], cur, next[cur]]);
    Ok(Triangulation::from_triangles(n, triangles))
}

fn is_ear(poly: &Polygon, prev: &[usize], next: &[usize], i: usize, remaining: usize) -> bool {
    let (a, b, c) = (poly.vertex(prev[i]), poly.vertex(i), poly.vertex(next[i]));
    if orient(a, b, c) != Orientation::Left {
        return false;
    }
    // Only reflex vertices of the remaining polygon can poke into an ear.
    let mut j = next[next[i]];
    for _ in 0..remaining - 3 {
        let q = poly.vertex(j);
        if q != a && q != b && q != c {
            let pj = poly.vertex(prev[j]);
            let nj = poly.vertex(next[j]);
            if orient(pj, q, nj) != Orientation::Left && point_in_triangle(a, b, c, q) {
                return false;
            }
        }
        j = next[j];
    }
    true
}

impl Triangulation {
    /// Builds diagonals and dual adjacency from a triangle list.
    pub fn from_triangles(n: usize, triangles: Vec<[usize; 3]>) -> Self {
        let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (id, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let (u, v) = (tri[k], tri[(k + 1) % 3]);
                let is_boundary = v == (u + 1) % n || u == (v + 1) % n;
                if !is_boundary {
                    by_edge.entry((u.min(v), u.max(v))).or_default().push(id);
                }
            }
        }
        let mut neighbors = vec![Vec::new(); triangles.len()];
        let mut diagonals: Vec<(usize, usize)> = Vec::new();
        let mut keys: Vec<_> = by_edge.into_iter().collect();
        keys.sort();
        for (d, ts) in keys {
            diagonals.push(d);
            if let [a, b] = ts[..] {
                neighbors[a].push(Adjacency {
                    triangle: b,
                    diagonal: d,
                });
                neighbors[b].push(Adjacency {
                    triangle: a,
                    diagonal: d,
                });
            }
        }
        Self {
            triangles,
            diagonals,
            neighbors,
        }
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners(&self, poly: &Polygon, id: usize) -> [Point; 3] {
        self.triangles[id].map(|i| poly.vertex(i))
    }

    /// Smallest id of a closed triangle containing `q`.
    pub fn locate_triangle(&self, poly: &Polygon, q: Point) -> Result<usize, Error> {
        (0..self.len())
            .find(|&id| {
                let [a, b, c] = self.corners(poly, id);
                point_in_triangle(a, b, c, q)
            })
            .ok_or_else(|| Error::Internal(format!("no triangle contains {q}")))
    }

    /// Diagonals crossed on the unique dual-tree path from `from` to `to`.
    pub fn dual_path(&self, from: usize, to: usize) -> Vec<(usize, usize)> {
        self.dual_path_metered(from, to, &WorkspaceMeter::new())
    }

    /// [`Triangulation::dual_path`] charging its BFS bookkeeping to `meter`.
    pub(crate) fn dual_path_metered(
        &self,
        from: usize,
        to: usize,
        meter: &WorkspaceMeter,
    ) -> Vec<(usize, usize)> {
        if from == to {
            return Vec::new();
        }
        let m = self.len();
        let mut frame = meter.frame(m);
        let mut parent: Vec<usize> = vec![usize::MAX; m];
        let mut queue = VecDeque::new();
        parent[from] = from;
        queue.push_back(from);
        let mut queued = 1;
        frame.grow(1);
        while let Some(cur) = queue.pop_front() {
            frame.shrink(1);
            if cur == to {
                break;
            }
            for adj in &self.neighbors[cur] {
                if parent[adj.triangle] == usize::MAX {
                    parent[adj.triangle] = cur;
                    queue.push_back(adj.triangle);
                    queued += 1;
                    frame.grow(1);
                }
            }
        }
        debug_assert!(queued <= m);
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let p = parent[cur];
            let adj = self.neighbors[p]
                .iter()
                .find(|a| a.triangle == cur)
                .expect("tree edge");
            path.push(adj.diagonal);
            frame.grow(2);
            cur = p;
        }
        path.reverse();
        path
    }
}
