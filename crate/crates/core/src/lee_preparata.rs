//! The classic linear-time, linear-space funnel algorithm over a precomputed
//! triangulation.

use std::collections::VecDeque;

use crate::geom::{orient, Orientation, Point, Side};
use crate::polygon::{Location, PathQuery, Polygon};
use crate::triangulate::Triangulation;
use crate::workspace::WorkspaceMeter;
use crate::Error;

/// Cusp plus the two concave chains reaching the current diagonal.
///
/// Walking outward from the cusp, the left chain turns left at every vertex
/// and the right chain turns right. The last vertex of each chain is the
/// matching endpoint of the current diagonal; an empty chain means the cusp
/// itself is that endpoint.
#[derive(Clone, Debug)]
pub struct Funnel {
    pub cusp: Point,
    pub left: VecDeque<Point>,
    pub right: VecDeque<Point>,
    pub pushes: usize,
    pub pops: usize,
}

impl Funnel {
    pub fn new(cusp: Point) -> Self {
        Self {
            cusp,
            left: VecDeque::new(),
            right: VecDeque::new(),
            pushes: 0,
            pops: 0,
        }
    }

    pub fn chain(&self, side: Side) -> &VecDeque<Point> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Current diagonal endpoint on `side`.
    pub fn end(&self, side: Side) -> Point {
        self.chain(side).back().copied().unwrap_or(self.cusp)
    }

    /// Makes `endpoint` the new end of the chain on `side`, appending any
    /// vertices that become part of the geodesic to `out`.
    pub fn step(&mut self, endpoint: Point, side: Side, out: &mut Vec<Point>) {
        let turn = side.orientation();
        let cusp = self.cusp;
        let (own, other) = match side {
            Side::Left => (&mut self.left, &mut self.right),
            Side::Right => (&mut self.right, &mut self.left),
        };
        // Graham-scan the chain on this side.
        while let Some(&last) = own.back() {
            let prev = if own.len() >= 2 {
                own[own.len() - 2]
            } else {
                cusp
            };
            if orient(prev, last, endpoint) == turn {
                break;
            }
            own.pop_back();
            self.pops += 1;
        }
        if own.is_empty() {
            // The endpoint may lie beyond the opposite chain's first segment;
            // the cusp then walks along that chain.
            let mut cusp = cusp;
            while let Some(&head) = other.front() {
                if orient(cusp, head, endpoint) != turn.flip() {
                    break;
                }
                out.push(head);
                cusp = head;
                other.pop_front();
                self.pops += 1;
            }
            self.cusp = cusp;
        }
        own.push_back(endpoint);
        self.pushes += 1;
    }

    /// Chain concavity as seen from the cusp.
    pub fn is_concave(&self) -> bool {
        [(Side::Left, &self.left), (Side::Right, &self.right)]
            .into_iter()
            .all(|(side, chain)| {
                let mut prev2 = None;
                let mut prev = self.cusp;
                chain.iter().all(|&p| {
                    let ok = prev2.is_none_or(|a| orient(a, prev, p) == side.orientation());
                    prev2 = Some(prev);
                    prev = p;
                    ok
                })
            })
    }
}

/// Geodesic from `q.s` to `q.t`; `tr` must triangulate `poly`.
pub fn lp_shortest_path(
    poly: &Polygon,
    tr: &Triangulation,
    q: PathQuery,
) -> Result<Vec<Point>, Error> {
    lp_shortest_path_metered(poly, tr, q, &WorkspaceMeter::new())
}

pub(crate) fn lp_shortest_path_metered(
    poly: &Polygon,
    tr: &Triangulation,
    q: PathQuery,
    meter: &WorkspaceMeter,
) -> Result<Vec<Point>, Error> {
    trace(poly, tr, q, meter, |_| {})
}

/// Runs the funnel walk and hands the funnel to `observe` after every step.
pub fn trace(
    poly: &Polygon,
    tr: &Triangulation,
    q: PathQuery,
    meter: &WorkspaceMeter,
    mut observe: impl FnMut(&Funnel),
) -> Result<Vec<Point>, Error> {
    for p in [q.s, q.t] {
        if poly.contains(p) != Location::Inside {
            return Err(Error::Precondition(format!(
                "{p} is not strictly inside the polygon"
            )));
        }
    }
    let mut out = vec![q.s];
    if q.s == q.t {
        return Ok(out);
    }
    let _locals = meter.frame(8);
    let from = tr.locate_triangle(poly, q.s)?;
    let to = tr.locate_triangle(poly, q.t)?;
    let diagonals = tr.dual_path_metered(from, to, meter);
    let _path_words = meter.frame(2 * diagonals.len());

    let mut funnel = Funnel::new(q.s);
    let mut chain_words = meter.frame(0);
    let mut charged = 0;
    let mut recharge = |f: &Funnel, frame: &mut crate::workspace::Frame<'_>| {
        let now = 2 * (f.left.len() + f.right.len());
        if now > charged {
            frame.grow(now - charged);
        } else {
            frame.shrink(charged - now);
        }
        charged = now;
    };

    if let Some(&(a, b)) = diagonals.first() {
        let (mut left, mut right) = (b, a);
        if orient(q.s, poly.vertex(a), poly.vertex(b)) == Orientation::Right {
            std::mem::swap(&mut left, &mut right);
        }
        funnel.step(poly.vertex(left), Side::Left, &mut out);
        funnel.step(poly.vertex(right), Side::Right, &mut out);
        recharge(&funnel, &mut chain_words);
        observe(&funnel);
        for &(a, b) in &diagonals[1..] {
            let (side, fresh, keep) = if a == left || b == left {
                (Side::Right, if a == left { b } else { a }, left)
            } else if a == right || b == right {
                (Side::Left, if a == right { b } else { a }, right)
            } else {
                return Err(Error::Internal(
                    "consecutive diagonals share no endpoint".into(),
                ));
            };
            match side {
                Side::Left => left = fresh,
                Side::Right => right = fresh,
            }
            debug_assert!(keep == left || keep == right);
            funnel.step(poly.vertex(fresh), side, &mut out);
            recharge(&funnel, &mut chain_words);
            observe(&funnel);
        }
    }
    funnel.step(q.t, Side::Left, &mut out);
    recharge(&funnel, &mut chain_words);
    observe(&funnel);
    debug_assert!(funnel.pops <= funnel.pushes && funnel.pushes <= 2 * poly.len() + 2);
    out.extend(funnel.left.iter().copied());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::oracle_shortest_path;
    use crate::triangulate::triangulate_ear_clipping;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn run(poly: &Polygon, s: Point, t: Point) -> Vec<Point> {
        let tr = triangulate_ear_clipping(poly).unwrap();
        lp_shortest_path(poly, &tr, PathQuery::new(s, t)).unwrap()
    }

    #[test]
    fn fixture_paths() {
        assert_eq!(
            run(&fixtures::square(), p(1., 1.), p(3., 3.)),
            vec![p(1., 1.), p(3., 3.)]
        );
        assert_eq!(
            run(&fixtures::l_shape(), p(3.5, 1.), p(1., 3.5)),
            vec![p(3.5, 1.), p(2., 2.), p(1., 3.5)]
        );
        assert_eq!(
            run(&fixtures::square(), p(1., 1.), p(1., 1.)),
            vec![p(1., 1.)]
        );
    }

    #[test]
    fn comb_matches_oracle() {
        for k in 1..6 {
            let poly = fixtures::comb(k);
            let (s, t) = fixtures::comb_query(k);
            let got = run(&poly, s, t);
            let want = oracle_shortest_path(&poly, PathQuery::new(s, t)).unwrap();
            assert_eq!(got, want);
            assert_eq!(got.len(), k + 2, "one bend per tooth");
        }
    }

    #[test]
    fn funnel_step_cases() {
        let mut f = Funnel::new(p(0., 0.));
        let mut out = Vec::new();
        f.step(p(1., 1.), Side::Left, &mut out);
        assert!(out.is_empty());
        assert_eq!(f.left, [p(1., 1.)]);

        // Endpoint collinear with the cusp and the right chain head is visible.
        let mut f = Funnel::new(p(0., 0.));
        f.step(p(-1., 2.), Side::Left, &mut out);
        f.step(p(1., 1.), Side::Right, &mut out);
        f.step(p(2., 2.), Side::Left, &mut out);
        assert!(out.is_empty());
        assert_eq!(f.cusp, p(0., 0.));

        // An endpoint behind the whole right chain moves the cusp to its end.
        let mut f = Funnel::new(p(0., 0.));
        f.step(p(-1., 3.), Side::Left, &mut out);
        f.step(p(1., 1.), Side::Right, &mut out);
        f.step(p(1.5, 1.2), Side::Right, &mut out);
        assert!(f.is_concave());
        f.step(p(3., 1.), Side::Left, &mut out);
        assert_eq!(out, vec![p(1., 1.), p(1.5, 1.2)]);
        assert_eq!(f.cusp, p(1.5, 1.2));
        assert!(f.right.is_empty());
    }

    #[test]
    fn funnel_stays_concave_and_linear() {
        for seed in 0..25 {
            let poly = crate::polygen::generate_polygon(40, seed).unwrap();
            let tr = triangulate_ear_clipping(&poly).unwrap();
            let pts = crate::polygen::sample_query_points(&poly).points;
            for (i, &s) in pts.iter().enumerate().step_by(3) {
                for &t in pts.iter().skip(i + 1).step_by(4) {
                    let want = oracle_shortest_path(&poly, PathQuery::new(s, t)).unwrap();
                    let mut last = (0, 0);
                    let got = trace(
                        &poly,
                        &tr,
                        PathQuery::new(s, t),
                        &WorkspaceMeter::new(),
                        |f| {
                            assert!(f.is_concave());
                            last = (f.pushes, f.pops);
                        },
                    )
                    .unwrap();
                    assert!(last.1 <= last.0 && last.0 <= 2 * poly.len());
                    assert_eq!(
                        got,
                        want,
                        "seed {seed} s {s} t {t} lengths {} {}",
                        crate::oracle::path_length(&got),
                        crate::oracle::path_length(&want)
                    );
                }
            }
        }
    }
}
