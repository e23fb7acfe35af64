//! Constant-workspace geodesics by repeatedly shrinking a cone-bounded
//! subpolygon that contains the target.
//!
//! The state is a path vertex `p` and two boundary points `q1`, `q2`. The
//! region `P'` is bounded by `p -> q1`, the counterclockwise boundary walk from
//! `q1` to `q2`, and `q2 -> p`; it always contains `t`. Every step either
//! moves `q1` forward or `q2` backward along the boundary, cuts `P'` along a
//! ray from `p`, or relocates `p` into a pocket behind a reflex vertex.

use crate::geom::{orient, Orientation, Point, Side};
use crate::polygon::{BoundaryPoint, Location, PathQuery, Polygon};
use crate::workspace::WorkspaceMeter;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MakeStepState {
    pub p: Point,
    /// Vertex index of `p` once it has left `s`.
    pub p_vertex: Option<usize>,
    /// Right end of the cone; `P'` starts here.
    pub q1: BoundaryPoint,
    /// Left end of the cone; `P'` ends here.
    pub q2: BoundaryPoint,
    /// Side advanced by the next step.
    pub next_side: Side,
    pub steps: usize,
}

impl MakeStepState {
    /// Whether `q` lies in the cutoff region.
    pub fn region_contains(&self, poly: &Polygon, q: Point) -> bool {
        poly.fan_contains(self.p, self.q1, self.q2, q)
    }

    pub fn q(&self, side: Side) -> BoundaryPoint {
        match side {
            Side::Right => self.q1,
            Side::Left => self.q2,
        }
    }

    fn set_q(&mut self, side: Side, b: BoundaryPoint) {
        match side {
            Side::Right => self.q1 = b,
            Side::Left => self.q2 = b,
        }
    }
}

/// `p = s` and a cone covering the whole polygon: both ends sit on the first
/// boundary point hit by the horizontal ray from `s` to the right. Aiming at
/// a vertex would land a rounding error away from it.
pub fn makestep_init(poly: &Polygon, q: PathQuery) -> Result<MakeStepState, Error> {
    if poly.contains(q.s) != Location::Inside {
        return Err(Error::Precondition(format!(
            "{} is not strictly inside the polygon",
            q.s
        )));
    }
    let (hit, _) = poly
        .first_ray_hit(
            q.s,
            Point::new(q.s.x + 1.0, q.s.y),
            0.0,
            f64::INFINITY,
            |_| false,
        )
        .ok_or_else(|| Error::Internal("ray from an interior point hit nothing".into()))?;
    Ok(MakeStepState {
        p: q.s,
        p_vertex: None,
        q1: hit,
        q2: hit,
        next_side: Side::Right,
        steps: 0,
    })
}

/// Strictly inside the cone swept counterclockwise from `p -> r` to `p -> l`.
fn cone_contains(p: Point, r: Point, l: Point, d: Point) -> bool {
    let (from_r, from_l) = (orient(p, r, d), orient(p, l, d));
    if orient(p, r, l) == Orientation::Left {
        from_r == Orientation::Left && from_l == Orientation::Right
    } else {
        from_r == Orientation::Left || from_l == Orientation::Right
    }
}

fn incident(poly: &Polygon, v: Option<usize>, e: usize) -> bool {
    v.is_some_and(|v| e == v || poly.next(e) == v)
}

/// One shrinking step on `side`. Returns the new state and the vertex `p` was
/// relocated to, if any.
fn advance_side(
    poly: &Polygon,
    st: &MakeStepState,
    side: Side,
    t: Point,
) -> Result<(MakeStepState, Option<usize>), Error> {
    let mut out = *st;
    let q = st.q(side);
    let p = st.p;
    // Next vertex walking from q into the chain.
    let v = match side {
        Side::Right => q.successor(poly),
        Side::Left => q.predecessor(poly),
    };
    let pv = poly.vertex(v);
    if q.point == p {
        // The cone end still sits on p after a relocation; the incident edge
        // is always visible.
        out.set_q(side, BoundaryPoint::vertex(poly, v));
        return Ok((out, None));
    }
    // Turning toward the inside of the cone narrows it.
    let inward = side.opposite().orientation();
    let turn = orient(p, q.point, pv);
    if turn == Orientation::Collinear {
        return Err(Error::GeneralPosition(format!(
            "vertex {v} is collinear with the cone ray"
        )));
    }
    if turn == inward {
        if !cone_contains(p, st.q1.point, st.q2.point, pv) {
            // Hidden behind the other end of the cone; that side moves first.
            return Ok((out, None));
        }
        if poly.segment_clear(p, pv) {
            out.set_q(side, BoundaryPoint::vertex(poly, v));
            return Ok((out, None));
        }
        // The ray toward v is blocked; split P' along p -> q'.
        let (qp, _) = poly
            .first_ray_hit(p, pv, 0.0, 1.0, |e| {
                incident(poly, st.p_vertex, e) || incident(poly, Some(v), e)
            })
            .ok_or_else(|| Error::InvariantViolation("blocked ray found no boundary hit".into()))?;
        let near_part = match side {
            Side::Right => poly.fan_contains(p, st.q1, qp, t),
            Side::Left => poly.fan_contains(p, qp, st.q2, t),
        };
        if near_part {
            out.set_q(side.opposite(), qp);
        } else {
            out.set_q(side, qp);
        }
        return Ok((out, None));
    }
    // q is a reflex vertex as seen from p: the ray p -> q continues into P'.
    let Some(qi) = q.vertex_index(poly) else {
        return Err(Error::InvariantViolation(
            "boundary turns away at a non-vertex point".into(),
        ));
    };
    let (qp, _) = poly
        .first_ray_hit(p, q.point, 1.0, f64::INFINITY, |e| {
            incident(poly, Some(qi), e)
        })
        .ok_or_else(|| {
            Error::InvariantViolation("ray past a reflex vertex found no boundary hit".into())
        })?;
    let in_pocket = match side {
        Side::Right => poly.part_contains(qp, q, t),
        Side::Left => poly.part_contains(q, qp, t),
    };
    if in_pocket {
        let here = BoundaryPoint::vertex(poly, qi);
        out.p = q.point;
        out.p_vertex = Some(qi);
        out.set_q(side, here);
        out.set_q(side.opposite(), qp);
        Ok((out, Some(qi)))
    } else {
        out.set_q(side, qp);
        Ok((out, None))
    }
}

/// One step: the scheduled side first, the other one if the scheduled side
/// cannot change the state. A cone end left on `p` by a relocation has no
/// direction yet and always goes first.
pub fn makestep_advance(
    poly: &Polygon,
    st: &MakeStepState,
    t: Point,
) -> Result<(MakeStepState, Option<usize>), Error> {
    let first = if st.q1.point == st.p {
        Side::Right
    } else if st.q2.point == st.p {
        Side::Left
    } else {
        st.next_side
    };
    for side in [first, first.opposite()] {
        let (mut next, emitted) = advance_side(poly, st, side, t)?;
        if next.p != st.p || next.q1 != st.q1 || next.q2 != st.q2 {
            next.next_side = side.opposite();
            next.steps = st.steps + 1;
            return Ok((next, emitted));
        }
    }
    Err(Error::InvariantViolation(
        "neither side of the cone can shrink".into(),
    ))
}

pub fn makestep_shortest_path(poly: &Polygon, q: PathQuery) -> Result<Vec<Point>, Error> {
    makestep_shortest_path_metered(poly, q, &WorkspaceMeter::new())
}

pub(crate) fn makestep_shortest_path_metered(
    poly: &Polygon,
    q: PathQuery,
    meter: &WorkspaceMeter,
) -> Result<Vec<Point>, Error> {
    trace(poly, q, meter, |_| {})
}

/// Runs the algorithm, handing every state to `observe`.
pub fn trace(
    poly: &Polygon,
    q: PathQuery,
    meter: &WorkspaceMeter,
    mut observe: impl FnMut(&MakeStepState),
) -> Result<Vec<Point>, Error> {
    if poly.contains(q.t) != Location::Inside {
        return Err(Error::Precondition(format!(
            "{} is not strictly inside the polygon",
            q.t
        )));
    }
    let _state = meter.frame_of::<MakeStepState>();
    let mut st = makestep_init(poly, q)?;
    let mut path = vec![q.s];
    if q.s == q.t {
        return Ok(path);
    }
    let budget = 16 * poly.len();
    observe(&st);
    while !poly.segment_clear(st.p, q.t) {
        if st.steps >= budget {
            return Err(Error::NoTermination);
        }
        let (next, emitted) = makestep_advance(poly, &st, q.t)?;
        st = next;
        if let Some(v) = emitted {
            path.push(poly.vertex(v));
        }
        observe(&st);
    }
    path.push(q.t);
    Ok(path)
}
