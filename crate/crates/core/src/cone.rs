//! Two-segment funnel walk over an implicit cell decomposition.
//!
//! The walker keeps a cusp and one bound per side. Each bound remembers the
//! cell entered through the window that set it. When a window endpoint
//! crosses the opposite bound, that bound becomes the next cusp and the walk
//! resumes from its cell, so only windows of the sleeve beyond the new cusp
//! are ever wrapped around.

use std::fmt::Debug;

use crate::geom::{orient, Orientation, Point};
use crate::workspace::WorkspaceMeter;
use crate::Error;

/// A window endpoint, tagged with its polygon vertex when it is one, or with
/// the edge it was computed on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Portal {
    pub point: Point,
    pub vertex: Option<usize>,
    pub edge: Option<usize>,
}

impl Portal {
    pub fn free(point: Point) -> Self {
        Self {
            point,
            vertex: None,
            edge: None,
        }
    }

    pub fn at_vertex(point: Point, vertex: usize) -> Self {
        Self {
            point,
            vertex: Some(vertex),
            edge: None,
        }
    }

    pub fn on_edge(point: Point, edge: usize) -> Self {
        Self {
            point,
            vertex: None,
            edge: Some(edge),
        }
    }
}

/// An implicit decomposition of the polygon into convex cells that can be
/// navigated toward a target.
pub(crate) trait Corridor {
    type Cell: Copy + PartialEq + Debug;

    fn locate(&self, q: Point) -> Result<Self::Cell, Error>;

    /// Closed containment.
    fn cell_contains(&self, cell: &Self::Cell, q: Point) -> bool;

    /// The window out of `cell` on the way to `t`, as (left, right) endpoints
    /// seen when leaving, and the cell beyond it.
    fn next_toward(
        &self,
        cell: &Self::Cell,
        t: Point,
    ) -> Result<(Portal, Portal, Self::Cell), Error>;

    /// A point giving the exact direction from `apex` toward `p`. A computed
    /// point on an edge incident to the apex is replaced by the edge's far
    /// endpoint.
    fn direction(&self, _apex: &Portal, p: &Portal) -> Point {
        p.point
    }
}

/// Cusp and the two rays bounding where the path can continue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VisibilityCone {
    pub cusp: Point,
    pub left: Point,
    pub right: Point,
}

impl VisibilityCone {
    pub fn has_positive_width(&self) -> bool {
        orient(self.cusp, self.right, self.left) == Orientation::Left
    }
}

#[derive(Clone, Copy, Debug)]
struct Bound<C> {
    portal: Portal,
    cell: C,
}

/// What a single [`ConeWalk::step`] did.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Step<C> {
    /// Crossed the window `(left, right)` into `cell`.
    Crossed {
        left: Portal,
        right: Portal,
        cell: C,
    },
    /// A bound became the cusp; the walk resumes from `cell`.
    Emitted { vertex: usize, cell: C },
    /// The target is visible from the cusp.
    Done,
}

pub(crate) struct ConeWalk<'c, C: Corridor> {
    corridor: &'c C,
    target: Point,
    apex: Portal,
    left: Bound<C::Cell>,
    right: Bound<C::Cell>,
    cell: C::Cell,
}

impl<'c, C: Corridor> ConeWalk<'c, C> {
    pub fn new(corridor: &'c C, apex: Portal, cell: C::Cell, target: Point) -> Self {
        let b = Bound { portal: apex, cell };
        Self {
            corridor,
            target,
            apex,
            left: b,
            right: b,
            cell,
        }
    }

    pub fn cusp(&self) -> Portal {
        self.apex
    }

    pub fn cone(&self) -> VisibilityCone {
        VisibilityCone {
            cusp: self.apex.point,
            left: self.left.portal.point,
            right: self.right.portal.point,
        }
    }

    fn restart(&mut self, b: Bound<C::Cell>) -> Result<Step<C::Cell>, Error> {
        let vertex = b.portal.vertex.ok_or_else(|| {
            Error::GeneralPosition(format!(
                "path would bend at non-vertex point {}",
                b.portal.point
            ))
        })?;
        self.apex = b.portal;
        self.cell = b.cell;
        self.left = b;
        self.right = b;
        Ok(Step::Emitted {
            vertex,
            cell: b.cell,
        })
    }

    pub fn step(&mut self) -> Result<Step<C::Cell>, Error> {
        let last = self.corridor.cell_contains(&self.cell, self.target);
        let (l, r, next) = if last {
            let t = Portal::free(self.target);
            (t, t, self.cell)
        } else {
            self.corridor.next_toward(&self.cell, self.target)?
        };
        let apex = self.apex.point;
        let c = self.corridor;
        let (bl, br) = (
            c.direction(&self.apex, &self.left.portal),
            c.direction(&self.apex, &self.right.portal),
        );
        let (dl, dr) = (c.direction(&self.apex, &l), c.direction(&self.apex, &r));

        if orient(apex, br, dr) != Orientation::Right {
            if apex == br || orient(apex, bl, dr) != Orientation::Left {
                self.right = Bound {
                    portal: r,
                    cell: next,
                };
            } else {
                return self.restart(self.left);
            }
        }
        let br = c.direction(&self.apex, &self.right.portal);
        if orient(apex, bl, dl) != Orientation::Left {
            if apex == bl || orient(apex, br, dl) != Orientation::Right {
                self.left = Bound {
                    portal: l,
                    cell: next,
                };
            } else {
                return self.restart(self.right);
            }
        }
        if last {
            return Ok(Step::Done);
        }
        self.cell = next;
        Ok(Step::Crossed {
            left: l,
            right: r,
            cell: next,
        })
    }
}

/// Runs the walk from `s` to `t`, returning the emitted vertex indices and
/// reporting every step to `observe`.
pub(crate) fn cone_walk<C: Corridor>(
    corridor: &C,
    s: Point,
    t: Point,
    budget: usize,
    meter: &WorkspaceMeter,
    mut observe: impl FnMut(&Step<C::Cell>),
) -> Result<Vec<usize>, Error> {
    let _state = meter.frame_of::<ConeWalk<'_, C>>();
    let _locals = meter.frame(2);
    let start = corridor.locate(s)?;
    let mut walk = ConeWalk::new(corridor, Portal::free(s), start, t);
    let mut emitted = Vec::new();
    for _ in 0..budget {
        let step = walk.step()?;
        observe(&step);
        match step {
            Step::Done => return Ok(emitted),
            Step::Emitted { vertex, .. } => emitted.push(vertex),
            Step::Crossed { .. } => {}
        }
    }
    Err(Error::NoTermination)
}
