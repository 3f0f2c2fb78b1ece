//! Piecewise-linear realizations of normal multicurves.
//!
//! A [`Layout`] fixes, for every edge of the reference triangulation, the
//! order in which the points of several normal systems sit on that edge.
//! The geometry is then determined: points on an edge are evenly spaced by
//! merged rank, arcs are straight chords, and the arcs turning around `p_1`
//! or `p_{b-1}` (whose two sides are collinear) become V shapes with an apex
//! just above or below the puncture.

use num::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::engine::geom::{frac, q, Point};
use crate::error::Result;
use crate::key::{trace, Crossing};
use crate::triangulation::{Cell, Edge, Triangulation};

/// A normal multicurve entering a layout: its weights and traced components.
#[derive(Clone, Debug)]
pub struct System {
    pub weights: Vec<u64>,
    pub comps: Vec<Vec<Crossing>>,
}

impl System {
    pub fn new(tri: &Triangulation, weights: &[u64]) -> Result<Self> {
        let comps = trace(tri, weights)?;
        Ok(System { weights: weights.to_vec(), comps })
    }
}

/// What a polygon vertex is: a point on a triangulation edge, or the apex of
/// a V arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    Edge { edge: Edge, system: usize, rank: usize },
    Apex,
}

/// Merged point orders of several normal systems on every edge.
#[derive(Clone, Debug)]
pub struct Layout {
    tri: Triangulation,
    systems: Vec<System>,
    /// `order[e]` lists `(system, rank)` from the start puncture of edge `e`.
    order: Vec<Vec<(usize, usize)>>,
}

/// A realized layout: one polygon per traced component.
#[derive(Clone, Debug)]
pub struct Realized {
    pub polygons: Vec<Vec<Point>>,
    pub tags: Vec<Vec<Tag>>,
    /// `(system, component)` for each polygon.
    pub owner: Vec<(usize, usize)>,
}

impl Layout {
    /// Systems stacked in the given order: on each edge all points of
    /// system 0 come first (nearest the start puncture), then system 1, ...
    pub fn stacked(tri: Triangulation, systems: Vec<System>) -> Self {
        let order = (0..tri.edge_count())
            .map(|e| {
                let mut v = Vec::new();
                for (s, sys) in systems.iter().enumerate() {
                    v.extend((0..sys.weights[e] as usize).map(|r| (s, r)));
                }
                v
            })
            .collect();
        Layout { tri, systems, order }
    }

    /// A random interleaving on each edge; every system keeps its own order.
    pub fn shuffled<R: Rng>(tri: Triangulation, systems: Vec<System>, rng: &mut R) -> Self {
        let order = (0..tri.edge_count())
            .map(|e| {
                let mut labels: Vec<usize> = Vec::new();
                for (s, sys) in systems.iter().enumerate() {
                    labels.extend(std::iter::repeat_n(s, sys.weights[e] as usize));
                }
                labels.shuffle(rng);
                let mut next = vec![0usize; systems.len()];
                labels
                    .into_iter()
                    .map(|s| {
                        next[s] += 1;
                        (s, next[s] - 1)
                    })
                    .collect()
            })
            .collect();
        Layout { tri, systems, order }
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn systems(&self) -> &[System] {
        &self.systems
    }

    pub fn order(&self, e: Edge) -> &[(usize, usize)] {
        &self.order[self.tri.index(e)]
    }

    /// Exchanges two neighbouring points on an edge.
    pub fn swap_adjacent(&mut self, e: Edge, pos: usize) {
        let idx = self.tri.index(e);
        self.order[idx].swap(pos, pos + 1);
    }

    /// Merged position of every `(system, rank)` on every edge.
    fn positions(&self) -> Vec<Vec<Vec<usize>>> {
        let mut pos: Vec<Vec<Vec<usize>>> = self
            .systems
            .iter()
            .map(|s| s.weights.iter().map(|&w| vec![0; w as usize]).collect())
            .collect();
        for (e, list) in self.order.iter().enumerate() {
            for (m, &(s, r)) in list.iter().enumerate() {
                pos[s][e][r] = m;
            }
        }
        pos
    }

    /// Location of merged point `m` out of `n` on edge `e`.
    pub fn edge_point(&self, e: Edge, m: usize, n: usize) -> Point {
        let b = self.tri.b() as i64;
        let r = (m + 1) as i64;
        let n1 = (n + 1) as i64;
        match e {
            Edge::S(i) => Point::new(q(i as i64) + frac(r, n1), q(0)),
            Edge::U(1) => Point::new(q(1) - frac(r, 4 * n1), q(0)),
            Edge::U(i) if i as i64 == b - 1 => Point::new(q(b - 1) + frac(r, 4 * n1), q(0)),
            Edge::U(i) => Point::int(i as i64, r),
            Edge::D(i) => Point::int(i as i64, -r),
        }
    }

    /// Positions of all points and V apexes.
    pub fn realize(&self) -> Realized {
        let tri = &self.tri;
        let b = tri.b();
        let pos = self.positions();
        let count = |e: Edge| self.order[tri.index(e)].len();
        let apex_scale = |u: Edge, s: Edge| {
            let nu = count(u) as i64;
            let ns = count(s) as i64;
            let m = nu + 1;
            let k = (nu + ns) * m + nu + 1;
            (m, frac(1, 10 * (nu + 1) * k))
        };
        let (m_left, eps_left) = apex_scale(Edge::U(1), Edge::S(1));
        let (m_right, eps_right) = apex_scale(Edge::U(b - 1), Edge::S(b - 2));
        let ns_right = count(Edge::S(b - 2));
        let mut out = Realized { polygons: Vec::new(), tags: Vec::new(), owner: Vec::new() };
        for (s, sys) in self.systems.iter().enumerate() {
            for (ci, comp) in sys.comps.iter().enumerate() {
                let n = comp.len();
                let mut poly = Vec::with_capacity(n + 4);
                let mut tags = Vec::with_capacity(n + 4);
                for k in 0..n {
                    let c = comp[k];
                    let ei = tri.index(c.edge);
                    let m = pos[s][ei][c.rank];
                    poly.push(self.edge_point(c.edge, m, count(c.edge)));
                    tags.push(Tag::Edge { edge: c.edge, system: s, rank: c.rank });
                    let next = comp[(k + 1) % n];
                    let cell = tri.edge_cells(c.edge)[if c.forward { 1 } else { 0 }];
                    let up = matches!(cell, Cell::Upper(_));
                    let pair = (c.edge, next.edge);
                    let mnext = pos[s][tri.index(next.edge)][next.rank];
                    let apex = match cell {
                        Cell::Upper(1) | Cell::Lower(1)
                            if pair == (Edge::U(1), Edge::S(1)) || pair == (Edge::S(1), Edge::U(1)) =>
                        {
                            let (ra, rc) = if c.edge == Edge::U(1) { (m, mnext) } else { (mnext, m) };
                            let h = &eps_left * q(((ra + rc) as i64) * m_left + ra as i64 + 1);
                            Some(Point::new(q(1), if up { h } else { -h }))
                        }
                        Cell::Upper(i) | Cell::Lower(i)
                            if i == b - 2
                                && (pair == (Edge::U(b - 1), Edge::S(b - 2))
                                    || pair == (Edge::S(b - 2), Edge::U(b - 1))) =>
                        {
                            let (ra, rs) = if c.edge == Edge::U(b - 1) { (m, mnext) } else { (mnext, m) };
                            let rc = ns_right - 1 - rs;
                            let h = &eps_right * q(((ra + rc) as i64) * m_right + ra as i64 + 1);
                            Some(Point::new(q(b as i64 - 1), if up { h } else { -h }))
                        }
                        _ => None,
                    };
                    if let Some(p) = apex {
                        debug_assert!(!p.y.is_zero());
                        poly.push(p);
                        tags.push(Tag::Apex);
                    }
                }
                out.polygons.push(poly);
                out.tags.push(tags);
                out.owner.push((s, ci));
            }
        }
        out
    }
}

/// Exact crossing count of a layout, read off cell by cell: two arcs of
/// different components in the same cell cross once when their endpoints
/// interleave around the cell and not at all otherwise.
pub fn layout_crossings(layout: &Layout) -> usize {
    let tri = layout.triangulation();
    let pos = layout.positions();
    // boundary coordinate of a point around its cell, counterclockwise from
    // the corner at p_i for Upper cells (left side runs outward from p_i)
    let mut per_cell: Vec<Vec<(usize, usize)>> = vec![Vec::new(); tri.cell_count()];
    for (s, sys) in layout.systems().iter().enumerate() {
        for comp in &sys.comps {
            let n = comp.len();
            for k in 0..n {
                let c = comp[k];
                let d = comp[(k + 1) % n];
                let cell = tri.edge_cells(c.edge)[if c.forward { 1 } else { 0 }];
                let x = boundary_coord(layout, cell, c.edge, pos[s][tri.index(c.edge)][c.rank]);
                let y = boundary_coord(layout, cell, d.edge, pos[s][tri.index(d.edge)][d.rank]);
                per_cell[tri.cell_index(cell)].push((x.min(y), x.max(y)));
            }
        }
    }
    let mut total = 0;
    for arcs in per_cell {
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                let (a0, a1) = arcs[i];
                let (b0, b1) = arcs[j];
                let inside = |x: usize| a0 < x && x < a1;
                if inside(b0) != inside(b1) {
                    total += 1;
                }
            }
        }
    }
    total
}

/// Position of a merged point along the boundary of a cell, walking from
/// the corner `p_i` along the base to `p_{i+1}`, then out along the right
/// side to infinity, then back along the left side to `p_i`.
fn boundary_coord(layout: &Layout, cell: Cell, e: Edge, m: usize) -> usize {
    let tri = layout.triangulation();
    let [l, s, r] = tri.cell_edges(cell);
    let nl = layout.order(l).len();
    let ns = layout.order(s).len();
    let nr = layout.order(r).len();
    if e == s {
        m
    } else if e == r {
        ns + m
    } else {
        debug_assert_eq!(e, l);
        ns + nr + (nl - 1 - m)
    }
}
