//! Planar arrangement of closed polygons: vertices, half-edges and faces,
//! with the punctures each face contains.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::engine::geom::{meet, signed_area2, winding, BBox, Meet, Point, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Vertex `index` of polygon `curve`.
    Polygon { curve: usize, index: usize },
    /// Transverse crossing of two polygons.
    Crossing { curves: (usize, usize) },
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub point: Point,
    pub kind: VertexKind,
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub from: usize,
    pub to: usize,
    pub curve: usize,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Outer boundary cycle (half-edges), empty for the unbounded face.
    pub cycle: Vec<usize>,
    /// Boundary cycles of components lying inside this face.
    pub holes: Vec<Vec<usize>>,
    /// Punctures (`1..=b`) inside the face.
    pub punctures: Vec<usize>,
    pub bounded: bool,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub vertices: Vec<Vertex>,
    pub half_edges: Vec<HalfEdge>,
    pub next: Vec<usize>,
    pub faces: Vec<Face>,
}

impl Arrangement {
    /// Number of crossing vertices.
    pub fn crossing_count(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v.kind, VertexKind::Crossing { .. })).count()
    }

    /// Crossing vertices met along a cycle, with repetition.
    pub fn corners(&self, cycle: &[usize]) -> Vec<usize> {
        cycle
            .iter()
            .map(|&h| self.half_edges[h].from)
            .filter(|&v| matches!(self.vertices[v].kind, VertexKind::Crossing { .. }))
            .collect()
    }

    pub fn cycle_points(&self, cycle: &[usize]) -> Vec<Point> {
        cycle.iter().map(|&h| self.vertices[self.half_edges[h].from].point.clone()).collect()
    }

    /// Bounded faces with at most two corners and no punctures: monogons
    /// and bigons whose removal shortens the configuration.
    pub fn empty_small_faces(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| {
                let face = &self.faces[f];
                face.bounded
                    && face.holes.is_empty()
                    && face.punctures.is_empty()
                    && self.corners(&face.cycle).len() <= 2
            })
            .collect()
    }
}

fn upper(d: &Point) -> bool {
    use num::{Signed, Zero};
    d.y.is_positive() || (d.y.is_zero() && d.x.is_positive())
}

/// Counterclockwise angular order of direction vectors starting from the
/// positive x axis.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let (ua, ub) = (upper(a), upper(b));
    if ua != ub {
        return if ua { Ordering::Less } else { Ordering::Greater };
    }
    let c = crate::engine::geom::cross(a, b);
    use num::{Signed, Zero};
    if c.is_zero() {
        Ordering::Equal
    } else if c.is_positive() {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Builds the arrangement of simple closed polygons that meet each other
/// only in transverse crossings. Punctures `1..b-1` sit at `(i, 0)`;
/// puncture `b` is assigned to the unbounded face.
pub fn build(b: usize, polys: &[Vec<Point>]) -> Result<Arrangement> {
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut base = Vec::new();
    for (c, poly) in polys.iter().enumerate() {
        base.push(vertices.len());
        for (i, p) in poly.iter().enumerate() {
            vertices.push(Vertex { point: p.clone(), kind: VertexKind::Polygon { curve: c, index: i } });
        }
    }
    // segments as (curve, index); their interior crossing points
    let mut segs: Vec<(usize, usize)> = Vec::new();
    for (c, poly) in polys.iter().enumerate() {
        for i in 0..poly.len() {
            segs.push((c, i));
        }
    }
    let ends = |&(c, i): &(usize, usize)| {
        let p = &polys[c];
        (&p[i], &p[(i + 1) % p.len()])
    };
    let boxes: Vec<BBox> = segs.iter().map(|s| {
        let (a, b) = ends(s);
        BBox::of_segment(a, b)
    }).collect();
    let mut on_seg: Vec<Vec<(Q, usize)>> = vec![Vec::new(); segs.len()];
    let mut by_x: Vec<usize> = (0..segs.len()).collect();
    by_x.sort_by(|&i, &j| boxes[i].lo.0.partial_cmp(&boxes[j].lo.0).unwrap_or(Ordering::Equal));
    for (oi, &si) in by_x.iter().enumerate() {
        for &sj in &by_x[oi + 1..] {
            if boxes[sj].lo.0 > boxes[si].hi.0 {
                break;
            }
            if segs[si].0 == segs[sj].0 || !boxes[si].overlaps(&boxes[sj]) {
                continue;
            }
            let (a, bb) = ends(&segs[si]);
            let (c, d) = ends(&segs[sj]);
            match meet(a, bb, c, d) {
                Meet::None => {}
                Meet::Proper(p) => {
                    let id = vertices.len();
                    let curves = (segs[si].0.min(segs[sj].0), segs[si].0.max(segs[sj].0));
                    let ta = crate::engine::geom::param_of(a, bb, &p);
                    let tc = crate::engine::geom::param_of(c, d, &p);
                    vertices.push(Vertex { point: p, kind: VertexKind::Crossing { curves } });
                    on_seg[si].push((ta, id));
                    on_seg[sj].push((tc, id));
                }
                _ => {
                    return Err(Error::Degenerate(format!(
                        "curves {} and {} meet non-transversally",
                        segs[si].0, segs[sj].0
                    )))
                }
            }
        }
    }
    let mut half_edges = Vec::new();
    for (s, &(c, i)) in segs.iter().enumerate() {
        let n = polys[c].len();
        let mut pts = std::mem::take(&mut on_seg[s]);
        pts.sort_by(|x, y| x.0.cmp(&y.0));
        let mut chain = vec![base[c] + i];
        chain.extend(pts.into_iter().map(|(_, v)| v));
        chain.push(base[c] + (i + 1) % n);
        for w in chain.windows(2) {
            half_edges.push(HalfEdge { from: w[0], to: w[1], curve: c });
            half_edges.push(HalfEdge { from: w[1], to: w[0], curve: c });
        }
    }
    // rotation system
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (h, he) in half_edges.iter().enumerate() {
        out[he.from].push(h);
    }
    let dir = |h: usize| {
        let he = &half_edges[h];
        vertices[he.to].point.sub(&vertices[he.from].point)
    };
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for list in out.iter_mut() {
        list.sort_by(|&x, &y| angle_cmp(&dir(x), &dir(y)));
        for (k, &h) in list.iter().enumerate() {
            slot.insert(h, k);
        }
    }
    let next: Vec<usize> = (0..half_edges.len())
        .map(|h| {
            let twin = h ^ 1;
            let v = half_edges[h].to;
            let list = &out[v];
            let k = slot[&twin];
            list[(k + list.len() - 1) % list.len()]
        })
        .collect();
    // cycles
    let mut seen = vec![false; half_edges.len()];
    let mut pos_cycles: Vec<(Vec<usize>, Q)> = Vec::new();
    let mut neg_cycles: Vec<Vec<usize>> = Vec::new();
    for h0 in 0..half_edges.len() {
        if seen[h0] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut h = h0;
        while !seen[h] {
            seen[h] = true;
            cyc.push(h);
            h = next[h];
        }
        let pts: Vec<Point> = cyc.iter().map(|&h| vertices[half_edges[h].from].point.clone()).collect();
        let area = signed_area2(&pts);
        use num::Signed;
        if area.is_positive() {
            pos_cycles.push((cyc, area));
        } else {
            neg_cycles.push(cyc);
        }
    }
    pos_cycles.sort_by(|x, y| x.1.cmp(&y.1));
    let cycle_pts = |cyc: &[usize]| -> Vec<Point> {
        cyc.iter().map(|&h| vertices[half_edges[h].from].point.clone()).collect()
    };
    let pos_pts: Vec<Vec<Point>> = pos_cycles.iter().map(|(c, _)| cycle_pts(c)).collect();
    // smallest positive cycle containing a point, if any
    let locate = |p: &Point| -> Result<Option<usize>> {
        for (k, pts) in pos_pts.iter().enumerate() {
            match winding(pts, p) {
                None => return Err(Error::Degenerate("point on a curve".into())),
                Some(0) => {}
                Some(_) => return Ok(Some(k)),
            }
        }
        Ok(None)
    };
    let mut faces: Vec<Face> = pos_cycles
        .iter()
        .map(|(c, _)| Face { cycle: c.clone(), holes: Vec::new(), punctures: Vec::new(), bounded: true })
        .collect();
    let mut outer = Face { cycle: Vec::new(), holes: Vec::new(), punctures: vec![b], bounded: false };
    for cyc in neg_cycles {
        // a vertex of this component lies strictly inside the enclosing face,
        // unless the positive cycle is bounded by this same component
        let v = half_edges[cyc[0]].from;
        let comp_vertices: std::collections::HashSet<usize> =
            cyc.iter().map(|&h| half_edges[h].from).collect();
        let mut host = None;
        for (k, pts) in pos_pts.iter().enumerate() {
            let own = pos_cycles[k].0.iter().any(|&h| comp_vertices.contains(&half_edges[h].from));
            if own {
                continue;
            }
            if let Some(w) = winding(pts, &vertices[v].point) {
                if w != 0 {
                    host = Some(k);
                    break;
                }
            }
        }
        match host {
            Some(k) => faces[k].holes.push(cyc),
            None => outer.holes.push(cyc),
        }
    }
    for p in 1..b {
        match locate(&Point::int(p as i64, 0))? {
            Some(k) => faces[k].punctures.push(p),
            None => outer.punctures.push(p),
        }
    }
    outer.punctures.sort();
    faces.push(outer);
    Ok(Arrangement { vertices, half_edges, next, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::geom::{frac, q};

    fn rect(x0: Q, y0: Q, x1: Q, y1: Q) -> Vec<Point> {
        vec![
            Point::new(x0.clone(), y0.clone()),
            Point::new(x1.clone(), y0),
            Point::new(x1, y1.clone()),
            Point::new(x0, y1),
        ]
    }

    #[test]
    fn two_crossing_rectangles() {
        // around {1,2} and around {2,3} on b = 5
        let a = rect(frac(1, 2), q(-1), frac(5, 2), q(1));
        let c = rect(frac(3, 2), frac(-1, 2), frac(7, 2), frac(1, 2));
        let arr = build(5, &[a, c]).unwrap();
        assert_eq!(arr.crossing_count(), 2);
        let mut counts: Vec<Vec<usize>> = arr.faces.iter().map(|f| f.punctures.clone()).collect();
        counts.sort();
        assert_eq!(counts, vec![vec![1], vec![2], vec![3], vec![4, 5]]);
        assert!(arr.empty_small_faces().is_empty());
    }

    #[test]
    fn nested_rectangles_make_holes() {
        let a = rect(frac(1, 2), q(-2), frac(7, 2), q(2));
        let c = rect(frac(3, 2), q(-1), frac(5, 2), q(1));
        let arr = build(5, &[a, c]).unwrap();
        assert_eq!(arr.faces.len(), 3);
        let ring = arr.faces.iter().find(|f| f.bounded && !f.holes.is_empty()).unwrap();
        assert_eq!(ring.punctures, vec![1, 3]);
    }

    #[test]
    fn empty_bigon_is_found() {
        let a = rect(frac(1, 2), q(-1), frac(5, 2), q(1));
        // crosses the top side of `a` twice without enclosing a puncture
        let c = rect(frac(1, 1), frac(1, 2), frac(2, 1), frac(3, 2));
        let arr = build(5, &[a, c]).unwrap();
        assert_eq!(arr.empty_small_faces().len(), 2);
    }
}
