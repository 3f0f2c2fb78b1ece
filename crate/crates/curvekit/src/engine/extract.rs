//! Reading normal coordinates off an arbitrary simple polygon.

use num::{Signed, Zero};

use crate::engine::geom::{is_simple, param_of, q, Point, Q};
use crate::error::{Error, Result};
use crate::key::CurveKey;
use crate::triangulation::{Cell, Edge, Triangulation};

/// Triangulation cell containing a point off every triangulation line.
fn cell_at(b: usize, p: &Point) -> Cell {
    let x = &p.x;
    let i = if *x < q(2) {
        1
    } else if *x > q(b as i64 - 2) {
        b - 2
    } else {
        x.floor().to_integer().try_into().expect("small coordinate")
    };
    if p.y.is_positive() {
        Cell::Upper(i)
    } else {
        Cell::Lower(i)
    }
}

/// The edge through a point lying on exactly one triangulation line.
fn edge_at(b: usize, p: &Point) -> Result<Edge> {
    let last = q(b as i64 - 1);
    if p.y.is_zero() {
        if p.x < q(1) {
            return Ok(Edge::U(1));
        }
        if p.x > last {
            return Ok(Edge::U(b - 1));
        }
        if p.x.is_integer() {
            return Err(Error::Degenerate(format!("curve passes through puncture at x = {}", p.x)));
        }
        let i: usize = p.x.floor().to_integer().try_into().expect("small coordinate");
        return Ok(Edge::S(i));
    }
    let i: usize = p.x.to_integer().try_into().expect("small coordinate");
    Ok(if p.y.is_positive() { Edge::U(i) } else { Edge::D(i) })
}

fn on_vertical(b: usize, x: &Q) -> bool {
    x.is_integer() && *x >= q(2) && *x <= q(b as i64 - 2)
}

/// Cyclic sequence of `(edge, forward)` crossings of a closed polygon with
/// the triangulation, before any reduction.
pub fn raw_crossings(b: usize, poly: &[Point]) -> Result<Vec<(Edge, bool)>> {
    let tri = Triangulation::new(b);
    let n = poly.len();
    // split every side at the axis and the vertical lines, recording the
    // cell of each open piece
    let mut pieces: Vec<(Cell, Point, Point)> = Vec::new();
    for i in 0..n {
        let a = &poly[i];
        let c = &poly[(i + 1) % n];
        if a.y.is_zero() && c.y.is_zero() {
            return Err(Error::Degenerate("polygon side runs along the axis".into()));
        }
        if a.x == c.x && on_vertical(b, &a.x) {
            return Err(Error::Degenerate("polygon side runs along a vertical edge".into()));
        }
        let mut ts: Vec<Q> = vec![Q::zero(), q(1)];
        if (a.y.is_positive() && c.y.is_negative()) || (a.y.is_negative() && c.y.is_positive()) {
            ts.push(&a.y / (&a.y - &c.y));
        }
        if a.x != c.x {
            let (lo, hi) = if a.x < c.x { (&a.x, &c.x) } else { (&c.x, &a.x) };
            let mut k = lo.ceil().to_integer();
            let hi_i = hi.floor().to_integer();
            while k <= hi_i {
                let kq = Q::from_integer(k.clone());
                if on_vertical(b, &kq) {
                    ts.push(param_of(a, c, &Point::new(kq.clone(), q(0))));
                }
                k += 1;
            }
        }
        ts.sort();
        ts.dedup();
        for w in ts.windows(2) {
            let p0 = a.lerp(c, &w[0]);
            let p1 = a.lerp(c, &w[1]);
            let mid = p0.midpoint(&p1);
            pieces.push((cell_at(b, &mid), p0, p1));
        }
    }
    let m = pieces.len();
    let mut out = Vec::new();
    for k in 0..m {
        let (c0, _, end) = &pieces[k];
        let (c1, _, _) = &pieces[(k + 1) % m];
        let x = &end.x;
        if end.y.is_zero() && x.is_integer() && *x >= q(1) && *x <= q(b as i64 - 1) {
            return Err(Error::Degenerate(format!("curve passes through puncture at x = {x}")));
        }
        if c0 == c1 {
            continue;
        }
        let e = edge_at(b, end)?;
        let cells = tri.edge_cells(e);
        if cells[0] == *c0 && cells[1] == *c1 {
            out.push((e, true));
        } else if cells[1] == *c0 && cells[0] == *c1 {
            out.push((e, false));
        } else {
            return Err(Error::Degenerate(format!("crossing from {c0:?} to {c1:?} at an edge endpoint")));
        }
    }
    Ok(out)
}

/// Removes back-and-forth crossings of the same edge, cyclically.
pub fn reduce_crossings(seq: &[(Edge, bool)]) -> Vec<(Edge, bool)> {
    let mut st: Vec<(Edge, bool)> = Vec::new();
    for &c in seq {
        if st.last().map(|l| l.0) == Some(c.0) {
            st.pop();
        } else {
            st.push(c);
        }
    }
    let mut lo = 0;
    while st.len() - lo >= 2 && st[lo].0 == st[st.len() - 1].0 {
        st.pop();
        lo += 1;
    }
    st[lo..].to_vec()
}

/// Normal coordinates of a closed simple polygon.
pub fn polygon_key(b: usize, poly: &[Point], check_simple: bool) -> Result<CurveKey> {
    if poly.len() < 3 {
        return Err(Error::Inessential("empty configuration".into()));
    }
    if check_simple && !is_simple(poly) {
        return Err(Error::Degenerate("polygon is not simple".into()));
    }
    let seq = reduce_crossings(&raw_crossings(b, poly)?);
    if seq.is_empty() {
        return Err(Error::Inessential("curve bounds a disk with at most one puncture".into()));
    }
    let tri = Triangulation::new(b);
    let mut w = vec![0u64; tri.edge_count()];
    for (e, _) in seq {
        w[tri.index(e)] += 1;
    }
    CurveKey::new(b, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_cyclic() {
        let seq = vec![(Edge::S(1), true), (Edge::U(2), true), (Edge::U(2), false), (Edge::S(1), false)];
        assert!(reduce_crossings(&seq).is_empty());
        let seq = vec![(Edge::U(3), true), (Edge::S(1), true), (Edge::U(2), true), (Edge::U(3), false)];
        assert_eq!(reduce_crossings(&seq), vec![(Edge::S(1), true), (Edge::U(2), true)]);
    }

    #[test]
    fn square_around_two_punctures() {
        let b = 6;
        let sq = vec![
            Point::new(crate::engine::geom::frac(3, 2), q(-1)),
            Point::new(crate::engine::geom::frac(7, 2), q(-1)),
            Point::new(crate::engine::geom::frac(7, 2), q(1)),
            Point::new(crate::engine::geom::frac(3, 2), q(1)),
        ];
        let k = polygon_key(b, &sq, true).unwrap();
        assert_eq!(k, crate::topology::block_curve(b, &[2, 3]).unwrap());
        let tiny = vec![
            Point::new(crate::engine::geom::frac(3, 2), q(-1)),
            Point::new(crate::engine::geom::frac(5, 2), q(-1)),
            Point::new(crate::engine::geom::frac(5, 2), q(1)),
            Point::new(crate::engine::geom::frac(3, 2), q(1)),
        ];
        assert!(matches!(polygon_key(b, &tiny, true), Err(Error::Inessential(_))));
    }
}
