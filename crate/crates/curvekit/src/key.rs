//! Curve keys: normal coordinates with respect to the reference
//! triangulation, plus the tracing machinery that turns a weight vector into
//! an explicit cyclic sequence of edge crossings.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triangulation::{Cell, Edge, Triangulation};
use crate::word::Letter;

/// Canonical name of an isotopy class of essential simple closed curves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawKey")]
pub struct CurveKey {
    b: usize,
    weights: Vec<u64>,
}

#[derive(Deserialize)]
struct RawKey {
    b: usize,
    weights: Vec<u64>,
}

impl TryFrom<RawKey> for CurveKey {
    type Error = Error;
    fn try_from(raw: RawKey) -> Result<Self> {
        CurveKey::new(raw.b, raw.weights)
    }
}

impl fmt::Debug for CurveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveKey(b={}, {:?})", self.b, self.weights)
    }
}

impl CurveKey {
    /// Validates matching conditions, connectedness and essentiality.
    pub fn new(b: usize, weights: Vec<u64>) -> Result<Self> {
        if b < 4 {
            return Err(Error::Unsupported(format!("b = {b} < 4")));
        }
        let tri = Triangulation::new(b);
        if weights.len() != tri.edge_count() {
            return Err(Error::MalformedKey(format!(
                "expected {} weights, got {}",
                tri.edge_count(),
                weights.len()
            )));
        }
        let comps = trace(&tri, &weights)?;
        match comps.len() {
            0 => return Err(Error::Inessential("empty curve".into())),
            1 => {}
            n => return Err(Error::MalformedKey(format!("{n} components"))),
        }
        let inside = inside_set(&tri, &comps[0]);
        if inside.len() < 2 || inside.len() > b - 2 {
            return Err(Error::Inessential(format!(
                "curve bounds a disk with {} punctures",
                inside.len()
            )));
        }
        Ok(CurveKey { b, weights })
    }

    pub(crate) fn new_unchecked(b: usize, weights: Vec<u64>) -> Self {
        CurveKey { b, weights }
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn triangulation(&self) -> Triangulation {
        Triangulation::new(self.b)
    }

    /// The cyclic sequence of edge crossings of the normal representative.
    pub fn crossings(&self) -> Vec<Crossing> {
        let tri = self.triangulation();
        let mut comps = trace(&tri, &self.weights).expect("validated key");
        comps.pop().expect("one component")
    }

    /// Cyclically reduced word in the free generators dual to the `u` edges.
    pub fn word(&self) -> Vec<Letter> {
        let tri = self.triangulation();
        word_of(&tri, &self.crossings())
    }
}

/// One crossing of a traced curve with a triangulation edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub edge: Edge,
    /// Rank of the point among the curve's points on that edge, counted
    /// from the edge's start puncture.
    pub rank: usize,
    /// `true` when the curve passes from `edge_cells(edge)[0]` to `[1]`.
    pub forward: bool,
}

/// Corner arc counts `(at p_i, at p_{i+1}, at infinity)` for a cell with side
/// weights `(left, base, right)`, or `None` when matching fails.
pub fn corner_counts(l: u64, s: u64, r: u64) -> Option<[u64; 3]> {
    if !(l + s + r).is_multiple_of(2) {
        return None;
    }
    let c0 = (l + s) as i128 - r as i128;
    let c1 = (s + r) as i128 - l as i128;
    let c2 = (r + l) as i128 - s as i128;
    if c0 < 0 || c1 < 0 || c2 < 0 {
        return None;
    }
    Some([(c0 / 2) as u64, (c1 / 2) as u64, (c2 / 2) as u64])
}

/// A normal arc inside one cell, joining `(edge_a, rank_a)` to
/// `(edge_b, rank_b)`; `corner` is 0, 1 or 2 as in [`corner_counts`].
#[derive(Clone, Copy, Debug)]
pub struct NormalArc {
    pub cell: Cell,
    pub corner: usize,
    pub a: (Edge, usize),
    pub b: (Edge, usize),
}

/// All normal arcs of a weight vector, cell by cell.
pub fn normal_arcs(tri: &Triangulation, weights: &[u64]) -> Result<Vec<NormalArc>> {
    let mut arcs = Vec::new();
    for cell in tri.cells() {
        let [le, se, re] = tri.cell_edges(cell);
        let (l, s, r) = (
            weights[tri.index(le)],
            weights[tri.index(se)],
            weights[tri.index(re)],
        );
        let [c0, c1, c2] = corner_counts(l, s, r).ok_or_else(|| {
            Error::MalformedKey(format!("matching fails in cell {cell:?}: ({l},{s},{r})"))
        })?;
        for k in 0..c0 as usize {
            arcs.push(NormalArc { cell, corner: 0, a: (le, k), b: (se, k) });
        }
        for k in 0..c1 as usize {
            arcs.push(NormalArc {
                cell,
                corner: 1,
                a: (se, s as usize - 1 - k),
                b: (re, k),
            });
        }
        for k in 0..c2 as usize {
            arcs.push(NormalArc {
                cell,
                corner: 2,
                a: (re, r as usize - 1 - k),
                b: (le, l as usize - 1 - k),
            });
        }
    }
    Ok(arcs)
}

/// Traces every component of the normal multicurve with the given weights.
pub fn trace(tri: &Triangulation, weights: &[u64]) -> Result<Vec<Vec<Crossing>>> {
    let ne = tri.edge_count();
    let mut offsets = Vec::with_capacity(ne + 1);
    let mut total = 0usize;
    for &w in weights {
        offsets.push(total);
        total += w as usize;
    }
    offsets.push(total);
    let id = |e: Edge, k: usize| offsets[tri.index(e)] + k;
    let side = |e: Edge, c: Cell| -> usize {
        if tri.edge_cells(e)[0] == c {
            0
        } else {
            1
        }
    };
    let mut partner = vec![[usize::MAX; 2]; total];
    for arc in normal_arcs(tri, weights)? {
        let pa = id(arc.a.0, arc.a.1);
        let pb = id(arc.b.0, arc.b.1);
        partner[pa][side(arc.a.0, arc.cell)] = pb;
        partner[pb][side(arc.b.0, arc.cell)] = pa;
    }
    let mut edge_of = vec![0usize; total];
    for e in 0..ne {
        edge_of[offsets[e]..offsets[e + 1]].fill(e);
    }
    let mut visited = vec![false; total];
    let mut comps = Vec::new();
    for start in 0..total {
        if visited[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut p = start;
        let mut from_side = 0usize;
        loop {
            visited[p] = true;
            let e = tri.edge(edge_of[p]);
            comp.push(Crossing {
                edge: e,
                rank: p - offsets[edge_of[p]],
                forward: from_side == 0,
            });
            let q = partner[p][1 - from_side];
            let cell = tri.edge_cells(e)[1 - from_side];
            let qe = tri.edge(edge_of[q]);
            from_side = side(qe, cell);
            p = q;
            if p == start {
                debug_assert_eq!(from_side, 0);
                break;
            }
        }
        comps.push(comp);
    }
    Ok(comps)
}

/// Free-group word read off from `u`-edge crossings.
pub fn word_of(tri: &Triangulation, comp: &[Crossing]) -> Vec<Letter> {
    comp.iter()
        .filter_map(|c| {
            tri.generator_of(c.edge).map(|i| {
                let l = i as Letter;
                if c.forward {
                    l
                } else {
                    -l
                }
            })
        })
        .collect()
}

/// Punctures on the side of the curve not containing puncture `b`: those
/// whose dual generator has non-zero exponent sum.
pub fn inside_set(tri: &Triangulation, comp: &[Crossing]) -> BTreeSet<usize> {
    let b = tri.b();
    let mut sums = vec![0i64; b];
    for c in comp {
        if let Some(i) = tri.generator_of(c.edge) {
            sums[i] += if c.forward { 1 } else { -1 };
        }
    }
    (1..b).filter(|&i| sums[i] != 0).collect()
}

/// Unordered split of the punctures induced by a curve. `side_a` contains
/// puncture 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSeparation")]
pub struct PunctureSeparation {
    b: usize,
    #[serde(rename = "sideA")]
    side_a: Vec<usize>,
}

#[derive(Deserialize)]
struct RawSeparation {
    b: usize,
    #[serde(rename = "sideA")]
    side_a: Vec<usize>,
}

impl TryFrom<RawSeparation> for PunctureSeparation {
    type Error = Error;
    fn try_from(raw: RawSeparation) -> Result<Self> {
        PunctureSeparation::new(raw.b, raw.side_a)
    }
}

impl PunctureSeparation {
    /// Builds a separation from either side.
    pub fn new(b: usize, side: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = side.into_iter().collect();
        if set.iter().any(|&p| p == 0 || p > b) {
            return Err(Error::Precondition(format!("puncture out of range 1..={b}")));
        }
        let a: BTreeSet<usize> = if set.contains(&1) {
            set
        } else {
            (1..=b).filter(|p| !set.contains(p)).collect()
        };
        if a.len() < 2 || b - a.len() < 2 {
            return Err(Error::Inessential(format!("side sizes {} and {}", a.len(), b - a.len())));
        }
        Ok(PunctureSeparation { b, side_a: a.into_iter().collect() })
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> Vec<usize> {
        (1..=self.b).filter(|p| !self.side_a.contains(p)).collect()
    }

    pub fn sides(&self) -> [Vec<usize>; 2] {
        [self.side_a.clone(), self.side_b()]
    }

    /// The side not containing puncture `b`.
    pub fn finite_side(&self) -> Vec<usize> {
        if self.side_a.contains(&self.b) {
            self.side_b()
        } else {
            self.side_a.clone()
        }
    }

    pub fn smaller_size(&self) -> usize {
        self.side_a.len().min(self.b - self.side_a.len())
    }
}

/// Side sizes and the derived flags of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub s1: usize,
    pub s2: usize,
    pub minimal: bool,
    pub one_separating: bool,
    pub strongly_separating: bool,
}

impl CurveClass {
    pub fn from_sizes(a: usize, b: usize) -> Self {
        let (s1, s2) = if a <= b { (a, b) } else { (b, a) };
        CurveClass {
            s1,
            s2,
            minimal: s1 == 2,
            one_separating: s1 == 3,
            strongly_separating: s1 >= 3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_counts_basic() {
        assert_eq!(corner_counts(1, 1, 0), Some([1, 0, 0]));
        assert_eq!(corner_counts(1, 1, 1), None);
        assert_eq!(corner_counts(3, 1, 0), None);
        assert_eq!(corner_counts(2, 2, 2), Some([1, 1, 1]));
    }

    #[test]
    fn peripheral_loop_is_rejected() {
        // the loop around p_1 in b = 5 crosses u_1 and s_1 once each
        let tri = Triangulation::new(5);
        let mut w = vec![0; tri.edge_count()];
        w[tri.index(Edge::U(1))] = 1;
        w[tri.index(Edge::S(1))] = 1;
        assert!(matches!(CurveKey::new(5, w), Err(Error::Inessential(_))));
    }

    #[test]
    fn two_component_vector_is_rejected() {
        let tri = Triangulation::new(6);
        // loops around {1,2} and {4,5}
        let mut w = vec![0; tri.edge_count()];
        for e in [Edge::U(1), Edge::U(2), Edge::S(2), Edge::D(2)] {
            w[tri.index(e)] += 1;
        }
        for e in [Edge::U(4), Edge::U(5), Edge::S(3), Edge::D(4)] {
            w[tri.index(e)] += 1;
        }
        assert!(matches!(CurveKey::new(6, w), Err(Error::MalformedKey(_))));
    }

    #[test]
    fn separation_canonical_side() {
        let s = PunctureSeparation::new(7, [4, 5, 6, 7]).unwrap();
        assert_eq!(s.side_a(), &[1, 2, 3]);
        assert_eq!(s.side_b(), vec![4, 5, 6, 7]);
        assert!(PunctureSeparation::new(7, [1]).is_err());
    }

    #[test]
    fn class_flags() {
        let c = CurveClass::from_sizes(5, 2);
        assert!(c.minimal && !c.strongly_separating);
        let c = CurveClass::from_sizes(3, 4);
        assert!(c.one_separating && c.strongly_separating);
    }
}
