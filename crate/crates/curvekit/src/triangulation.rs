//! The fixed reference ideal triangulation of the `b`-punctured sphere.
//!
//! Punctures `1..b-1` sit at `(i, 0)` in the plane and puncture `b` is the
//! point at infinity. The `3b - 6` edges, in weight-vector order, are
//!
//! * `s_1 .. s_{b-2}`: the axis segments `[p_i, p_{i+1}]`;
//! * `u_1 .. u_{b-1}`: `u_1` is the ray leftwards from `p_1`, `u_{b-1}` the ray
//!   rightwards from `p_{b-1}`, and every other `u_i` the vertical ray upwards
//!   from `p_i`;
//! * `d_2 .. d_{b-2}`: the vertical rays downwards from `p_i`.
//!
//! There are `2b - 4` triangles: for `1 <= i <= b-2` the upper cell
//! `U_i = {i < x < i+1, y > 0}` (unbounded on the left for `i = 1` and on the
//! right for `i = b-2`) with sides `(u_i, s_i, u_{i+1})`, and the lower cell
//! `L_i` with sides `(d_i, s_i, d_{i+1})`, where `d_1` and `d_{b-1}` stand for
//! `u_1` and `u_{b-1}`.
//!
//! Every cell lists its sides as `(left, base, right)`; its corners are
//! `p_i` (between left and base), `p_{i+1}` (between base and right) and the
//! point at infinity (between right and left). Points on an edge are ranked
//! from the edge's start puncture: `p_i` for `s_i`, `u_i` and `d_i`.

use serde::Serialize;

/// An edge of the reference triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    S(usize),
    U(usize),
    D(usize),
}

/// A triangle of the reference triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Upper(usize),
    Lower(usize),
}

/// Index helper for the frozen triangulation of `S_{0,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triangulation {
    b: usize,
}

impl Triangulation {
    pub fn new(b: usize) -> Self {
        assert!(b >= 4, "the reference triangulation needs b >= 4");
        Triangulation { b }
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn edge_count(&self) -> usize {
        3 * self.b - 6
    }

    pub fn cell_count(&self) -> usize {
        2 * self.b - 4
    }

    pub fn index(&self, e: Edge) -> usize {
        let b = self.b;
        match e {
            Edge::S(i) => i - 1,
            Edge::U(i) => (b - 2) + i - 1,
            Edge::D(i) => (b - 2) + (b - 1) + i - 2,
        }
    }

    pub fn edge(&self, idx: usize) -> Edge {
        let b = self.b;
        if idx < b - 2 {
            Edge::S(idx + 1)
        } else if idx < 2 * b - 3 {
            Edge::U(idx - (b - 2) + 1)
        } else {
            Edge::D(idx - (2 * b - 3) + 2)
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.edge_count()).map(move |i| self.edge(i))
    }

    pub fn cells(&self) -> Vec<Cell> {
        let n = self.b - 2;
        (1..=n)
            .map(Cell::Upper)
            .chain((1..=n).map(Cell::Lower))
            .collect()
    }

    pub fn cell_index(&self, c: Cell) -> usize {
        match c {
            Cell::Upper(i) => i - 1,
            Cell::Lower(i) => self.b - 2 + i - 1,
        }
    }

    /// Sides of a cell as `(left, base, right)`.
    pub fn cell_edges(&self, c: Cell) -> [Edge; 3] {
        let b = self.b;
        match c {
            Cell::Upper(i) => [Edge::U(i), Edge::S(i), Edge::U(i + 1)],
            Cell::Lower(i) => {
                let left = if i == 1 { Edge::U(1) } else { Edge::D(i) };
                let right = if i == b - 2 { Edge::U(b - 1) } else { Edge::D(i + 1) };
                [left, Edge::S(i), right]
            }
        }
    }

    /// The two cells adjacent to an edge. The order is fixed and used for
    /// the crossing direction bookkeeping in [`crate::key`].
    pub fn edge_cells(&self, e: Edge) -> [Cell; 2] {
        let b = self.b;
        match e {
            Edge::S(i) => [Cell::Upper(i), Cell::Lower(i)],
            Edge::U(1) => [Cell::Upper(1), Cell::Lower(1)],
            Edge::U(i) if i == b - 1 => [Cell::Lower(b - 2), Cell::Upper(b - 2)],
            Edge::U(i) => [Cell::Upper(i), Cell::Upper(i - 1)],
            Edge::D(i) => [Cell::Lower(i), Cell::Lower(i - 1)],
        }
    }

    /// Start and end puncture of an edge (puncture `b` is infinity).
    pub fn endpoints(&self, e: Edge) -> (usize, usize) {
        match e {
            Edge::S(i) => (i, i + 1),
            Edge::U(i) | Edge::D(i) => (i, self.b),
        }
    }

    pub fn edge_name(&self, e: Edge) -> String {
        match e {
            Edge::S(i) => format!("s{i}"),
            Edge::U(i) => format!("u{i}"),
            Edge::D(i) => format!("d{i}"),
        }
    }

    /// For `u`-edges, the generator index whose positive letter crosses the
    /// edge from `edge_cells(e)[0]` to `edge_cells(e)[1]`.
    pub fn generator_of(&self, e: Edge) -> Option<usize> {
        match e {
            Edge::U(i) => Some(i),
            _ => None,
        }
    }

    pub fn metadata(&self) -> TriangulationMeta {
        let edges = self
            .edges()
            .enumerate()
            .map(|(index, e)| {
                let (from, to) = self.endpoints(e);
                let geometry = match e {
                    Edge::S(i) => format!("segment ({i},0)-({},0)", i + 1),
                    Edge::U(1) => "ray from (1,0) towards -x".to_string(),
                    Edge::U(i) if i == self.b - 1 => format!("ray from ({i},0) towards +x"),
                    Edge::U(i) => format!("ray from ({i},0) towards +y"),
                    Edge::D(i) => format!("ray from ({i},0) towards -y"),
                };
                EdgeMeta {
                    index,
                    name: self.edge_name(e),
                    from,
                    to,
                    geometry,
                }
            })
            .collect();
        let cells = self
            .cells()
            .into_iter()
            .map(|c| {
                let [l, s, r] = self.cell_edges(c);
                let name = match c {
                    Cell::Upper(i) => format!("U{i}"),
                    Cell::Lower(i) => format!("L{i}"),
                };
                CellMeta {
                    name,
                    sides: [self.index(l), self.index(s), self.index(r)],
                }
            })
            .collect();
        TriangulationMeta {
            b: self.b,
            puncture_positions: (1..self.b).map(|i| (i as i64, 0)).collect(),
            infinity: self.b,
            edges,
            cells,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeMeta {
    pub index: usize,
    pub name: String,
    pub from: usize,
    pub to: usize,
    pub geometry: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellMeta {
    pub name: String,
    pub sides: [usize; 3],
}

/// Serializable description of the frozen triangulation.
#[derive(Clone, Debug, Serialize)]
pub struct TriangulationMeta {
    pub b: usize,
    pub puncture_positions: Vec<(i64, i64)>,
    pub infinity: usize,
    pub edges: Vec<EdgeMeta>,
    pub cells: Vec<CellMeta>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for b in 4..12 {
            let t = Triangulation::new(b);
            for i in 0..t.edge_count() {
                assert_eq!(t.index(t.edge(i)), i);
            }
        }
    }

    #[test]
    fn every_edge_borders_two_cells_that_list_it() {
        for b in 4..12 {
            let t = Triangulation::new(b);
            let mut seen = vec![0usize; t.edge_count()];
            for c in t.cells() {
                for e in t.cell_edges(c) {
                    seen[t.index(e)] += 1;
                    assert!(t.edge_cells(e).contains(&c), "{b} {c:?} {e:?}");
                }
            }
            assert!(seen.iter().all(|&n| n == 2));
        }
    }

    #[test]
    fn euler_characteristic() {
        // b vertices - (3b-6) edges + (2b-4) faces = 2
        for b in 4..12 {
            let t = Triangulation::new(b);
            assert_eq!(b as i64 - t.edge_count() as i64 + t.cell_count() as i64, 2);
        }
    }
}
