//! Minimal position by bigon removal.
//!
//! Curves are kept as normal systems in a [`Layout`]. An empty bigon face of
//! the realized arrangement is bounded by one arc of each curve; every
//! triangulation edge crossing it meets the two sides in neighbouring
//! points, and exchanging those points on every such edge removes both
//! corners. Faces are always chosen in arrangement order (smallest area
//! first), and each removal lowers the crossing count by two.

use crate::engine::arrangement::{build, Arrangement, VertexKind};
use crate::engine::realize::{layout_crossings, Layout, Realized, System, Tag};
use crate::engine::PLConfiguration;
use crate::error::{Error, Result};
use crate::key::CurveKey;
use crate::triangulation::{Edge, Triangulation};

/// Removes empty bigons until none is left. Returns the number removed.
pub fn tauten_layout(layout: &mut Layout) -> Result<usize> {
    let mut removed = 0;
    loop {
        let real = layout.realize();
        let arr = build(layout.triangulation().b(), &real.polygons)?;
        let small = arr.empty_small_faces();
        let Some(&f) = small.first() else {
            return Ok(removed);
        };
        let before = layout_crossings(layout);
        let swaps = bigon_swaps(layout, &real, &arr, f)?;
        for (e, p) in swaps {
            layout.swap_adjacent(e, p);
        }
        let after = layout_crossings(layout);
        if after + 2 != before {
            return Err(Error::Degenerate(format!("bigon removal went from {before} to {after} crossings")));
        }
        removed += 1;
    }
}

/// The neighbouring point pairs to exchange in order to remove bigon face `f`.
fn bigon_swaps(layout: &Layout, real: &Realized, arr: &Arrangement, f: usize) -> Result<Vec<(Edge, usize)>> {
    let cycle = &arr.faces[f].cycle;
    let n = cycle.len();
    let is_corner = |h: usize| matches!(arr.vertices[arr.half_edges[h].from].kind, VertexKind::Crossing { .. });
    let start = (0..n)
        .find(|&k| is_corner(cycle[k]))
        .ok_or_else(|| Error::Degenerate("face without corners".into()))?;
    // split the boundary at the two corners
    let mut sides: Vec<Vec<(Edge, usize, usize)>> = vec![Vec::new(), Vec::new()];
    let mut side = 0;
    for k in 1..=n {
        let h = cycle[(start + k) % n];
        let v = arr.half_edges[h].from;
        match arr.vertices[v].kind {
            VertexKind::Crossing { .. } => {
                side += 1;
                if side > 1 && k < n {
                    return Err(Error::Degenerate("face has more than two corners".into()));
                }
            }
            VertexKind::Polygon { curve, index } => {
                if let Tag::Edge { edge, system, rank } = real.tags[curve][index] {
                    sides[side.min(1)].push((edge, system, rank));
                }
            }
        }
    }
    let (a, mut c) = (sides[0].clone(), sides[1].clone());
    c.reverse();
    if a.len() != c.len() {
        return Err(Error::Degenerate("bigon sides cross different edges".into()));
    }
    let mut swaps = Vec::new();
    for (x, y) in a.iter().zip(&c) {
        if x.0 != y.0 {
            return Err(Error::Degenerate("bigon sides cross different edges".into()));
        }
        let order = layout.order(x.0);
        let px = order.iter().position(|&(s, r)| (s, r) == (x.1, x.2)).unwrap();
        let py = order.iter().position(|&(s, r)| (s, r) == (y.1, y.2)).unwrap();
        if px.abs_diff(py) != 1 {
            return Err(Error::Degenerate("bigon sides are not neighbours on an edge".into()));
        }
        swaps.push((x.0, px.min(py)));
    }
    Ok(swaps)
}

/// An isotopic configuration without empty monogons or bigons. Every curve
/// is first normalized against the triangulation, which removes its bigons
/// with triangulation edges.
pub fn tauten(cfg: &PLConfiguration) -> Result<PLConfiguration> {
    let tri = Triangulation::new(cfg.b);
    let mut systems = Vec::new();
    for poly in &cfg.curves {
        let k = crate::engine::extract::polygon_key(cfg.b, poly, true)?;
        systems.push(System::new(&tri, k.weights())?);
    }
    let mut layout = Layout::stacked(tri, systems);
    tauten_layout(&mut layout)?;
    Ok(PLConfiguration { b: cfg.b, curves: layout.realize().polygons })
}

/// Crossing count after tautening a stacked realization of the pair.
pub fn engine_intersection_number(a: &CurveKey, c: &CurveKey) -> Result<u64> {
    if a.b() != c.b() {
        return Err(Error::PunctureMismatch(a.b(), c.b()));
    }
    if a == c {
        return Ok(0);
    }
    let mut layout = pair_layout(a, c)?;
    tauten_layout(&mut layout)?;
    Ok(layout_crossings(&layout) as u64)
}

pub(crate) fn pair_layout(a: &CurveKey, c: &CurveKey) -> Result<Layout> {
    let tri = a.triangulation();
    Ok(Layout::stacked(tri, vec![System::new(&tri, a.weights())?, System::new(&tri, c.weights())?]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::arrangement::build;
    use crate::intersection::intersection_number;
    use crate::topology::{block_curve, enumerate_curves};
    use rand::SeedableRng;

    #[test]
    fn block_examples() {
        let k = |v: &[usize]| block_curve(7, v).unwrap();
        assert_eq!(engine_intersection_number(&k(&[1, 2, 3]), &k(&[2, 3, 4])).unwrap(), 2);
        assert_eq!(engine_intersection_number(&k(&[1, 2, 3]), &k(&[4, 5, 6])).unwrap(), 0);
        assert_eq!(engine_intersection_number(&k(&[1, 2]), &k(&[1, 2])).unwrap(), 0);
    }

    #[test]
    fn geometric_and_combinatorial_counts_agree() {
        let curves = enumerate_curves(5, 8);
        let tri = Triangulation::new(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for a in curves.iter().take(12) {
            for c in curves.iter().take(12) {
                let sys = vec![System::new(&tri, a.weights()).unwrap(), System::new(&tri, c.weights()).unwrap()];
                let layout = Layout::shuffled(tri, sys, &mut rng);
                let real = layout.realize();
                if a == c {
                    continue;
                }
                let arr = build(5, &real.polygons).unwrap();
                assert_eq!(arr.crossing_count(), layout_crossings(&layout));
            }
        }
    }

    #[test]
    fn oracle_matches_linked_pairs() {
        for b in [5, 6] {
            let curves = enumerate_curves(b, 10);
            for (x, a) in curves.iter().enumerate().step_by(3) {
                for c in curves.iter().skip(x).step_by(5) {
                    let e = engine_intersection_number(a, c).unwrap();
                    assert_eq!(e, intersection_number(a, c), "b={b} {a:?} {c:?}");
                }
            }
        }
    }

    #[test]
    fn independent_of_realization() {
        let tri = Triangulation::new(6);
        let curves = enumerate_curves(6, 10);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (a, c) in curves.iter().zip(curves.iter().rev()).take(20) {
            let sys = vec![System::new(&tri, a.weights()).unwrap(), System::new(&tri, c.weights()).unwrap()];
            let mut l1 = Layout::shuffled(tri, sys.clone(), &mut rng);
            let mut l2 = Layout::shuffled(tri, sys, &mut rng);
            tauten_layout(&mut l1).unwrap();
            tauten_layout(&mut l2).unwrap();
            assert_eq!(layout_crossings(&l1), layout_crossings(&l2));
            let arr = build(6, &l1.realize().polygons).unwrap();
            assert!(arr.empty_small_faces().is_empty());
        }
    }

    #[test]
    fn pushoff_becomes_disjoint() {
        let k = block_curve(6, &[2, 3, 4]).unwrap();
        let tri = Triangulation::new(6);
        let sys = System::new(&tri, k.weights()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut l = Layout::shuffled(tri, vec![sys.clone(), sys], &mut rng);
        tauten_layout(&mut l).unwrap();
        assert_eq!(layout_crossings(&l), 0);
    }
}
