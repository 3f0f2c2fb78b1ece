//! Complementary components of multicurves and subsurfaces filled by pairs.

use std::collections::BTreeSet;

use num::Signed;
use serde::Serialize;

use crate::engine::arrangement::{build, Arrangement};
use crate::engine::extract::polygon_key;
use crate::engine::geom::{cross, frac, is_simple, meet, winding, BBox, Meet, Point, Q};
use crate::engine::realize::{Layout, System};
use crate::engine::realize_weights;
use crate::engine::tauten::{pair_layout, tauten_layout};
use crate::error::{Error, Result};
use crate::intersection::intersection_number;
use crate::key::CurveKey;
use crate::topology::separation;

/// A component of the surface cut along a multicurve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComplementComponent {
    pub punctures: Vec<usize>,
    pub boundary_count: usize,
    /// Indices (into the input list) of the curves bounding the component.
    pub boundary_curves: Vec<usize>,
    pub complexity: i64,
}

impl ComplementComponent {
    fn new(punctures: Vec<usize>, boundary_curves: Vec<usize>) -> Self {
        let complexity = punctures.len() as i64 + boundary_curves.len() as i64 - 3;
        ComplementComponent { boundary_count: boundary_curves.len(), punctures, boundary_curves, complexity }
    }
}

fn check_multicurve(curves: &[CurveKey]) -> Result<usize> {
    let b = curves.first().map(|c| c.b()).ok_or_else(|| Error::Precondition("empty multicurve".into()))?;
    for (i, x) in curves.iter().enumerate() {
        if x.b() != b {
            return Err(Error::PunctureMismatch(b, x.b()));
        }
        for (j, y) in curves.iter().enumerate().skip(i + 1) {
            if intersection_number(x, y) != 0 {
                return Err(Error::NotAMulticurve(i, j));
            }
        }
    }
    Ok(b)
}

/// Geometric realization of a multicurve with each polygon matched to its
/// input index.
pub(crate) fn realize_multicurve(curves: &[CurveKey]) -> Result<Vec<(usize, Vec<Point>)>> {
    let b = check_multicurve(curves)?;
    let tri = curves[0].triangulation();
    let mut sum = vec![0u64; tri.edge_count()];
    for c in curves {
        for (s, w) in sum.iter_mut().zip(c.weights()) {
            *s += w;
        }
    }
    let cfg = realize_weights(b, &sum)?;
    let mut used = vec![false; curves.len()];
    let mut out = Vec::new();
    for poly in cfg.curves {
        let k = polygon_key(b, &poly, false)?;
        let idx = (0..curves.len())
            .find(|&i| !used[i] && curves[i] == k)
            .ok_or_else(|| Error::Degenerate("realized component matches no input curve".into()))?;
        used[idx] = true;
        out.push((idx, poly));
    }
    Ok(out)
}

/// Components of the complement of pairwise disjoint curves, computed from
/// an explicit disjoint realization.
pub fn complement_components(curves: &[CurveKey]) -> Result<Vec<ComplementComponent>> {
    if curves.is_empty() {
        return Err(Error::Precondition("empty multicurve".into()));
    }
    let b = curves[0].b();
    let polys = realize_multicurve(curves)?;
    let n = polys.len();
    let punct: Vec<Point> = (1..b as i64).map(|i| Point::int(i, 0)).collect();
    let inside_p: Vec<BTreeSet<usize>> = polys
        .iter()
        .map(|(_, poly)| {
            (1..b).filter(|&p| winding(poly, &punct[p - 1]).is_some_and(|w| w != 0)).collect()
        })
        .collect();
    // contains[i][j]: polygon j lies inside polygon i
    let contains: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && winding(&polys[i].1, &polys[j].1[0]).is_some_and(|w| w != 0))
                .collect()
        })
        .collect();
    let parent = |j: usize| -> Option<usize> {
        // the smallest enclosing polygon is the one enclosed by all others
        let encl: Vec<usize> = (0..n).filter(|&i| contains[i][j]).collect();
        encl.iter().copied().find(|&i| encl.iter().all(|&k| k == i || contains[k][i]))
    };
    let parents: Vec<Option<usize>> = (0..n).map(parent).collect();
    let mut comps = Vec::new();
    for region in std::iter::once(None).chain((0..n).map(Some)) {
        let children: Vec<usize> = (0..n).filter(|&j| parents[j] == region).collect();
        let mut pts: BTreeSet<usize> = match region {
            None => (1..=b).collect(),
            Some(i) => inside_p[i].clone(),
        };
        for &c in &children {
            for p in &inside_p[c] {
                pts.remove(p);
            }
        }
        let mut bd: Vec<usize> = children.iter().map(|&c| polys[c].0).collect();
        if let Some(i) = region {
            bd.push(polys[i].0);
        }
        bd.sort();
        comps.push(ComplementComponent::new(pts.into_iter().collect(), bd));
    }
    comps.sort();
    Ok(comps)
}

/// The same components derived from puncture separations alone: disjoint
/// curves cut out nested blocks, read relative to puncture `b`.
pub fn components_by_separation(curves: &[CurveKey]) -> Result<Vec<ComplementComponent>> {
    let b = check_multicurve(curves)?;
    let blocks: Vec<BTreeSet<usize>> =
        curves.iter().map(|c| separation(c).finite_side().into_iter().collect()).collect();
    let n = blocks.len();
    // parallel copies: order equal blocks by index so they nest
    let inside = |j: usize, i: usize| -> bool {
        i != j && blocks[j].is_subset(&blocks[i]) && (blocks[j] != blocks[i] || j > i)
    };
    let parents: Vec<Option<usize>> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| inside(j, i))
                .min_by_key(|&i| (blocks[i].len(), std::cmp::Reverse(i)))
        })
        .collect();
    let mut comps = Vec::new();
    for region in std::iter::once(None).chain((0..n).map(Some)) {
        let children: Vec<usize> = (0..n).filter(|&j| parents[j] == region).collect();
        let mut pts: BTreeSet<usize> = match region {
            None => (1..=b).collect(),
            Some(i) => blocks[i].clone(),
        };
        for &c in &children {
            for p in &blocks[c] {
                pts.remove(p);
            }
        }
        let mut bd = children.clone();
        if let Some(i) = region {
            bd.push(i);
        }
        bd.sort();
        comps.push(ComplementComponent::new(pts.into_iter().collect(), bd));
    }
    comps.sort();
    Ok(comps)
}

/// The subsurface filled by two crossing curves: a regular neighbourhood of
/// their union together with every complementary disk holding at most one
/// puncture. Returns its type and its boundary curves.
pub fn filled_subsurface(a: &CurveKey, c: &CurveKey) -> Result<(ComplementComponent, Vec<CurveKey>)> {
    if a.b() != c.b() {
        return Err(Error::PunctureMismatch(a.b(), c.b()));
    }
    let mut layout = pair_layout(a, c)?;
    filled_from_layout(&mut layout)
}

/// [`filled_subsurface`] computed from a randomly interleaved realization.
pub fn filled_subsurface_shuffled<R: rand::Rng>(
    a: &CurveKey,
    c: &CurveKey,
    rng: &mut R,
) -> Result<(ComplementComponent, Vec<CurveKey>)> {
    if a.b() != c.b() {
        return Err(Error::PunctureMismatch(a.b(), c.b()));
    }
    let mut layout = Layout::shuffled(a.triangulation(), pair_systems(a, c)?, rng);
    filled_from_layout(&mut layout)
}

pub(crate) fn filled_from_layout(layout: &mut Layout) -> Result<(ComplementComponent, Vec<CurveKey>)> {
    let b = layout.triangulation().b();
    tauten_layout(layout)?;
    let real = layout.realize();
    let arr = build(b, &real.polygons)?;
    if arr.crossing_count() == 0 {
        return Err(Error::NotFilling);
    }
    let mut punctures = Vec::new();
    let mut boundary = Vec::new();
    for face in &arr.faces {
        match face.punctures.len() {
            0 => {}
            1 => punctures.push(face.punctures[0]),
            _ => boundary.push(face_boundary_key(b, &arr, face, &real.polygons)?),
        }
    }
    punctures.sort();
    boundary.sort();
    let idx = (0..boundary.len()).collect();
    Ok((ComplementComponent::new(punctures, idx), boundary))
}

/// The boundary of a face pushed slightly into the face, as a curve key.
fn face_boundary_key(
    b: usize,
    arr: &Arrangement,
    face: &crate::engine::arrangement::Face,
    polys: &[Vec<Point>],
) -> Result<CurveKey> {
    let cycle: Vec<Point> = match (face.bounded, face.holes.as_slice()) {
        (true, []) => arr.cycle_points(&face.cycle),
        (false, [outer]) => arr.cycle_points(outer),
        _ => return Err(Error::Degenerate("face of a connected arrangement with holes".into())),
    };
    let n = cycle.len();
    let dirs: Vec<Point> = (0..n)
        .map(|k| {
            let v = &cycle[k];
            let din = v.sub(&cycle[(k + n - 1) % n]);
            let dout = cycle[(k + 1) % n].sub(v);
            let a = dout.l1_normalized();
            let back = Point::new(-din.x.clone(), -din.y.clone()).l1_normalized();
            let cr = cross(&a, &back);
            if cr.is_positive() {
                a.add(&back)
            } else if cr.is_negative() {
                let s = a.add(&back);
                Point::new(-s.x, -s.y)
            } else {
                Point::new(-a.y.clone(), a.x.clone())
            }
        })
        .collect();
    let expected: BTreeSet<usize> = if face.bounded {
        face.punctures.iter().copied().collect()
    } else {
        (1..b).filter(|p| !face.punctures.contains(p)).collect()
    };
    let segs: Vec<(Point, Point, BBox)> = polys
        .iter()
        .flat_map(|p| {
            (0..p.len()).map(move |i| {
                let (x, y) = (p[i].clone(), p[(i + 1) % p.len()].clone());
                let bb = BBox::of_segment(&x, &y);
                (x, y, bb)
            })
        })
        .collect();
    let mut t: Q = frac(1, 8);
    for _ in 0..60 {
        let pushed: Vec<Point> = cycle.iter().zip(&dirs).map(|(v, d)| v.add(&d.scale(&t))).collect();
        if valid_pushoff(b, &pushed, &segs, &expected) {
            return polygon_key(b, &pushed, false);
        }
        t /= Q::from_integer(2.into());
    }
    Err(Error::Degenerate("could not push a face boundary off the curves".into()))
}

fn valid_pushoff(b: usize, pushed: &[Point], segs: &[(Point, Point, BBox)], expected: &BTreeSet<usize>) -> bool {
    if !is_simple(pushed) {
        return false;
    }
    let n = pushed.len();
    for i in 0..n {
        let (p, r) = (&pushed[i], &pushed[(i + 1) % n]);
        let bb = BBox::of_segment(p, r);
        for (x, y, sb) in segs {
            if sb.overlaps(&bb) && meet(p, r, x, y) != Meet::None {
                return false;
            }
        }
    }
    let mut got = BTreeSet::new();
    for p in 1..b {
        match winding(pushed, &Point::int(p as i64, 0)) {
            None => return false,
            Some(0) => {}
            Some(_) => {
                got.insert(p);
            }
        }
    }
    &got == expected
}

/// Which side of `delta` each of `others` lies on, from a joint disjoint
/// realization: `true` for the side not containing puncture `b`.
pub fn sides_of(delta: &CurveKey, others: &[CurveKey]) -> Result<Vec<bool>> {
    let mut all = vec![delta.clone()];
    all.extend(others.iter().cloned());
    let polys = realize_multicurve(&all)?;
    let dpoly = &polys.iter().find(|(i, _)| *i == 0).unwrap().1;
    let mut out = vec![false; others.len()];
    for (i, poly) in &polys {
        if *i == 0 {
            continue;
        }
        out[i - 1] = winding(dpoly, &poly[0]).is_some_and(|w| w != 0);
    }
    Ok(out)
}

/// Realizations of a pair as one layout, for re-randomized checks.
pub fn pair_systems(a: &CurveKey, c: &CurveKey) -> Result<Vec<System>> {
    let tri = a.triangulation();
    Ok(vec![System::new(&tri, a.weights())?, System::new(&tri, c.weights())?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::block_curve;
    use rand::SeedableRng;

    fn comp(p: &[usize], d: usize) -> (Vec<usize>, usize) {
        (p.to_vec(), d)
    }

    fn types(v: &[ComplementComponent]) -> Vec<(Vec<usize>, usize)> {
        let mut t: Vec<_> = v.iter().map(|c| (c.punctures.clone(), c.boundary_count)).collect();
        t.sort();
        t
    }

    #[test]
    fn examples() {
        let k = |v: &[usize]| block_curve(7, v).unwrap();
        let c = complement_components(&[k(&[1, 2, 3])]).unwrap();
        assert_eq!(types(&c), vec![comp(&[1, 2, 3], 1), comp(&[4, 5, 6, 7], 1)]);
        let c = complement_components(&[k(&[1, 2]), k(&[1, 2, 3, 4])]).unwrap();
        assert_eq!(types(&c), vec![comp(&[1, 2], 1), comp(&[3, 4], 2), comp(&[5, 6, 7], 1)]);
        assert!(matches!(
            complement_components(&[k(&[1, 2, 3]), k(&[2, 3, 4])]),
            Err(Error::NotAMulticurve(0, 1))
        ));
    }

    #[test]
    fn separation_route_agrees() {
        let k = |v: &[usize]| block_curve(9, v).unwrap();
        let sets = vec![
            vec![k(&[1, 2]), k(&[1, 2, 3]), k(&[5, 6]), k(&[5, 6, 7, 8])],
            vec![k(&[9, 1, 2]), k(&[4, 5]), k(&[4, 5])],
            vec![k(&[3, 4, 5, 6]), k(&[3, 4]), k(&[5, 6])],
        ];
        for s in sets {
            assert_eq!(
                types(&complement_components(&s).unwrap()),
                types(&components_by_separation(&s).unwrap())
            );
        }
    }

    #[test]
    fn filled_by_overlapping_blocks() {
        let k = |v: &[usize]| block_curve(7, v).unwrap();
        let (c, bd) = filled_subsurface(&k(&[1, 2, 3]), &k(&[2, 3, 4])).unwrap();
        assert_eq!(c.punctures, vec![1, 4]);
        assert_eq!(c.boundary_count, 2);
        assert!(bd.contains(&k(&[2, 3])));
        assert!(bd.contains(&k(&[1, 2, 3, 4])));
        assert!(matches!(filled_subsurface(&k(&[1, 2, 3]), &k(&[4, 5, 6])), Err(Error::NotFilling)));
    }

    #[test]
    fn filled_is_independent_of_realization() {
        let k = |v: &[usize]| block_curve(8, v).unwrap();
        let a = k(&[1, 2, 3]);
        let c = crate::topology::apply_word(&crate::mapping::MappingWord::from_signed(&[3, 2]).unwrap(), &k(&[3, 4, 5]));
        let base = filled_subsurface(&a, &c).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let mut l = Layout::shuffled(a.triangulation(), pair_systems(&a, &c).unwrap(), &mut rng);
            assert_eq!(filled_from_layout(&mut l).unwrap(), base);
        }
    }
}
