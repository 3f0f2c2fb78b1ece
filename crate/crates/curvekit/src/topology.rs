//! Standard constructions, separations, classification and the action of
//! half-twist words on curve keys.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::intersection::intersection_number;
use crate::key::{CurveClass, CurveKey, PunctureSeparation};
use crate::mapping::MappingWord;
use crate::triangulation::{Edge, Triangulation};
use crate::word::{cyclic_reduce, half_twist_substitution, substitute, weights_from_word, Letter};

/// Checks that `set` is a cyclic interval of `1..=b` and returns it as
/// `(start, len)` with `start` in `1..=b`.
pub fn cyclic_interval(b: usize, set: &[usize]) -> Option<(usize, usize)> {
    let s: BTreeSet<usize> = set.iter().copied().collect();
    if s.is_empty() || s.len() != set.len() || s.iter().any(|&p| p == 0 || p > b) {
        return None;
    }
    if s.len() == b {
        return Some((1, b));
    }
    // the start is the unique member whose predecessor is missing
    let pred = |p: usize| if p == 1 { b } else { p - 1 };
    let starts: Vec<usize> = s.iter().copied().filter(|&p| !s.contains(&pred(p))).collect();
    if starts.len() != 1 {
        return None;
    }
    Some((starts[0], s.len()))
}

/// The round curve enclosing the cyclic block `block` of punctures.
pub fn block_curve(b: usize, block: &[usize]) -> Result<CurveKey> {
    if b < 4 {
        return Err(Error::Unsupported(format!("b = {b} < 4")));
    }
    let (start, len) = cyclic_interval(b, block)
        .ok_or_else(|| Error::Precondition(format!("{block:?} is not a cyclic interval of 1..={b}")))?;
    if len < 2 || len > b - 2 {
        return Err(Error::Inessential(format!("block of size {len} on b = {b}")));
    }
    // use the representative interval that avoids puncture b
    let members: Vec<usize> = (0..len).map(|k| (start - 1 + k) % b + 1).collect();
    let (i, j) = if members.contains(&b) {
        let comp: Vec<usize> = (1..=b).filter(|p| !members.contains(p)).collect();
        (comp[0], *comp.last().unwrap())
    } else {
        (members[0], *members.last().unwrap())
    };
    Ok(interval_curve(b, i, j))
}

/// Round curve around `p_i .. p_j` with `1 <= i < j <= b-1`, not all of them.
pub(crate) fn interval_curve(b: usize, i: usize, j: usize) -> CurveKey {
    let tri = Triangulation::new(b);
    let mut w = vec![0u64; tri.edge_count()];
    for k in i..=j {
        w[tri.index(Edge::U(k))] = 1;
        if (2..=b - 2).contains(&k) {
            w[tri.index(Edge::D(k))] = 1;
        }
    }
    if i >= 2 {
        w[tri.index(Edge::S(i - 1))] = 1;
    }
    if j <= b - 2 {
        w[tri.index(Edge::S(j))] = 1;
    }
    CurveKey::new_unchecked(b, w)
}

pub fn separation(c: &CurveKey) -> PunctureSeparation {
    let tri = c.triangulation();
    let inside = crate::key::inside_set(&tri, &c.crossings());
    PunctureSeparation::new(c.b(), inside).expect("valid keys are essential")
}

pub fn classify(c: &CurveKey) -> CurveClass {
    let s = separation(c);
    CurveClass::from_sizes(s.side_a().len(), c.b() - s.side_a().len())
}

/// Keys are canonical, so equality of isotopy classes is equality of keys.
pub fn curves_equal(a: &CurveKey, c: &CurveKey) -> bool {
    a == c
}

/// Image of a curve under a half-twist word, computed on the free-group
/// word of the curve. [`crate::engine::apply_word_engine`] is the
/// piecewise-linear reference implementation of the same map.
pub fn apply_word(w: &MappingWord, c: &CurveKey) -> CurveKey {
    let b = c.b();
    w.check(b).expect("generator index out of range");
    if w.is_empty() {
        return c.clone();
    }
    let mut word = c.word();
    for g in w.letters().iter().rev() {
        let img = half_twist_substitution(b, g.index, g.sign);
        word = cyclic_reduce(&substitute(&img, &word));
    }
    CurveKey::new_unchecked(b, weights_from_word(b, &word))
}

/// Cyclically reduced word of the image, without building the key.
pub fn apply_word_to_word(b: usize, w: &MappingWord, word: &[Letter]) -> Vec<Letter> {
    let mut word = word.to_vec();
    for g in w.letters().iter().rev() {
        let img = half_twist_substitution(b, g.index, g.sign);
        word = cyclic_reduce(&substitute(&img, &word));
    }
    word
}

/// The standard minimal curve of generator `H_1`, around `{1, 2}`.
pub fn standard_minimal(b: usize) -> CurveKey {
    interval_curve(b, 1, 2)
}

/// Half twist about a minimal curve `beta`, given a word carrying the
/// standard minimal curve `{1,2}` to `beta`.
pub fn half_twist_word(beta: &CurveKey, transporter: &MappingWord) -> Result<MappingWord> {
    if !classify(beta).minimal {
        return Err(Error::NotMinimal);
    }
    transporter.check(beta.b())?;
    if apply_word(transporter, &standard_minimal(beta.b())) != *beta {
        return Err(Error::TransporterMismatch);
    }
    Ok(transporter.conjugate(&MappingWord::generator(1, 1)))
}

/// The positive Dehn twist about the block curve of `block`, a full twist of
/// its strands.
pub fn block_twist_word(b: usize, block: &[usize]) -> Result<MappingWord> {
    let k = block_curve(b, block)?;
    let inside: Vec<usize> = separation(&k).finite_side();
    let (i, j) = (inside[0], *inside.last().unwrap());
    let strands: Vec<i64> = (i..j).map(|g| g as i64).collect();
    Ok(MappingWord::from_signed(&strands)?.pow((j - i + 1) as i64))
}

/// Dehn twist about `gamma`, given a word carrying the block curve of
/// `block` to `gamma`.
pub fn dehn_twist_word(gamma: &CurveKey, block: &[usize], transporter: &MappingWord) -> Result<MappingWord> {
    transporter.check(gamma.b())?;
    if apply_word(transporter, &block_curve(gamma.b(), block)?) != *gamma {
        return Err(Error::TransporterMismatch);
    }
    Ok(transporter.conjugate(&block_twist_word(gamma.b(), block)?))
}

/// True iff some block of `s1` is contained in some block of `s2`.
pub fn nested_separations(s1: &PunctureSeparation, s2: &PunctureSeparation) -> bool {
    assert_eq!(s1.b(), s2.b());
    let [a1, b1] = s1.sides();
    let [a2, b2] = s2.sides();
    let sub = |x: &[usize], y: &[usize]| x.iter().all(|p| y.contains(p));
    [&a1, &b1].iter().any(|x| [&a2, &b2].iter().any(|y| sub(x, y)))
}

/// Which side of `delta` a disjoint curve `a` lies on, as the puncture set
/// of that side.
fn side_of(delta: &PunctureSeparation, a: &PunctureSeparation) -> Vec<usize> {
    let [d1, d2] = delta.sides();
    let [a1, a2] = a.sides();
    let inside = |x: &[usize], y: &[usize]| x.iter().all(|p| y.contains(p));
    // the block of delta swallowed by a block of `a` is the far side
    if inside(&d2, &a1) || inside(&d2, &a2) {
        d1
    } else {
        d2
    }
}

/// Do `a` and `c` lie in different components of the complement of `delta`?
pub fn separates(delta: &CurveKey, a: &CurveKey, c: &CurveKey) -> Result<bool> {
    for (name, x) in [("alpha", a), ("beta", c)] {
        if x == delta {
            return Err(Error::NotInLink(format!("{name} equals delta")));
        }
        if intersection_number(delta, x) != 0 {
            return Err(Error::NotInLink(format!("{name} crosses delta")));
        }
    }
    let sd = separation(delta);
    Ok(side_of(&sd, &separation(a)) != side_of(&sd, &separation(c)))
}

/// All valid keys with coordinate sum at most `max_weight`, ordered by total
/// weight and then lexicographically.
pub fn enumerate_curves(b: usize, max_weight: u64) -> Vec<CurveKey> {
    let mut out = Vec::new();
    for_each_normal_vector(b, max_weight, |w| {
        if let Ok(k) = CurveKey::new(b, w.to_vec()) {
            out.push(k);
        }
    });
    out.sort_by(|x, y| x.total_weight().cmp(&y.total_weight()).then_with(|| x.weights().cmp(y.weights())));
    out
}

/// Visits every non-zero weight vector with sum at most `max_weight` that
/// satisfies the matching conditions in every cell.
pub fn for_each_normal_vector(b: usize, max_weight: u64, mut f: impl FnMut(&[u64])) {
    let tri = Triangulation::new(b);
    // assignment order: u1, s1, then (u_i, d_i, s_i) for 2 <= i <= b-2, then u_{b-1}
    let mut order = vec![Edge::U(1), Edge::S(1)];
    for i in 2..=b - 2 {
        order.extend([Edge::U(i), Edge::D(i), Edge::S(i)]);
    }
    order.push(Edge::U(b - 1));
    let idx: Vec<usize> = order.iter().map(|&e| tri.index(e)).collect();
    // cells completed when each position is assigned
    let mut checks: Vec<Vec<[usize; 3]>> = vec![Vec::new(); order.len()];
    for c in tri.cells() {
        let sides = tri.cell_edges(c).map(|e| tri.index(e));
        let last = sides.iter().map(|s| idx.iter().position(|x| x == s).unwrap()).max().unwrap();
        checks[last].push(sides);
    }
    let mut w = vec![0u64; tri.edge_count()];
    fn range_for(w: &[u64], sides: &[usize; 3], target: usize) -> (u64, u64, u64) {
        let others: Vec<u64> = sides.iter().filter(|&&s| s != target).map(|&s| w[s]).collect();
        let (a, c) = (others[0], others[1]);
        (a.abs_diff(c), a + c, (a + c) % 2)
    }
    fn rec(
        pos: usize,
        budget: u64,
        w: &mut Vec<u64>,
        idx: &[usize],
        checks: &[Vec<[usize; 3]>],
        f: &mut dyn FnMut(&[u64]),
    ) {
        if pos == idx.len() {
            if w.iter().any(|&x| x > 0) {
                f(w);
            }
            return;
        }
        let e = idx[pos];
        let (mut lo, mut hi, mut parity) = (0u64, budget, None);
        for sides in &checks[pos] {
            let (l, h, p) = range_for(w, sides, e);
            lo = lo.max(l);
            hi = hi.min(h);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return,
                _ => {}
            }
        }
        let mut v = lo;
        if let Some(p) = parity {
            if v % 2 != p {
                v += 1;
            }
        }
        let step = if parity.is_some() { 2 } else { 1 };
        while v <= hi {
            w[e] = v;
            rec(pos + 1, budget - v, w, idx, checks, f);
            v += step;
        }
        w[e] = 0;
    }
    rec(0, max_weight, &mut w, &idx, &checks, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_intervals() {
        assert_eq!(cyclic_interval(8, &[8, 1]), Some((8, 2)));
        assert_eq!(cyclic_interval(8, &[2, 3, 4]), Some((2, 3)));
        assert_eq!(cyclic_interval(8, &[2, 4]), None);
        assert_eq!(cyclic_interval(8, &[7, 8, 1, 2]), Some((7, 4)));
    }

    #[test]
    fn block_curves_are_valid_keys() {
        for b in 4..=10 {
            for start in 1..=b {
                for len in 2..=b - 2 {
                    let block: Vec<usize> = (0..len).map(|k| (start - 1 + k) % b + 1).collect();
                    let k = block_curve(b, &block).unwrap();
                    CurveKey::new(b, k.weights().to_vec()).unwrap();
                    let sep = separation(&k);
                    let mut sides = sep.sides();
                    sides.iter_mut().for_each(|s| s.sort());
                    let mut sorted = block.clone();
                    sorted.sort();
                    assert!(sides.contains(&sorted), "b={b} block={block:?} sep={sep:?}");
                }
            }
        }
    }

    #[test]
    fn block_complement_symmetry() {
        let a = block_curve(8, &[2, 3, 4, 5, 6, 7]).unwrap();
        let c = block_curve(8, &[8, 1]).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn inessential_blocks() {
        assert!(matches!(block_curve(7, &[3]), Err(Error::Inessential(_))));
        assert!(matches!(block_curve(7, &[1, 2, 3, 4, 5, 6]), Err(Error::Inessential(_))));
    }

    #[test]
    fn nested_examples() {
        let s = |v: &[usize]| PunctureSeparation::new(7, v.iter().copied()).unwrap();
        assert!(nested_separations(&s(&[1, 2]), &s(&[1, 2, 3])));
        assert!(!nested_separations(&s(&[1, 2, 3]), &s(&[3, 4, 5])));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&block_curve(7, &[1, 2]).unwrap());
        assert!(c.minimal && !c.strongly_separating);
        let c = classify(&block_curve(7, &[1, 2, 3]).unwrap());
        assert!(c.one_separating && c.strongly_separating);
        let c = classify(&block_curve(9, &[1, 2, 3, 4]).unwrap());
        assert!(c.strongly_separating && !c.one_separating);
    }

    #[test]
    fn enumeration_contains_blocks_and_is_monotone() {
        let blocks: Vec<CurveKey> = (1..=5)
            .map(|s| block_curve(5, &[s, s % 5 + 1]).unwrap())
            .collect();
        let wmax = blocks.iter().map(|k| k.total_weight()).max().unwrap();
        let e = enumerate_curves(5, wmax);
        for k in &blocks {
            assert!(e.contains(k));
        }
        let mut prev = 0;
        for w in wmax..wmax + 4 {
            let n = enumerate_curves(5, w).len();
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn separates_examples() {
        let k = |b: usize, v: &[usize]| block_curve(b, v).unwrap();
        assert!(separates(&k(7, &[1, 2, 3]), &k(7, &[1, 2]), &k(7, &[4, 5])).unwrap());
        assert!(!separates(&k(8, &[1, 2, 3, 4]), &k(8, &[1, 2]), &k(8, &[3, 4])).unwrap());
        assert!(separates(&k(7, &[1, 2, 3]), &k(7, &[2, 3, 4]), &k(7, &[4, 5])).is_err());
    }
}
