//! The finite rigid set `X_b` from chords of a doubled `b`-gon.
//!
//! A chord joining two non-adjacent sides of the polygon cuts the punctures
//! (the polygon's vertices) into two cyclic blocks; it doubles to the block
//! curve. Vertices are stored by the block avoiding puncture `b`, an
//! interval of `1..b-1`.

use std::collections::BTreeSet;

use petgraph::graph::UnGraph;
use serde::Serialize;

use crate::engine::complement::components_by_separation;
use crate::error::{Error, Result};
use crate::farey::check_facet;
use crate::graph::LabelledGraph;
use crate::intersection::intersection_number;
use crate::key::CurveKey;
use crate::mapping::MappingWord;
use crate::topology::{apply_word, block_curve, cyclic_interval, half_twist_word};

/// Intervals of `1..b-1` with `2..=b-2` members, by size then start.
pub fn block_list(b: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for len in 2..=b - 2 {
        for start in 1..=b - len {
            out.push((start..start + len).collect());
        }
    }
    out
}

/// Chords are disjoint when their blocks are nested or disjoint.
pub fn blocks_disjoint(_b: usize, x: &[usize], y: &[usize]) -> bool {
    let (sx, sy): (BTreeSet<usize>, BTreeSet<usize>) = (x.iter().copied().collect(), y.iter().copied().collect());
    sx != sy && (sx.is_subset(&sy) || sy.is_subset(&sx) || sx.is_disjoint(&sy))
}

/// The block of a cyclic block avoiding puncture `b`.
pub fn finite_block(b: usize, block: &[usize]) -> Option<Vec<usize>> {
    let (start, len) = cyclic_interval(b, block)?;
    let members: Vec<usize> = (0..len).map(|k| (start - 1 + k) % b + 1).collect();
    let mut out = if members.contains(&b) {
        (1..b).filter(|p| !members.contains(p)).collect()
    } else {
        members
    };
    out.sort();
    Some(out)
}

fn block_label(block: &[usize]) -> String {
    let parts: Vec<String> = block.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChordGraph {
    pub b: usize,
    pub blocks: Vec<Vec<usize>>,
    pub curves: Vec<CurveKey>,
    #[serde(skip)]
    adj: Vec<Vec<bool>>,
}

impl ChordGraph {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Adjacency in `X_b`: disjoint chords.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.adj[v][u]).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| self.adj[u][v]).collect()
    }

    pub fn index_of(&self, block: &[usize]) -> Option<usize> {
        let f = finite_block(self.b, block)?;
        self.blocks.iter().position(|x| *x == f)
    }

    pub fn vertex_of_curve(&self, c: &CurveKey) -> Option<usize> {
        self.curves.iter().position(|x| x == c)
    }

    pub fn to_graph(&self) -> LabelledGraph {
        let mut g = LabelledGraph::new(format!("rigid-set-{}", self.b));
        for (blk, c) in self.blocks.iter().zip(&self.curves) {
            g.add_node(block_label(blk), Some(c.weights().to_vec()));
        }
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }

    fn petgraph_on(&self, verts: &[usize]) -> UnGraph<(), ()> {
        let mut g = UnGraph::<(), ()>::new_undirected();
        let ids: Vec<_> = verts.iter().map(|_| g.add_node(())).collect();
        for (a, &u) in verts.iter().enumerate() {
            for (c, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.adj[u][v] {
                    g.add_edge(ids[a], ids[c], ());
                }
            }
        }
        g
    }

    /// Is `v` disjoint from every vertex of `set` and not among them?
    pub fn in_link_of(&self, v: usize, set: &[usize]) -> bool {
        set.iter().all(|&r| self.adj[v][r])
    }
}

pub fn build_rigid_set(b: usize) -> Result<ChordGraph> {
    if b < 5 {
        return Err(Error::Unsupported(format!("X_b needs b >= 5, got {b}")));
    }
    let blocks = block_list(b);
    let curves = blocks.iter().map(|blk| block_curve(b, blk)).collect::<Result<Vec<_>>>()?;
    let adj = blocks
        .iter()
        .map(|x| blocks.iter().map(|y| blocks_disjoint(b, x, y)).collect())
        .collect();
    Ok(ChordGraph { b, blocks, curves, adj })
}

/// Vertex pairs whose intersection number disagrees with the chord model:
/// `0` on edges and `2` on non-edges.
pub fn embedding_violations(x: &ChordGraph, i: impl Fn(&CurveKey, &CurveKey) -> u64) -> Vec<(usize, usize, u64)> {
    let mut bad = Vec::new();
    for u in 0..x.len() {
        for v in u + 1..x.len() {
            let n = i(&x.curves[u], &x.curves[v]);
            if n != if x.adjacent(u, v) { 0 } else { 2 } {
                bad.push((u, v, n));
            }
        }
    }
    bad
}

/// Two-blocks: sides next to each other around the polygon.
pub fn two_block_vertices(x: &ChordGraph) -> Vec<usize> {
    (1..=x.b).map(|i| x.index_of(&[i, i % x.b + 1]).expect("two-block")).collect()
}

/// Vertices whose link is isomorphic to `X_{b-1}`, or all vertices when
/// `b = 5`.
pub fn minimal_vertices(x: &ChordGraph) -> Result<Vec<usize>> {
    if x.b == 5 {
        return Ok((0..x.len()).collect());
    }
    let smaller = build_rigid_set(x.b - 1)?;
    let target = smaller.petgraph_on(&(0..smaller.len()).collect::<Vec<_>>());
    Ok((0..x.len())
        .filter(|&v| {
            let link = x.neighbours(v);
            link.len() == smaller.len() && petgraph::algo::is_isomorphic(&x.petgraph_on(&link), &target)
        })
        .collect())
}

/// The isomorphism `Lk(beta) -> X_{b-1}` collapsing the two punctures of a
/// two-block `beta = {i, i+1}` into one, checked edge by edge. Returns the
/// image index of each link vertex.
pub fn collapse_isomorphism(x: &ChordGraph, beta: usize) -> Result<Vec<(usize, usize)>> {
    let b = x.b;
    let blk = &x.blocks[beta];
    let i = (1..=b)
        .find(|&i| finite_block(b, &[i, i % b + 1]).as_deref() == Some(blk.as_slice()))
        .ok_or(Error::NotMinimal)?;
    let j = i % b + 1;
    // relabel 1..b minus j in cyclic order starting after j
    let relabel = |p: usize| -> usize {
        let p = if p == j { i } else { p };
        let order: Vec<usize> = (0..b).map(|k| (j + k) % b + 1).filter(|&q| q != j).collect();
        order.iter().position(|&q| q == p).unwrap() + 1
    };
    let smaller = build_rigid_set(b - 1)?;
    let link = x.neighbours(beta);
    let mut map = Vec::new();
    for &v in &link {
        let img: BTreeSet<usize> = x.blocks[v].iter().map(|&p| relabel(p)).collect();
        let img: Vec<usize> = img.into_iter().collect();
        let t = smaller.index_of(&img).ok_or_else(|| Error::Degenerate(format!("no image for {:?}", x.blocks[v])))?;
        map.push((v, t));
    }
    let targets: BTreeSet<usize> = map.iter().map(|m| m.1).collect();
    if targets.len() != smaller.len() || map.len() != smaller.len() {
        return Err(Error::Degenerate("collapse is not a bijection".into()));
    }
    for &(u, s) in &map {
        for &(v, t) in &map {
            if u != v && x.adjacent(u, v) != smaller.adjacent(s, t) {
                return Err(Error::Degenerate("collapse does not preserve adjacency".into()));
            }
        }
    }
    Ok(map)
}

/// A word acting on the block curves as the cyclic shift `p -> p + 1`,
/// verified on every block.
pub fn rotation_word(b: usize) -> MappingWord {
    let up: Vec<i64> = (1..b as i64).collect();
    let down: Vec<i64> = (1..b as i64).rev().collect();
    let cands = [
        MappingWord::from_signed(&up).unwrap(),
        MappingWord::from_signed(&down).unwrap(),
        MappingWord::from_signed(&up).unwrap().inverse(),
        MappingWord::from_signed(&down).unwrap().inverse(),
    ];
    let shift = |blk: &[usize]| -> Vec<usize> { blk.iter().map(|&p| p % b + 1).collect() };
    cands
        .into_iter()
        .find(|w| {
            block_list(b).iter().all(|blk| {
                apply_word(w, &block_curve(b, blk).unwrap()) == block_curve(b, &shift(blk)).unwrap()
            })
        })
        .expect("one of the candidate words rotates the punctures")
}

/// Minimal vertices in cyclic order `{1,2}, {2,3}, .., {b,1}` with words
/// carrying `{1,2}` to each.
pub fn minimal_transporters(x: &ChordGraph) -> Vec<(usize, MappingWord)> {
    let r = rotation_word(x.b);
    two_block_vertices(x).into_iter().enumerate().map(|(k, v)| (v, r.pow(k as i64))).collect()
}

/// `X_b` together with its images under `H_beta` and `H_beta^-1` for every
/// minimal vertex `beta`, without repetitions.
pub fn build_y(x: &ChordGraph) -> Result<Vec<CurveKey>> {
    let mut out: Vec<CurveKey> = x.curves.clone();
    let mut seen: BTreeSet<CurveKey> = out.iter().cloned().collect();
    let minimal: Vec<(usize, MappingWord)> = if x.b == 5 {
        minimal_transporters(x)
    } else {
        let m = minimal_vertices(x)?;
        minimal_transporters(x).into_iter().filter(|(v, _)| m.contains(v)).collect()
    };
    for (v, t) in minimal {
        let h = half_twist_word(&x.curves[v], &t)?;
        for e in [1, -1] {
            let w = h.pow(e);
            for c in &x.curves {
                let img = apply_word(&w, c);
                if seen.insert(img.clone()) {
                    out.push(img);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PentagonCertificate {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub delta: usize,
    pub epsilon: usize,
    pub r: Vec<usize>,
}

impl PentagonCertificate {
    /// The pentagon in disjointness order `alpha, epsilon, beta, gamma, delta`.
    pub fn pentagon(&self) -> [usize; 5] {
        [self.alpha, self.epsilon, self.beta, self.gamma, self.delta]
    }

    /// The closed chain `gamma, alpha, beta, delta, epsilon`.
    pub fn chain(&self) -> [usize; 5] {
        [self.gamma, self.alpha, self.beta, self.delta, self.epsilon]
    }

    pub fn to_json(&self, x: &ChordGraph) -> serde_json::Value {
        let c = |v: usize| serde_json::to_value(&x.curves[v]).unwrap();
        serde_json::json!({
            "pentagon": self.pentagon().iter().map(|&v| c(v)).collect::<Vec<_>>(),
            "R": self.r.iter().map(|&v| c(v)).collect::<Vec<_>>(),
        })
    }
}

/// Cliques of size `k` among `pool`, first in lexicographic order.
fn find_clique(x: &ChordGraph, pool: &[usize], k: usize) -> Option<Vec<usize>> {
    fn rec(x: &ChordGraph, pool: &[usize], k: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == k {
            return true;
        }
        for (n, &v) in pool.iter().enumerate() {
            if x.in_link_of(v, cur) {
                cur.push(v);
                if rec(x, &pool[n + 1..], k, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::new();
    rec(x, pool, k, &mut cur).then_some(cur)
}

/// Auxiliary vertices and a codimension-two simplex of `X_b` exhibiting a
/// special pentagon through the crossing vertices `alpha` and `beta`.
pub fn special_pentagon_certificate(x: &ChordGraph, alpha: usize, beta: usize) -> Result<PentagonCertificate> {
    if alpha == beta || x.adjacent(alpha, beta) {
        return Err(Error::NotCrossing);
    }
    let n = x.len();
    let cross = |u: usize, v: usize| u != v && !x.adjacent(u, v);
    for epsilon in (0..n).filter(|&e| x.adjacent(e, alpha) && x.adjacent(e, beta)) {
        for gamma in (0..n).filter(|&g| cross(g, alpha) && cross(g, epsilon) && x.adjacent(g, beta)) {
            for delta in (0..n).filter(|&d| {
                cross(d, beta) && cross(d, epsilon) && x.adjacent(d, alpha) && x.adjacent(d, gamma)
            }) {
                let five = [alpha, beta, gamma, delta, epsilon];
                let pool: Vec<usize> = (0..n).filter(|&v| x.in_link_of(v, &five)).collect();
                if let Some(r) = find_clique(x, &pool, x.b - 5) {
                    return Ok(PentagonCertificate { alpha, beta, gamma, delta, epsilon, r });
                }
            }
        }
    }
    Err(Error::NotFound("no special pentagon inside X_b".into()))
}

/// Re-checks a certificate with intersection numbers of the embedded curves.
pub fn verify_pentagon(x: &ChordGraph, cert: &PentagonCertificate) -> Result<()> {
    let c = |v: usize| &x.curves[v];
    let fail = |m: &str| Err(Error::Degenerate(format!("pentagon certificate: {m}")));
    if cert.r.len() + 5 != x.b {
        return fail("R has the wrong size");
    }
    for (k, &u) in cert.r.iter().enumerate() {
        for &v in &cert.r[k + 1..] {
            if intersection_number(c(u), c(v)) != 0 {
                return fail("R is not a simplex");
            }
        }
    }
    let chain = cert.chain();
    for &v in &chain {
        if cert.r.contains(&v) || cert.r.iter().any(|&r| intersection_number(c(v), c(r)) != 0) {
            return fail("pentagon leaves the link of R");
        }
    }
    for a in 0..5 {
        for d in 1..5 {
            let i = intersection_number(c(chain[a]), c(chain[(a + d) % 5]));
            let consecutive = d == 1 || d == 4;
            if consecutive != (i > 0) {
                return fail("not a closed chain");
            }
            if consecutive && i != 2 {
                return fail("crossing pair with intersection number other than 2");
            }
        }
    }
    let mut facet: Vec<CurveKey> = cert.r.iter().map(|&v| c(v).clone()).collect();
    facet.push(c(cert.epsilon).clone());
    check_facet(x.b, &facet)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionVerdict {
    /// The facet `R + x` used, as vertices of `X_b`.
    pub facet: Vec<usize>,
    /// Window curves in `Lk(P) ∩ Lk(alpha)`.
    pub members: Vec<CurveKey>,
    pub window: u64,
    /// `members` is exactly the queried curve.
    pub unique: bool,
}

/// Searches a facet `P = R + x` inside `Lk_X(beta)` as in the extension
/// lemma and lists every window curve in `Lk(P) ∩ Lk(alpha)`.
pub fn extension_uniqueness_check(
    x: &ChordGraph,
    beta: usize,
    alpha: usize,
    z: &CurveKey,
    window: &[CurveKey],
    window_bound: u64,
) -> Result<ExtensionVerdict> {
    if x.adjacent(alpha, beta) {
        return Err(Error::NotCrossing);
    }
    let zi = |v: usize| intersection_number(&x.curves[v], z);
    let link = x.neighbours(beta);
    let pool: Vec<usize> =
        link.iter().copied().filter(|&v| x.adjacent(v, alpha) && zi(v) == 0 && x.curves[v] != *z).collect();
    // R: b-5 curves of the pool; x: a link vertex crossing alpha and missing z and R
    let mut found = None;
    for xv in link.iter().copied().filter(|&v| !x.adjacent(v, alpha) && v != alpha && zi(v) == 0 && x.curves[v] != *z) {
        let sub: Vec<usize> = pool.iter().copied().filter(|&v| x.adjacent(v, xv)).collect();
        if let Some(mut r) = find_clique(x, &sub, x.b - 5) {
            r.push(xv);
            let facet: Vec<CurveKey> = r.iter().map(|&v| x.curves[v].clone()).collect();
            if check_facet(x.b, &facet).is_ok() {
                found = Some(r);
                break;
            }
        }
    }
    let facet = found.ok_or_else(|| Error::NotFound("no facet for the extension lemma".into()))?;
    let p: Vec<&CurveKey> = facet.iter().map(|&v| &x.curves[v]).collect();
    let a = &x.curves[alpha];
    let members: Vec<CurveKey> = window
        .iter()
        .filter(|c| {
            *c != a && !p.contains(c) && intersection_number(c, a) == 0 && p.iter().all(|q| intersection_number(c, q) == 0)
        })
        .cloned()
        .collect();
    let unique = members.len() == 1 && members[0] == *z;
    Ok(ExtensionVerdict { facet, members, window: window_bound, unique })
}

/// Copies of `X_5` as curve sets: any two sharing four curves must be
/// equal. Returns the first offending pair.
pub fn four_shared_violation(copies: &[BTreeSet<CurveKey>]) -> Option<(usize, usize)> {
    for (i, a) in copies.iter().enumerate() {
        for (j, c) in copies.iter().enumerate().skip(i + 1) {
            if a.intersection(c).count() >= 4 && a != c {
                return Some((i, j));
            }
        }
    }
    None
}

/// Pants decomposition check used by callers building facets from `X_b`.
pub fn is_pants_decomposition(b: usize, curves: &[CurveKey]) -> bool {
    curves.len() + 3 == b && components_by_separation(curves).is_ok_and(|c| c.iter().all(|x| x.complexity == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::engine_intersection_number;
    use crate::topology::enumerate_curves;

    #[test]
    fn vertex_counts() {
        for b in 5..=10 {
            assert_eq!(build_rigid_set(b).unwrap().len(), b * (b - 3) / 2);
        }
        assert!(matches!(build_rigid_set(4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn x5_is_a_pentagon() {
        let x = build_rigid_set(5).unwrap();
        assert_eq!(x.edges().len(), 5);
        assert!(x.to_graph().degrees().iter().all(|&d| d == 2));
        let g = x.petgraph_on(&(0..5).collect::<Vec<_>>());
        assert_eq!(petgraph::algo::connected_components(&g), 1);
    }

    #[test]
    fn embedding_matches_engine() {
        for b in [5, 6] {
            let x = build_rigid_set(b).unwrap();
            assert!(embedding_violations(&x, |a, c| engine_intersection_number(a, c).unwrap()).is_empty());
        }
        for b in 7..=10 {
            let x = build_rigid_set(b).unwrap();
            assert!(embedding_violations(&x, intersection_number).is_empty());
        }
    }

    #[test]
    fn minimal_vertices_are_two_blocks() {
        assert_eq!(minimal_vertices(&build_rigid_set(5).unwrap()).unwrap().len(), 5);
        for b in 6..=8 {
            let x = build_rigid_set(b).unwrap();
            let mut m = minimal_vertices(&x).unwrap();
            let mut t = two_block_vertices(&x);
            m.sort();
            t.sort();
            assert_eq!(m, t, "b={b}");
            for v in t {
                collapse_isomorphism(&x, v).unwrap();
            }
        }
    }

    #[test]
    fn rotation() {
        for b in 5..=8 {
            let r = rotation_word(b);
            let x = build_rigid_set(b).unwrap();
            let tr = minimal_transporters(&x);
            for (v, t) in tr {
                assert_eq!(apply_word(&t, &crate::topology::standard_minimal(b)), x.curves[v]);
            }
            assert!(!r.is_empty());
        }
    }

    #[test]
    fn y_contains_x_and_is_close_to_it() {
        for b in [5, 6] {
            let x = build_rigid_set(b).unwrap();
            let y = build_y(&x).unwrap();
            assert_eq!(&y[..x.len()], &x.curves[..]);
            assert!(y.len() > x.len());
            let n = y.len();
            let adj = |u: usize, v: usize| u != v && intersection_number(&y[u], &y[v]) == 0;
            for (u, c) in y.iter().enumerate().skip(x.len()) {
                let near = (0..x.len()).any(|v| adj(u, v) || (0..n).any(|w| adj(u, w) && adj(w, v)));
                assert!(near, "b={b} {c:?}");
            }
        }
    }

    #[test]
    fn certificates() {
        let x = build_rigid_set(5).unwrap();
        let c = special_pentagon_certificate(&x, 0, 1).unwrap();
        assert!(c.r.is_empty());
        let mut p = c.pentagon().to_vec();
        p.sort();
        assert_eq!(p, vec![0, 1, 2, 3, 4]);
        let x = build_rigid_set(7).unwrap();
        let a = x.index_of(&[1, 2, 3]).unwrap();
        let b = x.index_of(&[2, 3, 4]).unwrap();
        let cert = special_pentagon_certificate(&x, a, b).unwrap();
        verify_pentagon(&x, &cert).unwrap();
        let d = x.index_of(&[5, 6]).unwrap();
        assert_eq!(special_pentagon_certificate(&x, a, d), Err(Error::NotCrossing));
    }

    #[test]
    fn extension_uniqueness_b7() {
        let x = build_rigid_set(7).unwrap();
        let beta = x.index_of(&[3, 4]).unwrap();
        let alpha = x.index_of(&[1, 2, 3]).unwrap();
        let z = x.index_of(&[4, 5]).unwrap();
        let wmax = x.curves.iter().map(|c| c.total_weight()).max().unwrap();
        let window = enumerate_curves(7, 2 * wmax);
        let v = extension_uniqueness_check(&x, beta, alpha, &x.curves[z], &window, 2 * wmax).unwrap();
        assert!(v.unique, "{v:?}");
        // a twisted z is not the curve singled out by the same facet
        let (_, t) = minimal_transporters(&x).into_iter().find(|(v, _)| *v == beta).unwrap();
        let h = half_twist_word(&x.curves[beta], &t).unwrap();
        let hz = apply_word(&h, &x.curves[z]);
        let v2 = extension_uniqueness_check(&x, beta, alpha, &hz, &window, 2 * wmax).unwrap();
        assert!(!v2.unique);
        assert_eq!(v2.members, vec![x.curves[z].clone()]);
    }

    #[test]
    fn x5_copies_sharing_four_curves() {
        let x = build_rigid_set(5).unwrap();
        let mut copies = vec![];
        let letters = [1i64, -1, 2, -2, 3, -3, 4, -4];
        for &a in &letters {
            for &c in &letters {
                let w = MappingWord::from_signed(&[a, c]).unwrap();
                copies.push(x.curves.iter().map(|k| apply_word(&w, k)).collect::<BTreeSet<_>>());
            }
        }
        assert_eq!(four_shared_violation(&copies), None);
    }
}
