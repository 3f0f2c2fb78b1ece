//! Combinatorial recognizers: chains, special intersections, the half-twist
//! characterization, surrounding pairs and triples, the heptagon and octagon
//! certificates, filled divisions and bizarre simplices.
//!
//! Every search runs over an explicit finite window of curves, in window
//! order, so results are deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use serde::Serialize;

use crate::engine::complement::{complement_components, filled_subsurface, ComplementComponent};
use crate::error::{BizarreViolation, Error, Result};
use crate::farey::{adjacent, check_facet, half_twist_on_slope, in_link, LinkFrame, Slope};
use crate::graph::LabelledGraph;
use crate::intersection::intersection_number;
use crate::key::CurveKey;
use crate::mapping::MappingWord;
use crate::rigid::{minimal_transporters, special_pentagon_certificate, ChordGraph};
use crate::topology::{apply_word, block_curve, classify, half_twist_word, separates, separation};

/// Consecutive curves cross, all other pairs are disjoint.
pub fn is_chain(seq: &[CurveKey]) -> bool {
    chain_check(seq, false)
}

/// As [`is_chain`] with indices taken cyclically.
pub fn is_closed_chain(seq: &[CurveKey]) -> bool {
    chain_check(seq, true)
}

fn chain_check(seq: &[CurveKey], closed: bool) -> bool {
    let n = seq.len();
    if n < 2 {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let consecutive = j == i + 1 || (closed && i == 0 && j == n - 1);
            if consecutive != (intersection_number(&seq[i], &seq[j]) > 0) {
                return false;
            }
        }
    }
    true
}

/// Auxiliary curves detecting a special intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialIntersection {
    pub gamma: CurveKey,
    pub delta: CurveKey,
    /// Position in the facet of the single curve both auxiliaries cross.
    pub epsilon: usize,
}

/// Searches `window` for `gamma`, `delta` making `gamma, alpha, beta, delta`
/// a chain, each crossing exactly the same single curve of `facet`.
pub fn detect_special_intersection(
    alpha: &CurveKey,
    beta: &CurveKey,
    facet: &[CurveKey],
    window: &[CurveKey],
) -> Result<Option<SpecialIntersection>> {
    let b = alpha.b();
    if beta.b() != b {
        return Err(Error::PunctureMismatch(b, beta.b()));
    }
    check_facet(b, facet)?;
    for (name, c) in [("alpha", alpha), ("beta", beta)] {
        if !in_link(facet, c) {
            return Err(Error::NotInLink(format!("{name} does not complete the facet")));
        }
    }
    if intersection_number(alpha, beta) == 0 {
        return Ok(None);
    }
    let crossed = |c: &CurveKey| -> Option<usize> {
        let mut hits = facet.iter().enumerate().filter(|(_, p)| intersection_number(p, c) > 0);
        match (hits.next(), hits.next()) {
            (Some((k, _)), None) => Some(k),
            _ => None,
        }
    };
    let aux = |hit: &CurveKey, miss: &CurveKey| -> Vec<(usize, &CurveKey)> {
        window
            .iter()
            .filter(|c| *c != alpha && *c != beta)
            .filter(|c| intersection_number(c, hit) > 0 && intersection_number(c, miss) == 0)
            .filter_map(|c| crossed(c).map(|e| (e, c)))
            .collect()
    };
    let gammas = aux(alpha, beta);
    let deltas = aux(beta, alpha);
    for (eg, g) in &gammas {
        for (ed, d) in &deltas {
            if eg == ed && intersection_number(g, d) == 0 {
                return Ok(Some(SpecialIntersection { gamma: (*g).clone(), delta: (*d).clone(), epsilon: *eg }));
            }
        }
    }
    Ok(None)
}

/// Outcome of the half-twist characterization for a pair of `X_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfTwistVerdict {
    pub disjoint: bool,
    /// `H_beta(alpha) == alpha`.
    pub fixed: bool,
    pub facet: Vec<CurveKey>,
    /// Link curves of the window whose slopes are Farey neighbours of both
    /// `alpha` and `beta`.
    pub candidates: Vec<CurveKey>,
    /// `H_beta(alpha)` and `H_beta^-1(alpha)`, sorted.
    pub images: Vec<CurveKey>,
    pub images_in_window: bool,
    /// The images sit at the two slopes obtained by half-twisting `0/1`
    /// about `1/0`.
    pub slopes_agree: bool,
    /// Both images have special intersection with `alpha` and with `beta`
    /// relative to `facet`.
    pub images_special: bool,
}

impl HalfTwistVerdict {
    pub fn holds(&self) -> bool {
        if self.disjoint {
            return self.fixed;
        }
        !self.fixed
            && self.images[0] != self.images[1]
            && self.candidates == self.images
            && self.slopes_agree
            && self.images_special
    }

    /// False when an image curve lies outside the search window.
    pub fn resolved(&self) -> bool {
        self.disjoint || self.images_in_window
    }
}

/// Checks both halves of the half-twist characterization for `alpha` and a
/// minimal vertex `beta` of `X_b`. The facet is the one of a special
/// pentagon through the pair; slopes are read in a frame with `alpha = 0/1`
/// and `beta = 1/0`.
pub fn halftwist_characterization_check(
    x: &ChordGraph,
    alpha: usize,
    beta: usize,
    window: &[CurveKey],
) -> Result<HalfTwistVerdict> {
    let t = minimal_transporters(x)
        .into_iter()
        .find(|(v, _)| *v == beta)
        .map(|(_, w)| w)
        .ok_or(Error::NotMinimal)?;
    let (a, bc) = (&x.curves[alpha], &x.curves[beta]);
    let h = half_twist_word(bc, &t)?;
    let plus = apply_word(&h, a);
    let minus = apply_word(&h.inverse(), a);
    let fixed = plus == *a && minus == *a;
    let mut images = vec![plus.clone(), minus.clone()];
    images.sort();
    if alpha == beta || x.adjacent(alpha, beta) {
        return Ok(HalfTwistVerdict {
            disjoint: true,
            fixed,
            facet: Vec::new(),
            candidates: Vec::new(),
            images,
            images_in_window: true,
            slopes_agree: true,
            images_special: true,
        });
    }
    let cert = special_pentagon_certificate(x, alpha, beta)?;
    let mut facet: Vec<CurveKey> = cert.r.iter().map(|&v| x.curves[v].clone()).collect();
    facet.push(x.curves[cert.epsilon].clone());
    let link: Vec<CurveKey> = window.iter().filter(|c| in_link(&facet, c)).cloned().collect();
    let frame = LinkFrame::search(facet.clone(), a.clone(), bc.clone(), &link)?;
    let zero = Slope::new(0, 1)?;
    let inf = Slope::infinity();
    let mut candidates = Vec::new();
    for c in &link {
        let s = frame.curve_slope(c)?;
        if adjacent(s, zero) && adjacent(s, inf) {
            candidates.push(c.clone());
        }
    }
    candidates.sort();
    let expected: BTreeSet<Slope> = [1, -1].iter().map(|&k| half_twist_on_slope(inf, k, zero)).collect();
    let got: BTreeSet<Slope> = [&plus, &minus].iter().map(|c| frame.curve_slope(c)).collect::<Result<_>>()?;
    let mut images_special = true;
    for img in [&plus, &minus] {
        for other in [a, bc] {
            if detect_special_intersection(img, other, &facet, window)?.is_none() {
                images_special = false;
            }
        }
    }
    Ok(HalfTwistVerdict {
        disjoint: false,
        fixed,
        facet,
        candidates,
        images_in_window: images.iter().all(|c| window.contains(c)),
        images,
        slopes_agree: got == expected,
        images_special,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurroundKind {
    Pair,
    Triple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurroundingCertificate {
    pub kind: SurroundKind,
    pub curves: Vec<CurveKey>,
    /// The surrounded minimal curve.
    pub omega: CurveKey,
}

/// The three-puncture side of a one-separating curve on `b >= 7`.
fn three_side(c: &CurveKey) -> Option<Vec<usize>> {
    let [x, y] = separation(c).sides();
    match (x.len(), y.len()) {
        (3, n) if n > 3 => Some(x),
        (n, 3) if n > 3 => Some(y),
        _ => None,
    }
}

fn bounds(c: &CurveKey, set: &[usize]) -> bool {
    let [x, y] = separation(c).sides();
    x == set || y == set
}

/// Recognizes a surrounding pair from the definition: three-punctured disks
/// meeting twice whose overlap is a twice-punctured disk, the latter read
/// off the subsurface the two curves fill.
pub fn is_surrounding_pair(a: &CurveKey, c: &CurveKey) -> Option<SurroundingCertificate> {
    let b = a.b();
    if c.b() != b || b < 7 {
        return None;
    }
    let (sa, sc) = (three_side(a)?, three_side(c)?);
    let shared: Vec<usize> = sa.iter().copied().filter(|p| sc.contains(p)).collect();
    if shared.len() != 2 || intersection_number(a, c) != 2 {
        return None;
    }
    let union: BTreeSet<usize> = sa.iter().chain(&sc).copied().collect();
    let lone: Vec<usize> = union.iter().copied().filter(|p| !shared.contains(p)).collect();
    let union: Vec<usize> = union.into_iter().collect();
    let (comp, boundary) = filled_subsurface(a, c).ok()?;
    if comp.punctures != lone || boundary.len() != 2 {
        return None;
    }
    let omega = boundary.iter().find(|k| bounds(k, &shared))?.clone();
    boundary.iter().find(|k| bounds(k, &union))?;
    Some(SurroundingCertificate { kind: SurroundKind::Pair, curves: vec![a.clone(), c.clone()], omega })
}

/// Three curves pairwise forming surrounding pairs around one minimal curve.
pub fn is_surrounding_triple(a: &CurveKey, c: &CurveKey, d: &CurveKey) -> Option<SurroundingCertificate> {
    let p = is_surrounding_pair(a, c)?;
    let q = is_surrounding_pair(c, d)?;
    let r = is_surrounding_pair(a, d)?;
    (p.omega == q.omega && q.omega == r.omega).then(|| SurroundingCertificate {
        kind: SurroundKind::Triple,
        curves: vec![a.clone(), c.clone(), d.clone()],
        omega: p.omega,
    })
}

fn cyclic_block(b: usize, start: usize, len: usize) -> Vec<usize> {
    (0..len).map(|k| (start - 1 + k) % b + 1).collect()
}

/// The seven rotated three-blocks of `S_7`, transported by a word, in the
/// cycle order given by disjointness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeptagonCertificate {
    pub transporter: MappingWord,
    /// First puncture of the standard block behind each cycle vertex.
    pub starts: Vec<usize>,
    pub cycle: Vec<CurveKey>,
    pub alpha_position: usize,
    pub beta_position: usize,
    /// Consecutive vertices are disjoint and vertices at distance at most
    /// two are distinct.
    pub immersed: bool,
    /// No disjoint pairs beyond the cycle edges.
    pub induced: bool,
    pub separations_distinct: bool,
    /// Minimal curve surrounded by each pair `(k, k+2)`, if any.
    pub surrounded: Vec<Option<CurveKey>>,
}

impl HeptagonCertificate {
    pub fn is_valid(&self) -> bool {
        let d = (self.alpha_position + 7 - self.beta_position) % 7;
        self.immersed && self.separations_distinct && self.surrounded.iter().all(Option::is_some) && (d == 2 || d == 5)
    }

    pub fn to_graph(&self) -> LabelledGraph {
        let mut g = LabelledGraph::new("heptagon");
        for (s, c) in self.starts.iter().zip(&self.cycle) {
            let blk: Vec<String> = cyclic_block(7, *s, 3).iter().map(|p| p.to_string()).collect();
            g.add_node(format!("w{{{}}}", blk.join(",")), Some(c.weights().to_vec()));
        }
        for u in 0..7 {
            for v in u + 1..7 {
                if intersection_number(&self.cycle[u], &self.cycle[v]) == 0 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

/// Builds the heptagon through a surrounding pair presented as the image of
/// the standard pair `{1,2,3}, {2,3,4}` under `w`.
pub fn heptagon_certificate(alpha: &CurveKey, beta: &CurveKey, w: &MappingWord) -> Result<HeptagonCertificate> {
    let b = 7;
    if alpha.b() != b || beta.b() != b {
        return Err(Error::Unsupported("heptagons live on S_7".into()));
    }
    w.check(b)?;
    let std = |s: usize| -> Result<CurveKey> { Ok(apply_word(w, &block_curve(b, &cyclic_block(b, s, 3))?)) };
    if std(1)? != *alpha || std(2)? != *beta {
        return Err(Error::TransporterMismatch);
    }
    if is_surrounding_pair(alpha, beta).is_none() {
        return Err(Error::Precondition("not a surrounding pair".into()));
    }
    let starts: Vec<usize> = (0..7).map(|k| (3 * k) % 7 + 1).collect();
    let cycle: Vec<CurveKey> = starts.iter().map(|&s| std(s)).collect::<Result<_>>()?;
    let i = |u: usize, v: usize| intersection_number(&cycle[u % 7], &cycle[v % 7]);
    let immersed = (0..7).all(|k| i(k, k + 1) == 0 && cycle[k] != cycle[(k + 1) % 7] && cycle[k] != cycle[(k + 2) % 7]);
    let induced = (0..7).all(|k| (2..=5).all(|d| i(k, k + d) > 0));
    let seps: BTreeSet<_> = cycle.iter().map(separation).collect();
    let surrounded =
        (0..7).map(|k| is_surrounding_pair(&cycle[k], &cycle[(k + 2) % 7]).map(|c| c.omega)).collect();
    Ok(HeptagonCertificate {
        transporter: w.clone(),
        alpha_position: starts.iter().position(|&s| s == 1).unwrap(),
        beta_position: starts.iter().position(|&s| s == 2).unwrap(),
        starts,
        cycle,
        immersed,
        induced,
        separations_distinct: seps.len() == 7,
        surrounded,
    })
}

/// The eight three-blocks of `S_8` with their disjointness graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OctagonCertificate {
    pub blocks: Vec<Vec<usize>>,
    pub curves: Vec<CurveKey>,
    pub edges: Vec<(usize, usize)>,
}

pub fn octagon_certificate() -> OctagonCertificate {
    let b = 8;
    let blocks: Vec<Vec<usize>> = (1..=b).map(|s| cyclic_block(b, s, 3)).collect();
    let curves: Vec<CurveKey> = blocks.iter().map(|blk| block_curve(b, blk).expect("three-blocks are essential")).collect();
    let mut edges = Vec::new();
    for u in 0..b {
        for v in u + 1..b {
            if intersection_number(&curves[u], &curves[v]) == 0 {
                edges.push((u, v));
            }
        }
    }
    OctagonCertificate { blocks, curves, edges }
}

impl OctagonCertificate {
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Number of paths `u - w - v` inside the graph.
    pub fn length_two_paths(&self, u: usize, v: usize) -> usize {
        (0..self.curves.len()).filter(|&w| w != u && w != v && self.adjacent(u, w) && self.adjacent(w, v)).count()
    }

    /// Edges are exactly `i ~ i+3`, `i ~ i+5` and the long diagonals
    /// `i ~ i+4`, and the graph is isomorphic to an octagon with its four
    /// long diagonals.
    pub fn matches_model(&self) -> bool {
        let n = self.curves.len();
        let labelled = (0..n).all(|u| {
            (0..n).filter(|&v| v != u).all(|v| self.adjacent(u, v) == matches!((v + n - u) % n, 3..=5))
        });
        let mut g = UnGraph::<(), ()>::new_undirected();
        let ids: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for &(u, v) in &self.edges {
            g.add_edge(ids[u], ids[v], ());
        }
        let mut m = UnGraph::<(), ()>::new_undirected();
        let mids: Vec<_> = (0..n).map(|_| m.add_node(())).collect();
        for k in 0..n {
            m.add_edge(mids[k], mids[(k + 1) % n], ());
        }
        for k in 0..n / 2 {
            m.add_edge(mids[k], mids[k + n / 2], ());
        }
        labelled && is_isomorphic(&g, &m)
    }

    pub fn to_graph(&self) -> LabelledGraph {
        let mut g = LabelledGraph::new("octagon");
        for (blk, c) in self.blocks.iter().zip(&self.curves) {
            let parts: Vec<String> = blk.iter().map(|p| p.to_string()).collect();
            g.add_node(format!("{{{}}}", parts.join(",")), Some(c.weights().to_vec()));
        }
        for &(u, v) in &self.edges {
            g.add_edge(u, v);
        }
        g
    }
}

/// The graph-theoretic surrounding test on the octagon: exactly two paths
/// of length two. False for curves outside the octagon.
pub fn surrounding_pair_via_o(a: &CurveKey, c: &CurveKey, o: &OctagonCertificate) -> bool {
    match (o.curves.iter().position(|x| x == a), o.curves.iter().position(|x| x == c)) {
        (Some(u), Some(v)) if u != v => o.length_two_paths(u, v) == 2,
        _ => false,
    }
}

/// Two filling pairs on either side of a strongly separating curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionWitness {
    pub alpha_plus: CurveKey,
    pub alpha_minus: CurveKey,
    pub beta_plus: CurveKey,
    pub beta_minus: CurveKey,
    pub delta: CurveKey,
    /// One-separating window curves disjoint from `alpha_minus` and
    /// `beta_minus`, at most `n_w` of them.
    pub plus_witnesses: Vec<CurveKey>,
    pub minus_witnesses: Vec<CurveKey>,
    pub n_w: usize,
}

impl DivisionWitness {
    /// Both sides reached `n_w` witnesses inside the window.
    pub fn saturated(&self) -> bool {
        self.plus_witnesses.len() >= self.n_w && self.minus_witnesses.len() >= self.n_w
    }
}

/// The unique strongly separating boundary curve of the subsurface filled
/// by `a` and `c`, if there is exactly one.
pub fn strongly_separating_boundary(a: &CurveKey, c: &CurveKey) -> Result<Option<CurveKey>> {
    let (_, boundary) = filled_subsurface(a, c)?;
    let mut ss = boundary.into_iter().filter(|k| classify(k).strongly_separating);
    Ok(match (ss.next(), ss.next()) {
        (Some(d), None) => Some(d),
        _ => None,
    })
}

/// Recognizes a filled division and reconstructs its curve `delta`. Returns
/// `None` when the four curves are not an embedded square, when the two
/// filled subsurfaces do not share their strongly separating boundary (a
/// punctured annulus between them), or when window witnesses on opposite
/// sides cross.
pub fn filled_division(
    alpha_plus: &CurveKey,
    alpha_minus: &CurveKey,
    beta_plus: &CurveKey,
    beta_minus: &CurveKey,
    window: &[CurveKey],
    n_w: usize,
) -> Result<Option<DivisionWitness>> {
    let four = [alpha_plus, alpha_minus, beta_plus, beta_minus];
    let b = alpha_plus.b();
    if let Some(c) = four.iter().find(|c| c.b() != b) {
        return Err(Error::PunctureMismatch(b, c.b()));
    }
    if b < 7 {
        return Err(Error::Unsupported(format!("filled divisions need b >= 7, got {b}")));
    }
    if four.iter().any(|c| !classify(c).one_separating) {
        return Err(Error::Precondition("filled divisions take one-separating curves".into()));
    }
    let i = intersection_number;
    let sides = [(alpha_plus, alpha_minus), (alpha_minus, beta_plus), (beta_plus, beta_minus), (beta_minus, alpha_plus)];
    let square = sides.iter().all(|(x, y)| x != y && i(x, y) == 0)
        && i(alpha_plus, beta_plus) > 0
        && i(alpha_minus, beta_minus) > 0;
    if !square {
        return Ok(None);
    }
    let (Some(dp), Some(dm)) =
        (strongly_separating_boundary(alpha_plus, beta_plus)?, strongly_separating_boundary(alpha_minus, beta_minus)?)
    else {
        return Ok(None);
    };
    if dp != dm {
        return Ok(None);
    }
    if four.iter().any(|c| i(c, &dp) != 0) {
        return Err(Error::Degenerate("reconstructed curve meets the square".into()));
    }
    let link = |x: &CurveKey, y: &CurveKey| -> Vec<CurveKey> {
        window
            .iter()
            .filter(|c| classify(c).one_separating && *c != x && *c != y && i(c, x) == 0 && i(c, y) == 0)
            .cloned()
            .collect()
    };
    let plus = link(alpha_minus, beta_minus);
    let minus = link(alpha_plus, beta_plus);
    for p in &plus {
        for m in &minus {
            if p == m || i(p, m) != 0 {
                return Ok(None);
            }
        }
    }
    Ok(Some(DivisionWitness {
        alpha_plus: alpha_plus.clone(),
        alpha_minus: alpha_minus.clone(),
        beta_plus: beta_plus.clone(),
        beta_minus: beta_minus.clone(),
        delta: dp,
        plus_witnesses: plus.into_iter().take(n_w).collect(),
        minus_witnesses: minus.into_iter().take(n_w).collect(),
        n_w,
    }))
}

/// Checks the bizarre conditions on `delta = (d_3, .., d_{b-6})` and returns
/// the peripheral component cut out by the last curve.
pub fn bizarre_simplex(b: usize, delta: &[CurveKey]) -> Result<ComplementComponent> {
    let fail = |v| Err(Error::Bizarre(v));
    if b < 9 {
        return fail(BizarreViolation::TooFewPunctures);
    }
    if delta.len() != b - 8 {
        return fail(BizarreViolation::WrongLength);
    }
    if let Some(c) = delta.iter().find(|c| c.b() != b) {
        return Err(Error::PunctureMismatch(b, c.b()));
    }
    for (k, x) in delta.iter().enumerate() {
        if delta[..k].iter().any(|y| y == x || intersection_number(x, y) != 0) {
            return fail(BizarreViolation::NotAMulticurve);
        }
    }
    if !classify(&delta[0]).one_separating {
        return fail(BizarreViolation::FirstNotOneSeparating);
    }
    if delta.iter().any(|c| !classify(c).strongly_separating) {
        return fail(BizarreViolation::NotStronglySeparating);
    }
    for k in 1..delta.len().saturating_sub(1) {
        if !separates(&delta[k], &delta[k - 1], &delta[k + 1])? {
            return fail(BizarreViolation::NotSeparating);
        }
    }
    let comps = complement_components(delta)?;
    for k in 0..delta.len() - 1 {
        let ok = comps.iter().any(|c| c.boundary_curves == [k, k + 1] && c.punctures.len() == 1);
        if !ok {
            return fail(BizarreViolation::AnnulusPunctureCount);
        }
    }
    let last = delta.len() - 1;
    let outer = comps
        .into_iter()
        .find(|c| c.boundary_curves == [last] && (last > 0 || c.punctures.len() != 3))
        .ok_or_else(|| Error::Degenerate("no peripheral component".into()))?;
    if outer.punctures.len() != 6 {
        return Err(Error::Degenerate(format!("peripheral component has {} punctures", outer.punctures.len())));
    }
    Ok(outer)
}

/// Window curves that can surround the minimal curve `omega`: one-separating,
/// disjoint from it, with its two punctures on the three-puncture side.
fn surround_pool(omega: &CurveKey, window: &[CurveKey]) -> Vec<CurveKey> {
    let pair = separation(omega).sides().into_iter().find(|s| s.len() == 2).expect("minimal curve");
    window
        .iter()
        .filter(|c| {
            three_side(c).is_some_and(|s| pair.iter().all(|p| s.contains(p))) && intersection_number(c, omega) == 0
        })
        .cloned()
        .collect()
}

/// Two curves of a surround pool around the same `omega` whose disks share
/// exactly its two punctures and which meet twice. For such curves the
/// overlap of the disks is the twice-punctured disk bounded by `omega`.
fn pool_pair(x: &CurveKey, y: &CurveKey) -> bool {
    let (sx, sy) = (three_side(x).unwrap(), three_side(y).unwrap());
    sx.iter().filter(|p| sy.contains(p)).count() == 2 && intersection_number(x, y) == 2
}

/// A sequence of surrounding triples turning one surrounding pair into
/// another, replacing one curve per step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleChain {
    pub omega: CurveKey,
    pub pairs: Vec<[CurveKey; 2]>,
    pub triples: Vec<[CurveKey; 3]>,
}

/// Breadth-first search over surrounding pairs of the window, moving along
/// surrounding triples. Each triple of the answer is re-verified with
/// [`is_surrounding_triple`]. `None` means nothing within `max_steps`.
pub fn triple_chain(
    start: (&CurveKey, &CurveKey),
    goal: (&CurveKey, &CurveKey),
    window: &[CurveKey],
    max_steps: usize,
) -> Result<Option<TripleChain>> {
    let s = is_surrounding_pair(start.0, start.1).ok_or_else(|| Error::Precondition("start is not a surrounding pair".into()))?;
    let g = is_surrounding_pair(goal.0, goal.1).ok_or_else(|| Error::Precondition("goal is not a surrounding pair".into()))?;
    if s.omega != g.omega {
        return Err(Error::Precondition("pairs surround different minimal curves".into()));
    }
    let mut all: Vec<CurveKey> = window.to_vec();
    all.extend([start.0, start.1, goal.0, goal.1].into_iter().cloned());
    let mut pool = surround_pool(&s.omega, &all);
    pool.sort();
    pool.dedup();
    let n = pool.len();
    let idx = |c: &CurveKey| pool.binary_search(c).unwrap();
    let mut adj = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let e = pool_pair(&pool[u], &pool[v]);
            adj[u][v] = e;
            adj[v][u] = e;
        }
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let from = key(idx(start.0), idx(start.1));
    let to = key(idx(goal.0), idx(goal.1));
    let mut prev: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut depth: HashMap<(usize, usize), usize> = HashMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(cur) = queue.pop_front() {
        if cur == to {
            break;
        }
        let d = depth[&cur];
        if d == max_steps {
            continue;
        }
        let (u, v) = cur;
        for w in (0..n).filter(|&w| w != u && w != v && adj[u][w] && adj[v][w]) {
            for next in [key(u, w), key(v, w)] {
                if let std::collections::hash_map::Entry::Vacant(e) = depth.entry(next) {
                    e.insert(d + 1);
                    prev.insert(next, cur);
                    queue.push_back(next);
                }
            }
        }
    }
    if !depth.contains_key(&to) {
        return Ok(None);
    }
    let mut path = vec![to];
    while let Some(p) = prev.get(path.last().unwrap()) {
        path.push(*p);
    }
    path.reverse();
    let pairs: Vec<[CurveKey; 2]> = path.iter().map(|&(u, v)| [pool[u].clone(), pool[v].clone()]).collect();
    let mut triples = Vec::new();
    for w in path.windows(2) {
        let set: BTreeSet<usize> = [w[0].0, w[0].1, w[1].0, w[1].1].into_iter().collect();
        let t: Vec<&CurveKey> = set.iter().map(|&k| &pool[k]).collect();
        let cert = is_surrounding_triple(t[0], t[1], t[2])
            .ok_or_else(|| Error::Degenerate("search step is not a surrounding triple".into()))?;
        if cert.omega != s.omega {
            return Err(Error::Degenerate("triple surrounds another minimal curve".into()));
        }
        triples.push([t[0].clone(), t[1].clone(), t[2].clone()]);
    }
    Ok(Some(TripleChain { omega: s.omega, pairs, triples }))
}

/// Chain from `start` to its image under the product of `pieces`, each
/// piece fixing the surrounded curve. Searches one piece at a time and
/// transports the partial chains by the preceding pieces; every triple of
/// the result is re-verified.
pub fn triple_chain_by_pieces(
    start: (&CurveKey, &CurveKey),
    pieces: &[MappingWord],
    window: &[CurveKey],
    max_steps: usize,
) -> Result<Option<TripleChain>> {
    let s = is_surrounding_pair(start.0, start.1).ok_or_else(|| Error::Precondition("start is not a surrounding pair".into()))?;
    let mut pairs = vec![[start.0.clone(), start.1.clone()]];
    let mut triples = Vec::new();
    let mut prefix = MappingWord::identity();
    for p in pieces {
        let goal = (apply_word(p, start.0), apply_word(p, start.1));
        let Some(ch) = triple_chain(start, (&goal.0, &goal.1), window, max_steps)? else { return Ok(None) };
        let mv = |c: &CurveKey| apply_word(&prefix, c);
        pairs.extend(ch.pairs[1..].iter().map(|[x, y]| [mv(x), mv(y)]));
        triples.extend(ch.triples.iter().map(|[x, y, z]| [mv(x), mv(y), mv(z)]));
        prefix = prefix.then_after(p);
    }
    for [x, y, z] in &triples {
        match is_surrounding_triple(x, y, z) {
            Some(c) if c.omega == s.omega => {}
            _ => return Err(Error::Degenerate("transported step is not a surrounding triple".into())),
        }
    }
    Ok(Some(TripleChain { omega: s.omega, pairs, triples }))
}

/// Disjoint curves surrounding `omega` and `omega2` respectively, each
/// certified by a surrounding pair drawn from the window.
pub fn disjoint_surrounding(
    omega: &CurveKey,
    omega2: &CurveKey,
    window: &[CurveKey],
) -> Option<(SurroundingCertificate, SurroundingCertificate)> {
    let p1 = surround_pool(omega, window);
    let p2 = surround_pool(omega2, window);
    let partner = |a: &CurveKey, pool: &[CurveKey], om: &CurveKey| {
        pool.iter().filter(|c| pool_pair(a, c)).find_map(|c| is_surrounding_pair(a, c).filter(|s| s.omega == *om))
    };
    for a in &p1 {
        for a2 in p2.iter().filter(|a2| *a2 != a && intersection_number(a, a2) == 0) {
            if let (Some(s1), Some(s2)) = (partner(a, &p1, omega), partner(a2, &p2, omega2)) {
                return Some((s1, s2));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigid::build_rigid_set;
    use crate::topology::{block_twist_word, enumerate_curves};
    use rand::SeedableRng;

    fn blk(b: usize, v: &[usize]) -> CurveKey {
        block_curve(b, v).unwrap()
    }

    #[test]
    fn chains() {
        assert!(is_chain(&[blk(7, &[1, 2]), blk(7, &[2, 3]), blk(7, &[3, 4])]));
        assert!(!is_chain(&[blk(7, &[1, 2]), blk(7, &[3, 4])]));
        let x = build_rigid_set(7).unwrap();
        let (a, b) = first_crossing(&x);
        let cert = special_pentagon_certificate(&x, a, b).unwrap();
        let five: Vec<CurveKey> = cert.chain().iter().map(|&v| x.curves[v].clone()).collect();
        assert!(is_closed_chain(&five));
        assert!(is_chain(&five[..4]));
        assert!(!is_chain(&five));
    }

    fn first_crossing(x: &ChordGraph) -> (usize, usize) {
        let n = x.len();
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !x.adjacent(u, v)).unwrap()
    }

    #[test]
    fn special_intersection_in_x7() {
        let x = build_rigid_set(7).unwrap();
        let window = enumerate_curves(7, 20);
        let (a, b) = first_crossing(&x);
        let cert = special_pentagon_certificate(&x, a, b).unwrap();
        let mut facet: Vec<CurveKey> = cert.r.iter().map(|&v| x.curves[v].clone()).collect();
        facet.push(x.curves[cert.epsilon].clone());
        let (ca, cb) = (&x.curves[a], &x.curves[b]);
        let found = detect_special_intersection(ca, cb, &facet, &window).unwrap().unwrap();
        assert!(is_chain(&[found.gamma.clone(), ca.clone(), cb.clone(), found.delta.clone()]));
        let eps = &facet[found.epsilon];
        for aux in [&found.gamma, &found.delta] {
            let hits: Vec<_> = facet.iter().filter(|p| intersection_number(p, aux) > 0).collect();
            assert_eq!(hits, vec![eps]);
        }
        // the rigid-set auxiliaries are admissible witnesses too
        let own = detect_special_intersection(
            ca,
            cb,
            &facet,
            &[x.curves[cert.gamma].clone(), x.curves[cert.delta].clone()],
        )
        .unwrap()
        .unwrap();
        assert_eq!(own.epsilon, facet.len() - 1);
        assert_eq!(detect_special_intersection(ca, ca, &facet, &window).unwrap(), None);
        assert!(detect_special_intersection(ca, &x.curves[cert.epsilon], &facet, &window).is_err());
    }

    #[test]
    fn half_twists_in_x6_and_x7() {
        for b in [6, 7] {
            let x = build_rigid_set(b).unwrap();
            let window = enumerate_curves(b, 4 * (b as u64 - 2));
            for (beta, _) in minimal_transporters(&x) {
                for alpha in 0..x.len() {
                    let v = halftwist_characterization_check(&x, alpha, beta, &window).unwrap();
                    assert!(v.resolved(), "b={b} {alpha} {beta}");
                    assert!(v.holds(), "b={b} {alpha} {beta}: {v:?}");
                    assert_eq!(v.disjoint, v.fixed);
                }
            }
        }
    }

    #[test]
    fn surrounding_pairs() {
        let c = is_surrounding_pair(&blk(7, &[1, 2, 3]), &blk(7, &[2, 3, 4])).unwrap();
        assert_eq!(c.omega, blk(7, &[2, 3]));
        assert_eq!(c.kind, SurroundKind::Pair);
        assert!(is_surrounding_pair(&blk(7, &[1, 2, 3]), &blk(7, &[4, 5, 6])).is_none());
        assert!(is_surrounding_pair(&blk(7, &[1, 2, 3]), &blk(7, &[3, 4, 5])).is_none());
        assert!(is_surrounding_pair(&blk(7, &[1, 2]), &blk(7, &[2, 3, 4])).is_none());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let w = MappingWord::random(7, 4, &mut rng);
            let (a, b) = (apply_word(&w, &blk(7, &[1, 2, 3])), apply_word(&w, &blk(7, &[2, 3, 4])));
            assert_eq!(is_surrounding_pair(&a, &b).unwrap().omega, apply_word(&w, &c.omega));
        }
    }

    #[test]
    fn surrounding_triple_through_the_window() {
        let (a, b) = (blk(7, &[1, 2, 3]), blk(7, &[7, 1, 2]));
        assert_eq!(is_surrounding_pair(&a, &b).unwrap().omega, blk(7, &[1, 2]));
        let third = enumerate_curves(7, 16)
            .into_iter()
            .find_map(|c| is_surrounding_triple(&a, &b, &c))
            .expect("a third curve in the window");
        assert_eq!(third.omega, blk(7, &[1, 2]));
        let sides: BTreeSet<Vec<usize>> = third.curves.iter().map(|c| three_side(c).unwrap()).collect();
        assert_eq!(sides.len(), 3);
        assert!(is_surrounding_triple(&blk(7, &[1, 2, 3]), &blk(7, &[4, 5, 6]), &blk(7, &[7, 1, 2])).is_none());
        let w = MappingWord::from_signed(&[3, -5, 2, 6]).unwrap();
        let img: Vec<CurveKey> = third.curves.iter().map(|c| apply_word(&w, c)).collect();
        assert_eq!(is_surrounding_triple(&img[0], &img[1], &img[2]).unwrap().omega, apply_word(&w, &third.omega));
    }

    #[test]
    fn standard_heptagon() {
        let h = heptagon_certificate(&blk(7, &[1, 2, 3]), &blk(7, &[2, 3, 4]), &MappingWord::identity()).unwrap();
        assert!(h.is_valid(), "{h:?}");
        assert!(h.induced);
        for k in 0..7 {
            let s = h.starts[k];
            assert_eq!(h.cycle[k], blk(7, &cyclic_block(7, s, 3)));
            assert_eq!(h.starts[(k + 1) % 7], (s + 2) % 7 + 1);
        }
        assert_eq!(h.to_graph().degrees(), vec![2; 7]);
        assert!(heptagon_certificate(&blk(7, &[1, 2, 3]), &blk(7, &[3, 4, 5]), &MappingWord::identity()).is_err());
        let w = MappingWord::from_signed(&[2, 5, -1]).unwrap();
        let (a, b) = (apply_word(&w, &blk(7, &[1, 2, 3])), apply_word(&w, &blk(7, &[2, 3, 4])));
        assert!(heptagon_certificate(&a, &b, &w).unwrap().is_valid());
        assert_eq!(heptagon_certificate(&a, &b, &MappingWord::identity()), Err(Error::TransporterMismatch));
    }

    #[test]
    fn octagon() {
        let o = octagon_certificate();
        assert!(o.matches_model());
        assert_eq!(o.edges.len(), 12);
        assert_eq!(o.to_graph().degrees(), vec![3; 8]);
        for u in 0..8 {
            for v in u + 1..8 {
                let direct = is_surrounding_pair(&o.curves[u], &o.curves[v]).is_some();
                assert_eq!(surrounding_pair_via_o(&o.curves[u], &o.curves[v], &o), direct, "{u} {v}");
            }
        }
        let c = is_surrounding_pair(&o.curves[0], &o.curves[1]).unwrap();
        assert_eq!(c.omega, blk(8, &[2, 3]));
        assert_eq!(o.length_two_paths(0, 3), 0);
    }

    #[test]
    fn divisions_on_nine_punctures() {
        let k = |v: &[usize]| blk(9, v);
        let window = enumerate_curves(9, 14);
        let d = filled_division(&k(&[1, 2, 3]), &k(&[5, 6, 7]), &k(&[2, 3, 4]), &k(&[7, 8, 9]), &window, 10)
            .unwrap()
            .unwrap();
        assert_eq!(d.delta, k(&[1, 2, 3, 4]));
        assert!(d.plus_witnesses.iter().all(|c| intersection_number(c, &d.delta) == 0));
        // a second filling square on the same curve
        let u = MappingWord::from_signed(&[3, 3, -2]).unwrap();
        let v = MappingWord::from_signed(&[6, -8]).unwrap();
        let d2 = filled_division(
            &apply_word(&u, &k(&[1, 2, 3])),
            &apply_word(&v, &k(&[5, 6, 7])),
            &apply_word(&u, &k(&[2, 3, 4])),
            &apply_word(&v, &k(&[7, 8, 9])),
            &window,
            10,
        )
        .unwrap()
        .unwrap();
        assert_eq!(d2.delta, d.delta);
        // puncture 5 sits in the annulus between the filled sides
        let none = filled_division(&k(&[1, 2, 3]), &k(&[6, 7, 8]), &k(&[2, 3, 4]), &k(&[7, 8, 9]), &window, 10).unwrap();
        assert_eq!(none, None);
        assert!(filled_division(&k(&[1, 2]), &k(&[5, 6, 7]), &k(&[2, 3, 4]), &k(&[7, 8, 9]), &window, 10).is_err());
    }

    #[test]
    fn bizarre_examples() {
        let out = bizarre_simplex(9, &[blk(9, &[1, 2, 3])]).unwrap();
        assert_eq!((out.punctures.len(), out.boundary_count), (6, 1));
        let out = bizarre_simplex(10, &[blk(10, &[1, 2, 3]), blk(10, &[1, 2, 3, 4])]).unwrap();
        assert_eq!(out.punctures, vec![5, 6, 7, 8, 9, 10]);
        let e = |v| Err(Error::Bizarre(v));
        assert_eq!(
            bizarre_simplex(10, &[blk(10, &[1, 2, 3]), blk(10, &[1, 2, 3, 4, 5])]),
            e(BizarreViolation::AnnulusPunctureCount)
        );
        let k = |v: &[usize]| blk(11, v);
        assert!(bizarre_simplex(11, &[k(&[1, 2, 3]), k(&[1, 2, 3, 4]), k(&[1, 2, 3, 4, 5])]).is_ok());
        assert_eq!(
            bizarre_simplex(11, &[k(&[1, 2, 3]), k(&[1, 2, 3, 4, 5]), k(&[1, 2, 3, 4])]),
            e(BizarreViolation::NotSeparating)
        );
        assert_eq!(bizarre_simplex(8, &[]), e(BizarreViolation::TooFewPunctures));
        assert_eq!(bizarre_simplex(9, &[]), e(BizarreViolation::WrongLength));
        assert_eq!(bizarre_simplex(9, &[blk(9, &[1, 2, 3, 4])]), e(BizarreViolation::FirstNotOneSeparating));
        assert_eq!(
            bizarre_simplex(10, &[blk(10, &[1, 2, 3]), blk(10, &[1, 2])]),
            e(BizarreViolation::NotStronglySeparating)
        );
        assert_eq!(
            bizarre_simplex(10, &[blk(10, &[1, 2, 3]), blk(10, &[3, 4, 5, 6])]),
            e(BizarreViolation::NotAMulticurve)
        );
    }

    #[test]
    fn triple_chain_and_disjointness() {
        let window = enumerate_curves(7, 16);
        let (a, b) = (blk(7, &[1, 2, 3]), blk(7, &[2, 3, 4]));
        let w = MappingWord::from_signed(&[4, 2]).unwrap();
        let (a2, b2) = (apply_word(&w, &a), apply_word(&w, &b));
        let chain = triple_chain((&a, &b), (&a2, &b2), &window, 6).unwrap().expect("within bound");
        assert_eq!(chain.omega, blk(7, &[2, 3]));
        assert_eq!(chain.triples.len() + 1, chain.pairs.len());
        let pieces = [w.clone(), block_twist_word(7, &[1, 2, 3]).unwrap(), w.inverse()];
        let long = triple_chain_by_pieces((&a, &b), &pieces, &window, 6).unwrap().expect("each piece within bound");
        let total = MappingWord::product(&pieces.iter().collect::<Vec<_>>());
        let end: BTreeSet<CurveKey> = long.pairs.last().unwrap().iter().cloned().collect();
        assert_eq!(end, [apply_word(&total, &a), apply_word(&total, &b)].into_iter().collect());
        assert_eq!(long.triples.len() + 1, long.pairs.len());
        let (s1, s2) = disjoint_surrounding(&blk(7, &[2, 3]), &blk(7, &[5, 6]), &window).unwrap();
        assert_eq!(intersection_number(&s1.curves[0], &s2.curves[0]), 0);
        assert_eq!((s1.omega, s2.omega), (blk(7, &[2, 3]), blk(7, &[5, 6])));
    }
}
