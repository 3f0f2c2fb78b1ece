//! Type-level enumeration of disjoint subsurface families on `S_{0,b}`.
//!
//! A family of pairwise disjoint connected supports is recorded as a marked
//! tree: support nodes `S` and filler nodes `F` (maximal regions of the
//! complement), joined along shared boundary curves. Individual supports
//! live in the round model: a puncture set plus the puncture sets of the
//! complementary disks, all boundary curves taken round.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::complement::complement_components;
use crate::error::{Error, Result};
use crate::intersection::intersection_number;
use crate::key::CurveKey;
use crate::mapping::{Generator, MappingWord};
use crate::topology::{apply_word, block_curve, classify, separation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub p: usize,
    pub d: usize,
    pub complexity: i64,
    /// Marked as a member of the family.
    pub support: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub punctures: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigurationTree {
    pub b: usize,
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<(usize, usize)>,
}

impl ConfigurationTree {
    /// Builds a tree from `(support, p)` node data; boundary counts are the
    /// degrees.
    pub fn from_parts(b: usize, nodes: &[(bool, usize)], edges: Vec<(usize, usize)>) -> Self {
        let mut deg = vec![0; nodes.len()];
        for &(u, v) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let nodes = nodes
            .iter()
            .zip(deg)
            .map(|(&(support, p), d)| TreeNode { p, d, complexity: (p + d) as i64 - 3, support, punctures: Vec::new() })
            .collect();
        ConfigurationTree { b, nodes, edges }
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(x, y)| if x == v { Some(y) } else if y == v { Some(x) } else { None })
            .collect();
        out.sort_unstable();
        out
    }

    /// `sum (2 - p - d)` over the nodes; equals `2 - b` for any tree.
    pub fn euler_sum(&self) -> i64 {
        self.nodes.iter().map(|n| 2 - (n.p + n.d) as i64).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        if n == 0 || self.edges.len() + 1 != n {
            return Err(Error::Degenerate("not a tree".into()));
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.contains(&false) {
            return Err(Error::Degenerate("tree is disconnected".into()));
        }
        for (v, node) in self.nodes.iter().enumerate() {
            if node.d != self.neighbours(v).len() {
                return Err(Error::Degenerate(format!("node {v} boundary count disagrees with its degree")));
            }
            if node.p + node.d < 3 {
                return Err(Error::Degenerate(format!("node {v} is a disk or an annulus")));
            }
        }
        if self.nodes.iter().map(|x| x.p).sum::<usize>() != self.b {
            return Err(Error::Degenerate("puncture counts do not sum to b".into()));
        }
        if self.euler_sum() != 2 - self.b as i64 {
            return Err(Error::Degenerate("Euler characteristic mismatch".into()));
        }
        Ok(())
    }

    fn label(&self, v: usize) -> String {
        let n = &self.nodes[v];
        format!("{}{}", if n.support { 'S' } else { 'F' }, n.p)
    }

    /// Canonical string of the subtree hanging from `v` away from `parent`.
    pub fn rooted_code(&self, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> =
            self.neighbours(v).into_iter().filter(|&w| Some(w) != parent).map(|w| self.rooted_code(w, Some(v))).collect();
        kids.sort();
        format!("{}({})", self.label(v), kids.concat())
    }

    /// Isomorphism invariant of the marked tree: the least rooted code.
    pub fn canonical(&self) -> String {
        (0..self.nodes.len()).map(|v| self.rooted_code(v, None)).min().unwrap_or_default()
    }

    /// Punctures on the `w` side of the edge `v - w`.
    pub fn far_side(&self, v: usize, w: usize) -> usize {
        self.nodes[w].p + self.neighbours(w).into_iter().filter(|&x| x != v).map(|x| self.far_side(w, x)).sum::<usize>()
    }

    pub fn support_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&v| self.nodes[v].support).collect()
    }

    pub fn support_type(&self, v: usize) -> SupportType {
        let mut q: Vec<usize> = self.neighbours(v).into_iter().map(|w| self.far_side(v, w)).collect();
        q.sort_unstable();
        SupportType { b: self.b, p: self.nodes[v].p, q }
    }

    pub fn support_types(&self) -> Vec<SupportType> {
        let mut t: Vec<SupportType> = self.support_nodes().into_iter().map(|v| self.support_type(v)).collect();
        t.sort();
        t
    }

    /// Realizes the tree by block curves: punctures are numbered in
    /// depth-first order from node 0, so every edge cuts off a cyclic
    /// interval. Curves are listed in edge order.
    pub fn witness(&self) -> Result<Vec<CurveKey>> {
        let mut next = 1;
        let mut span = vec![(0, 0); self.nodes.len()];
        self.number(0, None, &mut next, &mut span);
        self.edges
            .iter()
            .map(|&(u, v)| {
                let child = if span[u].0 <= span[v].0 && span[v].1 <= span[u].1 { v } else { u };
                let (lo, hi) = span[child];
                block_curve(self.b, &(lo..hi).collect::<Vec<_>>())
            })
            .collect()
    }

    fn number(&self, v: usize, parent: Option<usize>, next: &mut usize, span: &mut [(usize, usize)]) {
        let lo = *next;
        *next += self.nodes[v].p;
        for w in self.neighbours(v).into_iter().filter(|&w| Some(w) != parent) {
            self.number(w, Some(v), next, span);
        }
        span[v] = (lo, *next);
    }
}

/// The tree of complementary components of a multicurve; components of
/// complexity at least one are marked as supports.
pub fn config_tree(b: usize, curves: &[CurveKey]) -> Result<ConfigurationTree> {
    if let Some(c) = curves.iter().find(|c| c.b() != b) {
        return Err(Error::PunctureMismatch(b, c.b()));
    }
    if curves.is_empty() {
        let mut t = ConfigurationTree::from_parts(b, &[(b >= 4, b)], Vec::new());
        t.nodes[0].punctures = (1..=b).collect();
        return Ok(t);
    }
    let comps = complement_components(curves)?;
    let mut edges = Vec::new();
    for k in 0..curves.len() {
        let ends: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].boundary_curves.contains(&k)).collect();
        match ends[..] {
            [u, v] => edges.push((u, v)),
            _ => return Err(Error::Degenerate(format!("curve {k} does not separate two components"))),
        }
    }
    let parts: Vec<(bool, usize)> = comps.iter().map(|c| (c.complexity >= 1, c.punctures.len())).collect();
    let mut t = ConfigurationTree::from_parts(b, &parts, edges);
    for (node, c) in t.nodes.iter_mut().zip(&comps) {
        node.punctures = c.punctures.clone();
    }
    t.validate()?;
    Ok(t)
}

/// A support up to the mapping class group: its puncture count and the
/// puncture counts of its complementary disks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SupportType {
    pub b: usize,
    pub p: usize,
    pub q: Vec<usize>,
}

impl SupportType {
    pub fn d(&self) -> usize {
        self.q.len()
    }

    pub fn complexity(&self) -> i64 {
        (self.p + self.d()) as i64 - 3
    }

    pub fn holes(&self) -> usize {
        self.p + self.d()
    }

    pub fn is_terminal(&self) -> bool {
        self.p == 3 && self.d() == 1
    }

    /// Membership in the shape list for supports of complete support sets.
    /// A complementary disk with `q` punctures has complexity `q - 2`.
    pub fn shape_ok(&self) -> bool {
        let even = self.q.iter().filter(|&&q| q % 2 == 0).count();
        if self.b.is_multiple_of(2) {
            self.holes() == 4 && even == 0
        } else {
            (self.holes() == 4 && even == 1) || (self.holes() == 5 && even == 0)
        }
    }

    /// The round support with punctures `1..=p` followed by consecutive disks.
    pub fn representative(&self) -> Support {
        let mut next = self.p + 1;
        let disks = self
            .q
            .iter()
            .map(|&q| {
                let d: Vec<usize> = (next..next + q).collect();
                next += q;
                d
            })
            .collect();
        Support::new(self.b, (1..=self.p).collect(), disks).expect("valid type")
    }
}

impl fmt::Display for SupportType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> = self.q.iter().map(|x| x.to_string()).collect();
        write!(f, "S{}[p={};q={}]", self.holes(), self.p, q.join(","))
    }
}

/// A connected subsurface in the round model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Support {
    pub b: usize,
    pub punctures: Vec<usize>,
    pub disks: Vec<Vec<usize>>,
}

impl Support {
    pub fn new(b: usize, mut punctures: Vec<usize>, mut disks: Vec<Vec<usize>>) -> Result<Self> {
        punctures.sort_unstable();
        for d in disks.iter_mut() {
            d.sort_unstable();
        }
        disks.sort();
        let mut all: Vec<usize> = punctures.iter().chain(disks.iter().flatten()).copied().collect();
        all.sort_unstable();
        if all != (1..=b).collect::<Vec<_>>() {
            return Err(Error::Precondition("punctures and disks must partition 1..=b".into()));
        }
        if disks.iter().any(|d| d.len() < 2) {
            return Err(Error::Precondition("a complementary disk needs two punctures".into()));
        }
        if punctures.len() + disks.len() < 4 {
            return Err(Error::Precondition("supports have complexity at least one".into()));
        }
        Ok(Support { b, punctures, disks })
    }

    pub fn support_type(&self) -> SupportType {
        let mut q: Vec<usize> = self.disks.iter().map(Vec::len).collect();
        q.sort_unstable();
        SupportType { b: self.b, p: self.punctures.len(), q }
    }

    pub fn complexity(&self) -> i64 {
        (self.punctures.len() + self.disks.len()) as i64 - 3
    }

    /// Distinct and disjoint up to isotopy: one lies in a complementary disk
    /// of the other.
    pub fn disjoint(&self, other: &Support) -> bool {
        self != other
            && self.disks.iter().any(|q| {
                other.disks.iter().any(|r| (1..=self.b).filter(|x| !r.contains(x)).all(|x| q.contains(&x)))
            })
    }

    /// Region containment: every complementary disk of `other` lies inside
    /// a complementary disk of `self`.
    pub fn contained_in(&self, other: &Support) -> bool {
        other.disks.iter().all(|r| self.disks.iter().any(|q| r.iter().all(|x| q.contains(x))))
    }

    /// The support together with its pants complementary components.
    pub fn hull(&self) -> Support {
        let mut punctures = self.punctures.clone();
        let mut disks = Vec::new();
        for d in &self.disks {
            if d.len() == 2 {
                punctures.extend(d);
            } else {
                disks.push(d.clone());
            }
        }
        Support::new(self.b, punctures, disks).expect("hull of a support")
    }

    pub fn permuted(&self, perm: impl Fn(usize) -> usize) -> Support {
        Support::new(
            self.b,
            self.punctures.iter().map(|&x| perm(x)).collect(),
            self.disks.iter().map(|d| d.iter().map(|&x| perm(x)).collect()).collect(),
        )
        .expect("permutation of a support")
    }

    /// Boundary curves, one per disk in disk order, obtained by braiding
    /// the disks into consecutive blocks.
    pub fn witness(&self) -> Result<Vec<CurveKey>> {
        let order: Vec<usize> = self.disks.iter().flatten().chain(&self.punctures).copied().collect();
        let mut intervals = Vec::new();
        let mut next = 1;
        for d in &self.disks {
            intervals.push((next..next + d.len()).collect::<Vec<_>>());
            next += d.len();
        }
        let letters = sorting_letters(&order);
        let reversed: Vec<usize> = letters.iter().rev().copied().collect();
        for attempt in [reversed, letters] {
            let w = MappingWord::new(attempt.iter().map(|&i| Generator { index: i, sign: 1 }).collect())?;
            let curves: Vec<CurveKey> =
                intervals.iter().map(|iv| block_curve(self.b, iv).map(|c| apply_word(&w, &c))).collect::<Result<_>>()?;
            if curves.iter().zip(&self.disks).all(|(c, d)| separation(c).sides().contains(d)) {
                return Ok(curves);
            }
        }
        Err(Error::Degenerate("braid word does not realize the disks".into()))
    }
}

/// Adjacent swap positions of a bubble sort of `order`.
fn sorting_letters(order: &[usize]) -> Vec<usize> {
    let mut arr = order.to_vec();
    let mut out = Vec::new();
    for pass in 0..arr.len() {
        for i in 0..arr.len() - 1 - pass.min(arr.len() - 1) {
            if arr[i] > arr[i + 1] {
                arr.swap(i, i + 1);
                out.push(i + 1);
            }
        }
    }
    out
}

/// All set partitions of `items`, blocks in order of first element.
pub fn set_partitions<T: Clone>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    let Some((first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for part in set_partitions(rest) {
        for k in 0..part.len() {
            let mut p = part.clone();
            p[k].insert(0, first.clone());
            out.push(p);
        }
        let mut p = part;
        p.insert(0, vec![first.clone()]);
        out.push(p);
    }
    out
}

/// Largest number of pairwise disjoint supports on `S_{0,n}`, by recursion
/// over a chosen member: the others fill its complementary disks, and a disk
/// with `q` punctures behaves as `S_{0,q+1}`.
pub fn max_disjoint_supports(n: usize) -> usize {
    let mut m = vec![0usize; n.max(3) + 1];
    for k in 4..=n {
        let mut best = 0;
        for p in 0..=k {
            for q in partitions_min2(k - p, k - p) {
                if p + q.len() >= 4 {
                    best = best.max(1 + q.iter().map(|&x| m[x + 1]).sum::<usize>());
                }
            }
        }
        m[k] = best;
    }
    m[n]
}

/// Partitions of `n` into parts between 2 and `max`, non-increasing.
fn partitions_min2(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (2..=max.min(n)).rev() {
        for mut rest in partitions_min2(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Unlabelled free trees on `n` nodes, grown by leaf addition.
fn free_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for k in 1..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..k {
                let mut e = t.clone();
                e.push((v, k));
                let code = ConfigurationTree::from_parts(0, &vec![(false, 0); k + 1], e.clone()).canonical();
                if seen.insert(code) {
                    next.push(e);
                }
            }
        }
        level = next;
    }
    if n == 0 {
        Vec::new()
    } else {
        level
    }
}

/// Stars-and-bars distributions of `total` over `n` slots.
fn distributions(total: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in distributions(total - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every family of disjoint supports on `S_{0,n}`, one tree per isomorphism
/// class, keyed by canonical code. Sharded by tree shape.
pub fn all_families(n: usize) -> BTreeMap<String, ConfigurationTree> {
    let shapes: Vec<Vec<(usize, usize)>> = (1..=n.saturating_sub(2)).flat_map(free_trees).collect();
    shapes
        .par_iter()
        .map(|edges| {
            let k = edges.len() + 1;
            let mut deg = vec![0usize; k];
            for &(u, v) in edges {
                deg[u] += 1;
                deg[v] += 1;
            }
            let mut out = BTreeMap::new();
            for mask in 0u32..(1 << k) {
                let s = |v: usize| mask & (1 << v) != 0;
                if edges.iter().any(|&(u, v)| !s(u) && !s(v)) {
                    continue;
                }
                let lower: Vec<usize> = (0..k).map(|v| (if s(v) { 4 } else { 3usize }).saturating_sub(deg[v])).collect();
                let Some(slack) = n.checked_sub(lower.iter().sum()) else { continue };
                for extra in distributions(slack, k) {
                    let parts: Vec<(bool, usize)> = (0..k).map(|v| (s(v), lower[v] + extra[v])).collect();
                    let t = ConfigurationTree::from_parts(n, &parts, edges.clone());
                    out.entry(t.canonical()).or_insert(t);
                }
            }
            out
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_insert(v);
            }
            a
        })
}

/// A maximal-cardinality family at type level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteType {
    pub canonical: String,
    pub supports: Vec<SupportType>,
    #[serde(skip)]
    pub tree: ConfigurationTree,
}

/// `nu` and the distinct types of complete support sets on `S_{0,b}`.
pub fn enumerate_complete_support_types(b: usize) -> Result<(usize, Vec<CompleteType>)> {
    if b < 7 {
        return Err(Error::Unsupported(format!("support census needs b >= 7, got {b}")));
    }
    Ok(complete_types(b))
}

fn complete_types(n: usize) -> (usize, Vec<CompleteType>) {
    let fams = all_families(n);
    let nu = fams.values().map(|t| t.support_nodes().len()).max().unwrap_or(0);
    let types = fams
        .into_iter()
        .filter(|(_, t)| t.support_nodes().len() == nu)
        .map(|(canonical, tree)| CompleteType { canonical, supports: tree.support_types(), tree })
        .collect();
    (nu, types)
}

/// Rooted binary tree shapes with `k` leaves, as nested child lists.
fn binary_shapes(k: usize) -> Vec<String> {
    if k == 1 {
        return vec!["L".into()];
    }
    let mut out = BTreeSet::new();
    for left in 1..=k / 2 {
        for a in binary_shapes(left) {
            for c in binary_shapes(k - left) {
                let (x, y) = if a <= c { (a.clone(), c) } else { (c, a.clone()) };
                out.insert(format!("({x}{y})"));
            }
        }
    }
    out.into_iter().collect()
}

/// Pants graph of a rooted binary shape with an extra leaf at the root:
/// one node per internal vertex, recording its leaf count.
fn pants_tree(shape: &str) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut leaves = Vec::new();
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for ch in shape.chars() {
        match ch {
            '(' => {
                let id = leaves.len();
                leaves.push(0);
                if let Some(&parent) = stack.last() {
                    edges.push((parent, id));
                }
                stack.push(id);
            }
            ')' => {
                stack.pop();
            }
            _ => {
                let top = *stack.last().expect("leaf inside a pants");
                leaves[top] += 1;
            }
        }
    }
    // the root pants also meets the extra leaf
    if let Some(r) = leaves.first_mut() {
        *r += 1;
    }
    (leaves, edges)
}

/// Complete support set types through pants decompositions: cut a pants
/// tree along a set of its edges, read groups of two or more pants as
/// supports and lone pants as fillers. Lone pants adjacent to each other
/// would merge into a filler of positive complexity and are skipped.
pub fn complete_types_by_pants(b: usize) -> (usize, BTreeSet<String>) {
    let mut by_count: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    for shape in binary_shapes(b - 1) {
        let (leaves, edges) = pants_tree(&shape);
        let n = leaves.len();
        for mask in 0u32..(1 << edges.len()) {
            let mut group: Vec<usize> = (0..n).collect();
            fn find(g: &mut [usize], x: usize) -> usize {
                if g[x] != x {
                    let r = find(g, g[x]);
                    g[x] = r;
                }
                g[x]
            }
            for (k, &(u, v)) in edges.iter().enumerate() {
                if mask & (1 << k) == 0 {
                    let (a, c) = (find(&mut group, u), find(&mut group, v));
                    group[a] = c;
                }
            }
            let roots: Vec<usize> = (0..n).map(|x| find(&mut group, x)).collect();
            let ids: Vec<usize> = roots.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
            let size = |r: usize| roots.iter().filter(|&&x| x == r).count();
            let cut: Vec<(usize, usize)> =
                edges.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &e)| e).collect();
            if cut.iter().any(|&(u, v)| size(roots[u]) == 1 && size(roots[v]) == 1) {
                continue;
            }
            let parts: Vec<(bool, usize)> = ids
                .iter()
                .map(|&r| (size(r) >= 2, (0..n).filter(|&x| roots[x] == r).map(|x| leaves[x]).sum()))
                .collect();
            let qedges: Vec<(usize, usize)> = cut
                .iter()
                .map(|&(u, v)| {
                    let pos = |x: usize| ids.iter().position(|&r| r == roots[x]).unwrap();
                    (pos(u), pos(v))
                })
                .collect();
            let t = ConfigurationTree::from_parts(b, &parts, qedges);
            by_count.entry(t.support_nodes().len()).or_default().insert(t.canonical());
        }
    }
    by_count.pop_last().unwrap_or_default()
}

/// Rooted codes of maximal fillings of a disk with `q` punctures, rooted at
/// the region touching the disk boundary.
fn disk_fillings(q: usize) -> BTreeSet<String> {
    let n = q + 1;
    if max_disjoint_supports(n) == 0 {
        return BTreeSet::new();
    }
    let (_, types) = complete_types(n);
    let mut out = BTreeSet::new();
    for t in types {
        for v in 0..t.tree.nodes.len() {
            if t.tree.nodes[v].p >= 1 {
                let mut tree = t.tree.clone();
                tree.nodes[v].p -= 1;
                out.insert(tree.rooted_code(v, None));
            }
        }
    }
    out
}

/// Completion types of a support: for each complementary disk that can
/// hold a support, the rooted type of its maximal filling. Empty when the
/// support lies in no complete support set.
pub fn completions_of(u: &SupportType) -> BTreeSet<Vec<String>> {
    if !is_hinge_type(u) {
        return BTreeSet::new();
    }
    let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
    for &q in &u.q {
        let options = disk_fillings(q);
        if options.is_empty() {
            continue;
        }
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                options.iter().map(move |o| {
                    let mut t = t.clone();
                    t.push(format!("{q}:{o}"));
                    t
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .map(|mut t| {
            t.sort();
            t
        })
        .collect()
}

/// The support belongs to some complete support set.
pub fn is_hinge_type(u: &SupportType) -> bool {
    u.complexity() >= 1
        && u.q.iter().all(|&q| q >= 2)
        && 1 + u.q.iter().map(|&q| max_disjoint_supports(q + 1)).sum::<usize>() == max_disjoint_supports(u.b)
}

/// Round supports contained in the region `k`: complementary disks are
/// unions of the holes of `k` and some of its punctures.
pub fn supports_within(k: &Support) -> Vec<Support> {
    let mut out = Vec::new();
    let pk = &k.punctures;
    for mask in 0u32..(1 << pk.len()) {
        let kept: Vec<usize> = (0..pk.len()).filter(|i| mask & (1 << i) != 0).map(|i| pk[i]).collect();
        let mut atoms: Vec<Vec<usize>> = (0..pk.len()).filter(|i| mask & (1 << i) == 0).map(|i| vec![pk[i]]).collect();
        atoms.extend(k.disks.iter().cloned());
        for part in set_partitions(&atoms) {
            let disks: Vec<Vec<usize>> = part.into_iter().map(|blk| blk.concat()).collect();
            if let Ok(s) = Support::new(k.b, kept.clone(), disks) {
                out.push(s);
            }
        }
    }
    out
}

/// `Compl(u)` is contained in `Compl(v)`: any completion of `u` avoids its
/// pants neighbours, so it completes exactly the supports inside the hull.
pub fn completions_included(u: &Support, v: &Support) -> bool {
    v.contained_in(&u.hull())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub support: SupportType,
    pub shape_ok: bool,
    pub minimal: bool,
    pub unambiguous: bool,
    pub terminal: bool,
    pub completions: usize,
}

pub fn classify_support(u: &SupportType) -> Result<Classification> {
    if !is_hinge_type(u) {
        return Err(Error::Precondition(format!("{u} lies in no complete support set")));
    }
    let rep = u.representative();
    let hinges: Vec<Support> =
        supports_within(&rep.hull()).into_iter().filter(|v| is_hinge_type(&v.support_type())).collect();
    let minimal = !hinges.iter().any(|v| !rep.contained_in(&v.hull()));
    let unambiguous = hinges.iter().filter(|v| rep.contained_in(&v.hull())).all(|v| *v == rep);
    Ok(Classification {
        support: u.clone(),
        shape_ok: u.shape_ok(),
        minimal,
        unambiguous,
        terminal: u.is_terminal(),
        completions: completions_of(u).len(),
    })
}

/// A hinge: a support with a formal endpoint label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HingeType {
    pub support: Support,
    pub marker: u32,
}

/// Disjoint distinct supports that fit together in a complete support set.
pub fn hinge_compatible(h1: &HingeType, h2: &HingeType) -> bool {
    let (u, v) = (&h1.support, &h2.support);
    if u.b != v.b || !u.disjoint(v) {
        return false;
    }
    let b = u.b;
    let m = |n: usize| max_disjoint_supports(n);
    for (j, q) in u.disks.iter().enumerate() {
        for (k, r) in v.disks.iter().enumerate() {
            let outside: Vec<usize> = (1..=b).filter(|x| !r.contains(x)).collect();
            if !outside.iter().all(|x| q.contains(x)) {
                continue;
            }
            let middle = q.len() - outside.len();
            let mut room = if middle == 0 { 0 } else { m(middle + 2) };
            room += u.disks.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, d)| m(d.len() + 1)).sum::<usize>();
            room += v.disks.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, d)| m(d.len() + 1)).sum::<usize>();
            return 2 + room >= m(b);
        }
    }
    false
}

/// Three-punctured disks disjoint from `u`, as puncture sets.
pub fn terminal_fingerprint_sets(u: &Support) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for d in &u.disks {
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                for k in j + 1..d.len() {
                    out.insert(vec![d[i], d[j], d[k]]);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Window curves cutting out a terminal support disjoint from `u`, whose
/// boundary is given by `witness` in disk order.
pub fn terminal_fingerprint(u: &Support, witness: &[CurveKey], window: &[CurveKey]) -> Result<Vec<CurveKey>> {
    if witness.len() != u.disks.len() || witness.iter().zip(&u.disks).any(|(c, d)| !separation(c).sides().contains(d)) {
        return Err(Error::Precondition("witness does not bound the disks of the support".into()));
    }
    let mut out: Vec<CurveKey> = window
        .iter()
        .filter(|c| c.b() == u.b && classify(c).one_separating)
        .filter(|c| witness.iter().all(|w| intersection_number(c, w) == 0))
        .filter(|c| {
            let three = separation(c).sides().into_iter().find(|s| s.len() == 3).unwrap();
            u.disks.iter().any(|d| three.iter().all(|x| d.contains(x)))
        })
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Summary of the support census on `S_{0,b}`.
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub b: usize,
    pub nu: usize,
    pub nu_by_compositions: usize,
    pub nu_by_pants: usize,
    pub pants_route_agrees: bool,
    pub complete_types: Vec<CompleteType>,
    pub shape_violations: Vec<SupportType>,
    pub hinge_supports: Vec<Classification>,
    /// Odd surfaces: every hinge minimal and unambiguous. Even surfaces:
    /// minimal exactly when unambiguous with a four-holed sphere support.
    pub minambig_holds: bool,
}

pub fn census(b: usize) -> Result<Census> {
    let (nu, types) = enumerate_complete_support_types(b)?;
    let (nu_by_pants, pants) = complete_types_by_pants(b);
    let direct: BTreeSet<String> = types.iter().map(|t| t.canonical.clone()).collect();
    let hinge: BTreeSet<SupportType> = types.iter().flat_map(|t| t.supports.iter().cloned()).collect();
    let shape_violations = hinge.iter().filter(|t| !t.shape_ok()).cloned().collect();
    let hinge_supports: Vec<Classification> = hinge.iter().map(classify_support).collect::<Result<_>>()?;
    let minambig_holds = hinge_supports.iter().all(|c| {
        if b.is_multiple_of(2) {
            c.minimal && c.unambiguous
        } else {
            c.minimal == (c.unambiguous && c.support.holes() == 4)
        }
    });
    Ok(Census {
        b,
        nu,
        nu_by_compositions: max_disjoint_supports(b),
        nu_by_pants,
        pants_route_agrees: pants == direct,
        complete_types: types,
        shape_violations,
        hinge_supports,
        minambig_holds,
    })
}

impl Census {
    /// One row per hinge support type.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("b,nu,support,p,q,shape_ok,minimal,unambiguous,terminal,completions\n");
        for c in &self.hinge_supports {
            let q: Vec<String> = c.support.q.iter().map(|x| x.to_string()).collect();
            s += &format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                self.b,
                self.nu,
                c.support,
                c.support.p,
                q.join(" "),
                c.shape_ok,
                c.minimal,
                c.unambiguous,
                c.terminal,
                c.completions
            );
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "curvekit.census/1",
            "b": self.b,
            "nu": self.nu,
            "nu_by_compositions": self.nu_by_compositions,
            "nu_by_pants": self.nu_by_pants,
            "pants_route_agrees": self.pants_route_agrees,
            "complete_types": self.complete_types.iter().map(|t| serde_json::json!({
                "canonical": t.canonical,
                "supports": t.supports.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "shape_violations": self.shape_violations.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "hinge_supports": self.hinge_supports,
            "minambig_holds": self.minambig_holds,
        })
    }
}

/// Brute force in the round model over labelled supports, for small `b`.
pub mod split {
    use super::*;

    /// Every round support on `b` labelled punctures.
    pub fn all_supports(b: usize) -> Vec<Support> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << b) {
            let kept: Vec<usize> = (1..=b).filter(|x| mask & (1 << (x - 1)) != 0).collect();
            let rest: Vec<usize> = (1..=b).filter(|x| mask & (1 << (x - 1)) == 0).collect();
            for part in set_partitions(&rest) {
                if let Ok(s) = Support::new(b, kept.clone(), part) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }

    /// Pairwise disjoint families of the given size, as sorted index lists.
    pub fn disjoint_families(all: &[Support], size: usize, within: &[usize]) -> Vec<Vec<usize>> {
        fn grow(all: &[Support], pool: &[usize], size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == size {
                out.push(cur.clone());
                return;
            }
            for (i, &x) in pool.iter().enumerate() {
                let next: Vec<usize> = pool[i + 1..].iter().copied().filter(|&y| all[x].disjoint(&all[y])).collect();
                cur.push(x);
                grow(all, &next, size, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        grow(all, within, size, &mut Vec::new(), &mut out);
        out
    }

    /// Largest disjoint family size.
    pub fn nu(all: &[Support]) -> usize {
        let idx: Vec<usize> = (0..all.len()).collect();
        (1..).find(|&k| disjoint_families(all, k, &idx).is_empty()).map_or(0, |k| k - 1)
    }

    /// `Compl(u)`: families of `nu - 1` supports completing `u`.
    pub fn completions(all: &[Support], u: &Support, nu: usize) -> Vec<Vec<usize>> {
        let pool: Vec<usize> = (0..all.len()).filter(|&i| all[i].disjoint(u)).collect();
        disjoint_families(all, nu - 1, &pool)
    }

    /// Tree of a family of pairwise disjoint round supports, with the node
    /// of each member.
    pub fn laminar_tree(b: usize, family: &[Support]) -> Result<(ConfigurationTree, Vec<usize>)> {
        let finite = |d: &Vec<usize>| -> Vec<usize> {
            if d.contains(&b) {
                (1..=b).filter(|x| !d.contains(x)).collect()
            } else {
                d.clone()
            }
        };
        let mut sides: Vec<Vec<usize>> = family.iter().flat_map(|s| s.disks.iter().map(finite)).collect();
        sides.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));
        sides.dedup();
        let sub = |x: &[usize], y: &[usize]| x.iter().all(|e| y.contains(e));
        for i in 0..sides.len() {
            for j in i + 1..sides.len() {
                let meet = sides[i].iter().any(|e| sides[j].contains(e));
                if meet && !sub(&sides[j], &sides[i]) {
                    return Err(Error::NotAMulticurve(i, j));
                }
            }
        }
        // region 0 is outside every curve, region c + 1 is just inside curve c
        let parent: Vec<Option<usize>> =
            (0..sides.len()).map(|c| (0..c).rev().find(|&e| sub(&sides[c], &sides[e]))).collect();
        let mut regions: Vec<Vec<usize>> = vec![(1..=b).collect()];
        regions.extend(sides.iter().cloned());
        for (c, side) in sides.iter().enumerate() {
            let r = parent[c].map_or(0, |e| e + 1);
            regions[r].retain(|x| !side.contains(x));
        }
        let edges: Vec<(usize, usize)> = (0..sides.len()).map(|c| (parent[c].map_or(0, |e| e + 1), c + 1)).collect();
        let bounding = |r: usize| -> BTreeSet<usize> {
            edges.iter().enumerate().filter(|(_, &(x, y))| x == r || y == r).map(|(c, _)| c).collect()
        };
        let mut nodes: Vec<(bool, usize)> = regions.iter().map(|r| (false, r.len())).collect();
        let mut member = Vec::new();
        for s in family {
            let own: BTreeSet<usize> =
                s.disks.iter().map(|d| sides.iter().position(|x| *x == finite(d)).unwrap()).collect();
            let r = (0..regions.len())
                .find(|&r| regions[r] == s.punctures && bounding(r) == own)
                .ok_or_else(|| Error::Degenerate("support is not a region of the family".into()))?;
            nodes[r].0 = true;
            member.push(r);
        }
        let mut t = ConfigurationTree::from_parts(b, &nodes, edges);
        for (node, r) in t.nodes.iter_mut().zip(regions) {
            node.punctures = r;
        }
        Ok((t, member))
    }

    /// Completion types of `u` read off every complete family containing it.
    pub fn completion_types(all: &[Support], u: &Support, nu: usize) -> Result<BTreeSet<Vec<String>>> {
        let mut out = BTreeSet::new();
        for f in completions(all, u, nu) {
            let mut fam = vec![u.clone()];
            fam.extend(f.iter().map(|&i| all[i].clone()));
            let (t, member) = laminar_tree(u.b, &fam)?;
            let v = member[0];
            let mut tuple: Vec<String> = t
                .neighbours(v)
                .into_iter()
                .map(|w| (t.far_side(v, w), t.rooted_code(w, Some(v))))
                .filter(|(_, code)| code.contains('S'))
                .map(|(q, code)| format!("{q}:{code}"))
                .collect();
            tuple.sort();
            out.insert(tuple);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::enumerate_curves;

    fn blk(b: usize, v: &[usize]) -> CurveKey {
        block_curve(b, v).unwrap()
    }

    fn pd(t: &ConfigurationTree) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = t.nodes.iter().map(|n| (n.p, n.d)).collect();
        v.sort();
        v
    }

    #[test]
    fn config_tree_examples() {
        let t = config_tree(7, &[blk(7, &[1, 2, 3])]).unwrap();
        assert_eq!(pd(&t), vec![(3, 1), (4, 1)]);
        let t = config_tree(8, &[blk(8, &[1, 2, 3]), blk(8, &[4, 5, 6])]).unwrap();
        assert_eq!(pd(&t), vec![(2, 2), (3, 1), (3, 1)]);
        let mid = t.nodes.iter().position(|n| n.d == 2).unwrap();
        assert_eq!(t.nodes[mid].punctures, vec![7, 8]);
        assert_eq!(t.neighbours(mid).len(), 2);
        let t = config_tree(9, &[]).unwrap();
        assert_eq!(pd(&t), vec![(9, 0)]);
        assert!(config_tree(7, &[blk(7, &[1, 2, 3]), blk(7, &[3, 4, 5])]).is_err());
        let t = config_tree(8, &[blk(8, &[1, 2]), blk(8, &[1, 2, 3]), blk(8, &[5, 6])]).unwrap();
        t.validate().unwrap();
        assert_eq!(t.euler_sum(), 2 - 8);
    }

    #[test]
    fn canonical_ignores_labelling() {
        let a = ConfigurationTree::from_parts(8, &[(true, 3), (false, 2), (true, 3)], vec![(0, 1), (1, 2)]);
        let c = ConfigurationTree::from_parts(8, &[(false, 2), (true, 3), (true, 3)], vec![(1, 0), (0, 2)]);
        assert_eq!(a.canonical(), c.canonical());
        let d = ConfigurationTree::from_parts(8, &[(true, 3), (true, 3), (false, 2)], vec![(0, 1), (1, 2)]);
        assert_ne!(a.canonical(), d.canonical());
    }

    #[test]
    fn nu_three_ways() {
        for b in 7..=10 {
            let (nu, types) = enumerate_complete_support_types(b).unwrap();
            assert_eq!(nu, (b - 2) / 2, "b={b}");
            assert_eq!(max_disjoint_supports(b), nu);
            let (nu2, pants) = complete_types_by_pants(b);
            assert_eq!(nu2, nu);
            assert_eq!(pants, types.iter().map(|t| t.canonical.clone()).collect());
            for t in &types {
                t.tree.validate().unwrap();
                assert!(t.tree.nodes.iter().all(|n| n.support || n.complexity == 0));
            }
        }
    }

    #[test]
    fn witnesses_realize_types() {
        for b in [7, 8] {
            let (_, types) = enumerate_complete_support_types(b).unwrap();
            for t in types {
                let curves = t.tree.witness().unwrap();
                assert_eq!(config_tree(b, &curves).unwrap().canonical(), t.canonical);
            }
        }
    }

    #[test]
    fn shapes_and_minambig() {
        for b in 7..=10 {
            let c = census(b).unwrap();
            assert!(c.shape_violations.is_empty(), "b={b}");
            assert!(c.minambig_holds, "b={b}: {:?}", c.hinge_supports);
            assert!(c.pants_route_agrees);
            if b % 2 == 0 {
                assert!(c.hinge_supports.iter().all(|h| h.minimal && h.unambiguous));
            }
        }
    }

    #[test]
    fn ambiguous_pair_on_seven() {
        let s4 = SupportType { b: 7, p: 2, q: vec![2, 3] };
        let s5 = SupportType { b: 7, p: 4, q: vec![3] };
        assert_eq!(completions_of(&s4), completions_of(&s5));
        let c4 = classify_support(&s4).unwrap();
        assert!(!c4.minimal && !c4.unambiguous);
        assert!(!classify_support(&s5).unwrap().minimal);
        let t = classify_support(&SupportType { b: 7, p: 3, q: vec![4] }).unwrap();
        assert!(t.terminal && t.minimal && t.unambiguous);
        assert!(completions_of(&SupportType { b: 7, p: 0, q: vec![2, 2, 3] }).is_empty());
    }

    #[test]
    fn split_model_agrees_on_seven_and_eight() {
        for b in [7, 8] {
            let all = split::all_supports(b);
            let nu = split::nu(&all);
            assert_eq!(nu, max_disjoint_supports(b));
            let hinges: Vec<&Support> =
                all.iter().filter(|u| !split::completions(&all, u, nu).is_empty()).collect();
            let types: BTreeSet<SupportType> = hinges.iter().map(|u| u.support_type()).collect();
            let (_, complete) = enumerate_complete_support_types(b).unwrap();
            let expected: BTreeSet<SupportType> = complete.iter().flat_map(|t| t.supports.clone()).collect();
            assert_eq!(types, expected);
            for t in &types {
                let rep = t.representative();
                let compl: Vec<Vec<usize>> = split::completions(&all, &rep, nu);
                let mut minimal = true;
                let mut unambiguous = true;
                for v in &hinges {
                    let included = compl.iter().all(|f| f.iter().all(|&i| all[i].disjoint(v)));
                    assert_eq!(included, completions_included(&rep, v), "{t} vs {v:?}");
                    if included {
                        let back = split::completions(&all, v, nu)
                            .iter()
                            .all(|f| f.iter().all(|&i| all[i].disjoint(&rep)));
                        minimal &= back;
                        unambiguous &= !back || **v == rep;
                    }
                }
                let c = classify_support(t).unwrap();
                assert_eq!((c.minimal, c.unambiguous), (minimal, unambiguous), "{t}");
                assert_eq!(split::completion_types(&all, &rep, nu).unwrap(), completions_of(t), "{t}");
            }
        }
    }

    #[test]
    fn hinge_compatibility() {
        let s = |p: &[usize], d: &[&[usize]]| Support::new(7, p.to_vec(), d.iter().map(|x| x.to_vec()).collect()).unwrap();
        let u = s(&[1, 2, 3], &[&[4, 5, 6, 7]]);
        let v = s(&[4, 5, 6], &[&[7, 1, 2, 3]]);
        let w = s(&[3, 4, 5], &[&[6, 7, 1, 2]]);
        let h = |x: &Support, m| HingeType { support: x.clone(), marker: m };
        assert!(hinge_compatible(&h(&u, 0), &h(&v, 0)));
        assert!(!hinge_compatible(&h(&u, 0), &h(&u, 1)));
        assert!(!hinge_compatible(&h(&u, 0), &h(&w, 0)));
        // complementary S_4 and S_5 share a curve and fill the sphere
        assert!(hinge_compatible(&h(&u, 0), &h(&s(&[4, 5, 6, 7], &[&[1, 2, 3]]), 0)));
    }

    #[test]
    fn fingerprints_on_eight() {
        let s = |blk: &[usize]| {
            let rest: Vec<usize> = (1..=8).filter(|x| !blk.contains(x)).collect();
            Support::new(8, blk.to_vec(), vec![rest]).unwrap()
        };
        let us = [s(&[1, 2, 3]), s(&[2, 3, 4]), s(&[3, 4, 5])];
        let prints: Vec<_> = us.iter().map(terminal_fingerprint_sets).collect();
        assert!(prints[0] != prints[1] && prints[1] != prints[2] && prints[0] != prints[2]);
        let rot = |x: usize| x % 8 + 1;
        let rotated: Vec<Vec<usize>> = prints[0]
            .iter()
            .map(|t| {
                let mut t: Vec<usize> = t.iter().map(|&x| rot(x)).collect();
                t.sort();
                t
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(terminal_fingerprint_sets(&us[0].permuted(rot)), rotated);
        let window = enumerate_curves(8, 12);
        let witness = us[0].witness().unwrap();
        let curves = terminal_fingerprint(&us[0], &witness, &window).unwrap();
        let sets: BTreeSet<Vec<usize>> =
            curves.iter().map(|c| separation(c).sides().into_iter().find(|x| x.len() == 3).unwrap()).collect();
        assert!(sets.iter().all(|x| prints[0].contains(x)));
        assert!(sets.contains(&vec![5, 6, 7]));
    }

    #[test]
    fn witness_for_scattered_disks() {
        assert!(Support::new(9, vec![2, 7, 9], vec![vec![1, 5], vec![3, 4, 8], vec![6]]).is_err());
        let u = Support::new(9, vec![2, 9], vec![vec![1, 5], vec![3, 4, 8], vec![6, 7]]).unwrap();
        let w = u.witness().unwrap();
        for (i, c) in w.iter().enumerate() {
            assert!(separation(c).sides().contains(&u.disks[i]));
            for d in &w[..i] {
                assert_eq!(intersection_number(c, d), 0);
            }
        }
        let t = config_tree(9, &w).unwrap();
        let node = t.nodes.iter().find(|n| n.support && n.p == 2).unwrap();
        assert_eq!(node.punctures, u.punctures);
    }
}
