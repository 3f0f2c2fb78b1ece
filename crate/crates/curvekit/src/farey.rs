//! The Farey complex: curves on the four-punctured sphere as slopes.
//!
//! A slope `p/q` is stored with `q > 0`, or as `1/0`. Two slopes are joined
//! when `|p q' - q p'| = 1`, and the corresponding curves meet in
//! `2 |p q' - q p'|` points.

use std::fmt;
use std::str::FromStr;

use num::integer::gcd;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::engine::complement::components_by_separation;
use crate::error::{Error, Result};
use crate::graph::LabelledGraph;
use crate::intersection::intersection_number;
use crate::key::CurveKey;
use crate::mapping::MappingWord;
use crate::topology::{apply_word, block_curve};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::Parse("0/0 is not a slope".into()));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn infinity() -> Self {
        Slope { p: 1, q: 0 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Largest of `|p|` and `q`.
    pub fn height(&self) -> i64 {
        self.p.abs().max(self.q)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.split_once('/').ok_or_else(|| Error::Parse(format!("slope {s:?} lacks '/'")))?;
        let p = p.trim().parse().map_err(|e| Error::Parse(format!("slope {s:?}: {e}")))?;
        let q = q.trim().parse().map_err(|e| Error::Parse(format!("slope {s:?}: {e}")))?;
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn det(s: Slope, t: Slope) -> i64 {
    s.p * t.q - s.q * t.p
}

pub fn slope_intersection(s: Slope, t: Slope) -> u64 {
    2 * det(s, t).unsigned_abs()
}

pub fn adjacent(s: Slope, t: Slope) -> bool {
    det(s, t).abs() == 1
}

/// The third vertices of the two triangles on the edge `s t`.
pub fn triangles_on_edge(s: Slope, t: Slope) -> Result<[Slope; 2]> {
    if !adjacent(s, t) {
        return Err(Error::NotAnEdge);
    }
    let mut out = [Slope::new(s.p + t.p, s.q + t.q)?, Slope::new(s.p - t.p, s.q - t.q)?];
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Triangle(pub [Slope; 3]);

impl Triangle {
    pub fn new(a: Slope, b: Slope, c: Slope) -> Result<Self> {
        if !(adjacent(a, b) && adjacent(b, c) && adjacent(a, c)) {
            return Err(Error::NotAnEdge);
        }
        Ok(Triangle([a, b, c]))
    }

    pub fn standard() -> Self {
        Triangle([Slope { p: 0, q: 1 }, Slope::infinity(), Slope { p: 1, q: 1 }])
    }

    /// Reflection across the side opposite vertex `side`; the new vertex
    /// takes its place.
    pub fn reflect(&self, side: usize) -> Result<Self> {
        if side > 2 {
            return Err(Error::BadSide(side));
        }
        let v = self.0;
        let (a, b) = (v[(side + 1) % 3], v[(side + 2) % 3]);
        let [x, y] = triangles_on_edge(a, b)?;
        let mut out = v;
        out[side] = if x == v[side] { y } else { x };
        Ok(Triangle(out))
    }

    pub fn contains(&self, s: Slope) -> bool {
        self.0.contains(&s)
    }
}

pub fn triangle_walk(start: Triangle, reflections: &[usize]) -> Result<Triangle> {
    reflections.iter().try_fold(start, |t, &k| t.reflect(k))
}

/// `H_beta^k(alpha)`: the parabolic fixing `beta`.
pub fn half_twist_on_slope(beta: Slope, k: i64, alpha: Slope) -> Slope {
    let d = k * det(beta, alpha);
    Slope::new(alpha.p + d * beta.p, alpha.q + d * beta.q).expect("unimodular image")
}

/// All slopes with `|p|, q <= h`.
pub fn slopes_up_to(h: i64) -> Vec<Slope> {
    let mut out = vec![Slope::infinity()];
    for q in 1..=h {
        for p in -h..=h {
            if gcd(p, q) == 1 {
                out.push(Slope { p, q });
            }
        }
    }
    out.sort();
    out
}

/// Number of triangles through the edge `s t`, found by solving
/// `det(s, r) = ±1, det(t, r) = ±1` for `r` directly.
pub fn triangles_through_edge_count(s: Slope, t: Slope) -> usize {
    let d = det(s, t);
    if d.abs() != 1 {
        return 0;
    }
    let mut found: Vec<Slope> = Vec::new();
    for e1 in [-1i64, 1] {
        for e2 in [-1i64, 1] {
            // s.p r.q - s.q r.p = e1, t.p r.q - t.q r.p = e2
            let rp = (s.p * e2 - t.p * e1) / d;
            let rq = (s.q * e2 - t.q * e1) / d;
            if let Ok(r) = Slope::new(rp, rq) {
                if det(s, r).abs() == 1 && det(t, r).abs() == 1 && !found.contains(&r) {
                    found.push(r);
                }
            }
        }
    }
    found.len()
}

/// Farey edges with both ends of height at most `h` lying in other than
/// two triangles.
pub fn edge_triangle_violations(h: i64) -> (usize, usize) {
    let slopes = slopes_up_to(h);
    let mut edges = 0;
    let mut bad = 0;
    for (i, &s) in slopes.iter().enumerate() {
        for &t in &slopes[i + 1..] {
            if adjacent(s, t) {
                edges += 1;
                if triangles_through_edge_count(s, t) != 2 {
                    bad += 1;
                }
            }
        }
    }
    (edges, bad)
}

pub fn farey_ball(h: i64) -> LabelledGraph {
    let slopes = slopes_up_to(h);
    let mut g = LabelledGraph::new(format!("farey-ball-{h}"));
    for s in &slopes {
        g.add_node(s.to_string(), None);
    }
    for i in 0..slopes.len() {
        for j in i + 1..slopes.len() {
            if adjacent(slopes[i], slopes[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// A facet `P` of `S_{0,b}` together with three curves of its link fixing
/// the identification with the Farey complex: `mu = 0/1`, `lambda = 1/0`,
/// `nu = 1/1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkFrame {
    pub facet: Vec<CurveKey>,
    pub mu: CurveKey,
    pub lambda: CurveKey,
    pub nu: CurveKey,
}

/// Checks that `facet` is `b - 4` disjoint curves cutting out one
/// four-holed sphere and pairs of pants.
pub fn check_facet(b: usize, facet: &[CurveKey]) -> Result<()> {
    if facet.len() + 4 != b {
        return Err(Error::Precondition(format!("a facet on S_{b} has {} curves, got {}", b - 4, facet.len())));
    }
    if facet.is_empty() {
        return Ok(());
    }
    if facet.iter().any(|c| c.b() != b) {
        return Err(Error::PunctureMismatch(b, facet.iter().find(|c| c.b() != b).unwrap().b()));
    }
    for (i, x) in facet.iter().enumerate() {
        if facet[..i].contains(x) {
            return Err(Error::Precondition("repeated curve in facet".into()));
        }
    }
    let comps = components_by_separation(facet)?;
    let big: Vec<_> = comps.iter().filter(|c| c.complexity > 0).collect();
    if big.len() != 1 || big[0].complexity != 1 {
        return Err(Error::Precondition("facet does not cut out a single four-holed sphere".into()));
    }
    Ok(())
}

/// `c` is disjoint from every curve of `facet` and not one of them.
pub fn in_link(facet: &[CurveKey], c: &CurveKey) -> bool {
    facet.iter().all(|p| p != c && intersection_number(p, c) == 0)
}

impl LinkFrame {
    pub fn new(facet: Vec<CurveKey>, mu: CurveKey, lambda: CurveKey, nu: CurveKey) -> Result<Self> {
        let b = mu.b();
        check_facet(b, &facet)?;
        for c in [&mu, &lambda, &nu] {
            if !in_link(&facet, c) {
                return Err(Error::NotInLink("frame curve".into()));
            }
        }
        for (x, y) in [(&mu, &lambda), (&mu, &nu), (&lambda, &nu)] {
            if intersection_number(x, y) != 2 {
                return Err(Error::Precondition("frame curves must pairwise meet twice".into()));
            }
        }
        Ok(LinkFrame { facet, mu, lambda, nu })
    }

    pub fn b(&self) -> usize {
        self.mu.b()
    }

    /// The standard facet `{1,2}, {1..4}, .., {1..b-2}` with `mu = {1,2,3}`,
    /// `lambda = {3,4}` and `nu = H_3(mu)`.
    pub fn standard(b: usize) -> Result<Self> {
        if b < 5 {
            return Err(Error::Unsupported(format!("link frames need b >= 5, got {b}")));
        }
        let mut facet = vec![block_curve(b, &[1, 2])?];
        for k in 4..=b - 2 {
            facet.push(block_curve(b, &(1..=k).collect::<Vec<_>>())?);
        }
        let mu = block_curve(b, &[1, 2, 3])?;
        let lambda = block_curve(b, &[3, 4])?;
        let nu = apply_word(&MappingWord::generator(3, 1), &mu);
        LinkFrame::new(facet, mu, lambda, nu)
    }

    pub fn transported(&self, w: &MappingWord) -> Self {
        let f = |c: &CurveKey| apply_word(w, c);
        LinkFrame {
            facet: self.facet.iter().map(f).collect(),
            mu: f(&self.mu),
            lambda: f(&self.lambda),
            nu: f(&self.nu),
        }
    }

    /// Completes `mu`, `lambda` to a frame with the first curve of `window`
    /// meeting both twice. The orientation of such a frame is arbitrary.
    pub fn search(facet: Vec<CurveKey>, mu: CurveKey, lambda: CurveKey, window: &[CurveKey]) -> Result<Self> {
        let nu = window
            .iter()
            .find(|c| {
                in_link(&facet, c) && intersection_number(c, &mu) == 2 && intersection_number(c, &lambda) == 2
            })
            .cloned()
            .ok_or_else(|| Error::NotFound("no third frame curve in window".into()))?;
        LinkFrame::new(facet, mu, lambda, nu)
    }

    pub fn curve_slope(&self, c: &CurveKey) -> Result<Slope> {
        link_as_farey(self, c)
    }
}

/// The slope of a curve of the link of the frame's facet, read off from its
/// intersection numbers with the three frame curves.
pub fn link_as_farey(frame: &LinkFrame, c: &CurveKey) -> Result<Slope> {
    if c.b() != frame.b() {
        return Err(Error::PunctureMismatch(frame.b(), c.b()));
    }
    if !in_link(&frame.facet, c) {
        return Err(Error::NotInLink("curve meets the facet".into()));
    }
    let a = (intersection_number(c, &frame.mu) / 2) as i64;
    let q = (intersection_number(c, &frame.lambda) / 2) as i64;
    let d = (intersection_number(c, &frame.nu) / 2) as i64;
    if a == 0 {
        return Ok(Slope { p: 0, q: 1 });
    }
    if q == 0 {
        return Ok(Slope::infinity());
    }
    let p = if (a - q).abs() == d {
        a
    } else if a + q == d {
        -a
    } else {
        return Err(Error::Degenerate(format!("intersections {a}, {q}, {d} fit no slope")));
    };
    Slope::new(p, q)
}
