//! Piecewise-linear half twists.
//!
//! The half twist about a segment `[a, c]` is supported in a diamond
//! (L1 ball) around its midpoint. Nested diamonds `P_0 ⊂ .. ⊂ P_L`, each
//! with vertices `v_{k,0..3}` at angles 0, 90, 180, 270 degrees, are cut into
//! trapezoids and triangles; the map rotates `P_0` by 180 degrees, fixes the
//! outside of `P_L`, and sends `v_{k,j}` to `v_{k, j - s(L-k)}` where
//! `s = ±1` is the sign. The positive twist turns the inner disk clockwise
//! relative to the outside, so its square is the left-handed Dehn twist.
//!
//! `H_{b-1}` encloses puncture `b` at infinity. It is computed in the chart
//! `M(z) = 1/(z - 1/2)`, which fixes the real axis, sends infinity to 0 and
//! `p_i` to `2/(2i-1)`; there `p_{b-1}` and `p_b` are the two points
//! nearest 0. Polygon sides become circular arcs under `M` and are replaced
//! by chords after checking that no puncture lies between arc and chord.

use num::{Signed, Zero};

use crate::engine::extract::polygon_key;
use crate::engine::geom::{cross, frac, is_simple, meet, orient, param_of, q, Meet, Point, Q};
use crate::engine::realize;
use crate::error::{Error, Result};
use crate::key::CurveKey;
use crate::mapping::MappingWord;

const LAYERS: usize = 2;

/// Support of a half twist: nested diamonds around a center.
struct Support {
    center: Point,
    radii: Vec<Q>,
    sign: i8,
}

impl Support {
    fn vertex(&self, k: usize, j: i64) -> Point {
        let r = &self.radii[k];
        let (dx, dy) = match j.rem_euclid(4) {
            0 => (r.clone(), q(0)),
            1 => (q(0), r.clone()),
            2 => (-r.clone(), q(0)),
            _ => (q(0), -r.clone()),
        };
        Point::new(&self.center.x + dx, &self.center.y + dy)
    }

    fn shift(&self, k: usize) -> i64 {
        -(self.sign as i64) * (LAYERS - k) as i64
    }

    fn l1(&self, p: &Point) -> Q {
        (&p.x - &self.center.x).abs() + (&p.y - &self.center.y).abs()
    }

    /// The two triangles of trapezoid `j` between layers `k` and `k+1`. The
    /// diagonal is the one whose image is the radial segment, which keeps
    /// every image triangle positively oriented.
    fn cell_triangles(&self, k: usize, j: i64) -> [[(usize, i64); 3]; 2] {
        if self.shift(k) > self.shift(k + 1) {
            [[(k, j), (k, j + 1), (k + 1, j + 1)], [(k, j), (k + 1, j + 1), (k + 1, j)]]
        } else {
            [[(k, j), (k, j + 1), (k + 1, j)], [(k, j + 1), (k + 1, j + 1), (k + 1, j)]]
        }
    }

    /// Triangles of the layered annulus and their images.
    fn triangles(&self) -> Vec<([Point; 3], [Point; 3])> {
        let mut out = Vec::new();
        for k in 0..LAYERS {
            let (s0, s1) = (self.shift(k), self.shift(k + 1));
            for j in 0..4i64 {
                let [t1, t2] = self.cell_triangles(k, j);
                for t in [t1, t2] {
                    let dom = t.map(|(kk, jj)| self.vertex(kk, jj));
                    let img = t.map(|(kk, jj)| self.vertex(kk, jj + if kk == k { s0 } else { s1 }));
                    out.push((dom, img));
                }
            }
        }
        out
    }

    /// Segments along which the map fails to be affine.
    fn cuts(&self) -> Vec<(Point, Point)> {
        let mut v = Vec::new();
        for k in 0..=LAYERS {
            for j in 0..4i64 {
                v.push((self.vertex(k, j), self.vertex(k, j + 1)));
                if k < LAYERS {
                    v.push((self.vertex(k, j), self.vertex(k + 1, j)));
                    // the diagonal is the side shared by the two triangles
                    let [t1, t2] = self.cell_triangles(k, j);
                    let shared: Vec<(usize, i64)> = t1.into_iter().filter(|x| t2.contains(x)).collect();
                    v.push((self.vertex(shared[0].0, shared[0].1), self.vertex(shared[1].0, shared[1].1)));
                }
            }
        }
        v
    }

    fn apply_point(&self, p: &Point, tris: &[([Point; 3], [Point; 3])]) -> Point {
        let d = self.l1(p);
        if d <= self.radii[0] {
            return Point::new(&self.center.x * q(2) - &p.x, &self.center.y * q(2) - &p.y);
        }
        if d >= self.radii[LAYERS] {
            return p.clone();
        }
        for (dom, img) in tris {
            if let Some(bc) = barycentric(dom, p) {
                let mut x = Q::zero();
                let mut y = Q::zero();
                for i in 0..3 {
                    x += &bc[i] * &img[i].x;
                    y += &bc[i] * &img[i].y;
                }
                return Point::new(x, y);
            }
        }
        unreachable!("layered annulus is covered by its triangles")
    }

    fn apply_polygon(&self, poly: &[Point]) -> Vec<Point> {
        let cuts = self.cuts();
        let tris = self.triangles();
        let n = poly.len();
        let mut refined = Vec::new();
        for i in 0..n {
            let a = &poly[i];
            let c = &poly[(i + 1) % n];
            let mut ts: Vec<Q> = Vec::new();
            for (u, v) in &cuts {
                match meet(a, c, u, v) {
                    Meet::Proper(p) | Meet::Touch(p) => ts.push(param_of(a, c, &p)),
                    Meet::Overlap => {
                        for e in [u, v] {
                            if orient(a, c, e) == 0 {
                                ts.push(param_of(a, c, e));
                            }
                        }
                    }
                    Meet::None => {}
                }
            }
            ts.retain(|t| t.is_positive() && *t < q(1));
            ts.sort();
            ts.dedup();
            refined.push(a.clone());
            refined.extend(ts.iter().map(|t| a.lerp(c, t)));
        }
        refined.iter().map(|p| self.apply_point(p, &tris)).collect()
    }
}

fn barycentric(t: &[Point; 3], p: &Point) -> Option<[Q; 3]> {
    let det = cross(&t[1].sub(&t[0]), &t[2].sub(&t[0]));
    let l1 = cross(&p.sub(&t[0]), &t[2].sub(&t[0])) / &det;
    let l2 = cross(&t[1].sub(&t[0]), &p.sub(&t[0])) / &det;
    let l0 = q(1) - &l1 - &l2;
    if l0.is_negative() || l1.is_negative() || l2.is_negative() {
        None
    } else {
        Some([l0, l1, l2])
    }
}

/// The inversion chart, its inverse, and the chart images of punctures.
fn chart(p: &Point) -> Point {
    let x = &p.x - frac(1, 2);
    let d = &x * &x + &p.y * &p.y;
    Point::new(x / &d, -&p.y / d)
}

fn unchart(w: &Point) -> Point {
    let d = &w.x * &w.x + &w.y * &w.y;
    Point::new(&w.x / &d + frac(1, 2), -&w.y / d)
}

/// Is any of `pts` strictly between the chord `[a, c]` and the circular arc
/// through `a`, `m`, `c`?
fn lune_hits(a: &Point, m: &Point, c: &Point, pts: &[Point]) -> bool {
    let side = orient(a, c, m);
    if side == 0 {
        return false;
    }
    let (center, r2) = circumcircle(a, m, c);
    pts.iter().any(|p| {
        let d = p.sub(&center);
        orient(a, c, p) == side && crate::engine::geom::dot(&d, &d) <= r2
    })
}

fn circumcircle(a: &Point, b: &Point, c: &Point) -> (Point, Q) {
    let d = q(2) * (&a.x * (&b.y - &c.y) + &b.x * (&c.y - &a.y) + &c.x * (&a.y - &b.y));
    let n = |p: &Point| &p.x * &p.x + &p.y * &p.y;
    let (na, nb, nc) = (n(a), n(b), n(c));
    let ux = (&na * (&b.y - &c.y) + &nb * (&c.y - &a.y) + &nc * (&a.y - &b.y)) / &d;
    let uy = (&na * (&c.x - &b.x) + &nb * (&a.x - &c.x) + &nc * (&b.x - &a.x)) / &d;
    let center = Point::new(ux, uy);
    let r = a.sub(&center);
    let r2 = crate::engine::geom::dot(&r, &r);
    (center, r2)
}

/// Maps a closed polygon through a Möbius map, replacing arcs by chords and
/// subdividing until no obstacle point lies in a lune and the result is
/// simple.
fn transport(poly: &[Point], f: fn(&Point) -> Point, obstacles: &[Point]) -> Result<Vec<Point>> {
    let mut cur = poly.to_vec();
    for _ in 0..12 {
        let n = cur.len();
        let img: Vec<Point> = cur.iter().map(f).collect();
        let mut bad = vec![false; n];
        for i in 0..n {
            let mid = f(&cur[i].midpoint(&cur[(i + 1) % n]));
            bad[i] = lune_hits(&img[i], &mid, &img[(i + 1) % n], obstacles);
        }
        if !bad.iter().any(|&x| x) && is_simple(&img) {
            return Ok(img);
        }
        let all = !bad.iter().any(|&x| x);
        let mut next = Vec::with_capacity(2 * n);
        for i in 0..n {
            next.push(cur[i].clone());
            if bad[i] || all {
                next.push(cur[i].midpoint(&cur[(i + 1) % n]));
            }
        }
        cur = next;
    }
    Err(Error::Degenerate("chart transport did not settle".into()))
}

/// The image of a key under one generator, computed geometrically.
pub fn apply_generator_engine(k: &CurveKey, index: usize, sign: i8) -> Result<CurveKey> {
    let b = k.b();
    if index == 0 || index >= b {
        return Err(Error::Precondition(format!("generator H{index} needs 1 <= index < {b}")));
    }
    let cfg = realize::Layout::stacked(
        k.triangulation(),
        vec![realize::System::new(&k.triangulation(), k.weights())?],
    )
    .realize();
    let poly = &cfg.polygons[0];
    if index < b - 1 {
        let s = Support {
            center: Point::new(q(index as i64) + frac(1, 2), q(0)),
            radii: vec![frac(3, 4), q(1), frac(5, 4)],
            sign,
        };
        return polygon_key(b, &s.apply_polygon(poly), true);
    }
    let punctures: Vec<Point> = (1..b as i64).map(|i| Point::int(i, 0)).collect();
    let mut chart_punctures: Vec<Point> = punctures.iter().map(chart).collect();
    chart_punctures.push(Point::int(0, 0));
    let w = transport(poly, chart, &chart_punctures)?;
    // p_{b-1} sits at 2/(2b-3), p_{b-2} at 2/(2b-5), infinity at 0
    let bb = b as i64;
    let half = frac(1, 2 * bb - 3);
    let gap = frac(2, 2 * bb - 5) - &half;
    let slack = &gap - &half;
    let radii: Vec<Q> = (0..=LAYERS as i64)
        .map(|k| &half + &slack * frac(k + 1, LAYERS as i64 + 2))
        .collect();
    let s = Support { center: Point::new(half, q(0)), radii, sign };
    let twisted = s.apply_polygon(&w);
    let back = transport(&twisted, unchart, &punctures)?;
    polygon_key(b, &back, true)
}

/// The image of a key under a word, one generator at a time through the
/// engine (last letter first).
pub fn apply_word_engine(w: &MappingWord, k: &CurveKey) -> Result<CurveKey> {
    w.check(k.b())?;
    let mut cur = k.clone();
    for g in w.letters().iter().rev() {
        cur = apply_generator_engine(&cur, g.index, g.sign)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{apply_word, block_curve, enumerate_curves, separation};

    #[test]
    fn half_twist_swaps_punctures() {
        let c = block_curve(7, &[2, 3]).unwrap();
        let img = apply_generator_engine(&c, 1, 1).unwrap();
        assert_eq!(separation(&img).side_a(), &[1, 3]);
    }

    #[test]
    fn fixes_its_core() {
        for b in [5, 6] {
            for i in 1..b {
                let core = block_curve(b, &[i, i % b + 1]).unwrap();
                for s in [1, -1] {
                    assert_eq!(apply_generator_engine(&core, i, s).unwrap(), core, "b={b} i={i}");
                }
            }
        }
    }

    #[test]
    fn engine_inverse_undoes() {
        for k in enumerate_curves(5, 8) {
            for i in 1..5 {
                let x = apply_generator_engine(&k, i, 1).unwrap();
                assert_eq!(apply_generator_engine(&x, i, -1).unwrap(), k);
            }
        }
    }

    #[test]
    fn fast_path_matches_engine() {
        for b in [4, 5, 6] {
            for k in enumerate_curves(b, 9) {
                for i in 1..b {
                    for s in [1i8, -1] {
                        let w = MappingWord::generator(i, s);
                        assert_eq!(
                            apply_word(&w, &k),
                            apply_generator_engine(&k, i, s).unwrap(),
                            "b={b} H{i}^{s} on {k:?}"
                        );
                    }
                }
            }
        }
    }
}
