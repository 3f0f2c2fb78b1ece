//! Exact planar predicates over rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, t: &Q) -> Point {
        Point::new(&self.x * t, &self.y * t)
    }

    pub fn lerp(&self, o: &Point, t: &Q) -> Point {
        self.add(&o.sub(self).scale(t))
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        self.lerp(o, &frac(1, 2))
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }

    /// Rescales `self` to unit L1 norm.
    pub fn l1_normalized(&self) -> Point {
        let n = self.x.abs() + self.y.abs();
        Point::new(&self.x / &n, &self.y / &n)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.x.to_string(), self.y.to_string()).serialize(s)
    }
}

pub fn cross(a: &Point, b: &Point) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the turn `a -> b -> c`: positive for counterclockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = cross(&b.sub(a), &c.sub(a));
    sign(&v)
}

pub fn sign(v: &Q) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Is `p` on the closed segment `[a, b]`?
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    None,
    /// Single point strictly inside both segments.
    Proper(Point),
    /// Single point that is an endpoint of at least one segment.
    Touch(Point),
    /// The segments overlap along a subsegment of positive length.
    Overlap,
}

pub fn meet(a: &Point, b: &Point, c: &Point, d: &Point) -> Meet {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 == 0 && o2 == 0 {
        // collinear: compare along the dominant axis
        let key = |p: &Point| if a.x != b.x { p.x.clone() } else { p.y.clone() };
        let (mut s1, mut e1) = (key(a), key(b));
        if s1 > e1 {
            std::mem::swap(&mut s1, &mut e1);
        }
        let (mut s2, mut e2) = (key(c), key(d));
        if s2 > e2 {
            std::mem::swap(&mut s2, &mut e2);
        }
        let lo = s1.max(s2);
        let hi = e1.min(e2);
        return match lo.cmp(&hi) {
            Ordering::Greater => Meet::None,
            Ordering::Equal => {
                let p = [a, b, c, d].into_iter().find(|p| key(p) == lo).unwrap().clone();
                Meet::Touch(p)
            }
            Ordering::Less => Meet::Overlap,
        };
    }
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return Meet::None;
    }
    if o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return Meet::Proper(intersection_point(a, b, c, d));
    }
    let p = if o1 == 0 {
        c.clone()
    } else if o2 == 0 {
        d.clone()
    } else if o3 == 0 {
        a.clone()
    } else {
        b.clone()
    };
    Meet::Touch(p)
}

/// Intersection of the lines `ab` and `cd`, which must not be parallel.
pub fn intersection_point(a: &Point, b: &Point, c: &Point, d: &Point) -> Point {
    let t = line_param(a, b, c, d);
    a.lerp(b, &t)
}

/// Parameter `t` along `ab` where it meets the line `cd`.
pub fn line_param(a: &Point, b: &Point, c: &Point, d: &Point) -> Q {
    let r = b.sub(a);
    let s = d.sub(c);
    cross(&c.sub(a), &s) / cross(&r, &s)
}

/// Parameter of `p` along `ab`, assuming `p` is on the line.
pub fn param_of(a: &Point, b: &Point, p: &Point) -> Q {
    if a.x != b.x {
        (&p.x - &a.x) / (&b.x - &a.x)
    } else {
        (&p.y - &a.y) / (&b.y - &a.y)
    }
}

/// Twice the signed area of a closed polygon.
pub fn signed_area2(poly: &[Point]) -> Q {
    let n = poly.len();
    let mut s = Q::zero();
    for i in 0..n {
        s += cross(&poly[i], &poly[(i + 1) % n]);
    }
    s
}

/// Winding number of a closed polygon around `p`; `None` when `p` lies on
/// the polygon.
pub fn winding(poly: &[Point], p: &Point) -> Option<i32> {
    let n = poly.len();
    let mut w = 0;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if on_segment(a, b, p) {
            return None;
        }
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    Some(w)
}

/// Conservative floating-point bounding box used to skip exact tests.
#[derive(Clone, Copy, Debug)]
pub struct BBox {
    pub lo: (f64, f64),
    pub hi: (f64, f64),
}

impl BBox {
    pub fn of_segment(a: &Point, b: &Point) -> BBox {
        let (ax, ay) = a.approx();
        let (bx, by) = b.approx();
        let pad = |v: f64| v.abs() * 1e-9 + 1e-12;
        let lo = (ax.min(bx), ay.min(by));
        let hi = (ax.max(bx), ay.max(by));
        BBox {
            lo: (lo.0 - pad(lo.0), lo.1 - pad(lo.1)),
            hi: (hi.0 + pad(hi.0), hi.1 + pad(hi.1)),
        }
    }

    pub fn overlaps(&self, o: &BBox) -> bool {
        !(self.hi.0 < o.lo.0 || o.hi.0 < self.lo.0 || self.hi.1 < o.lo.1 || o.hi.1 < self.lo.1)
    }
}

/// Checks that a closed polygon has no repeated vertices and no two
/// non-adjacent edges meeting, and that adjacent edges only share their
/// common vertex.
pub fn is_simple(poly: &[Point]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let boxes: Vec<BBox> = (0..n).map(|i| BBox::of_segment(&poly[i], &poly[(i + 1) % n])).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| boxes[i].lo.0.partial_cmp(&boxes[j].lo.0).unwrap_or(Ordering::Equal));
    for (oi, &i) in order.iter().enumerate() {
        for &j in &order[oi + 1..] {
            if boxes[j].lo.0 > boxes[i].hi.0 {
                break;
            }
            if !boxes[i].overlaps(&boxes[j]) {
                continue;
            }
            let (a, b) = (&poly[i], &poly[(i + 1) % n]);
            let (c, d) = (&poly[j], &poly[(j + 1) % n]);
            let m = meet(a, b, c, d);
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            match m {
                Meet::None => {}
                Meet::Touch(p) if adjacent => {
                    let shared = if (i + 1) % n == j { b } else { a };
                    if &p != shared {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meets() {
        let p = |x, y| Point::int(x, y);
        assert!(matches!(meet(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)), Meet::Proper(_)));
        assert_eq!(meet(&p(0, 0), &p(2, 0), &p(2, 0), &p(3, 1)), Meet::Touch(p(2, 0)));
        assert_eq!(meet(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)), Meet::Overlap);
        assert_eq!(meet(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)), Meet::None);
    }

    #[test]
    fn winding_and_simplicity() {
        let sq = vec![Point::int(0, 0), Point::int(2, 0), Point::int(2, 2), Point::int(0, 2)];
        assert_eq!(winding(&sq, &Point::int(1, 1)), Some(1));
        assert_eq!(winding(&sq, &Point::int(3, 1)), Some(0));
        assert_eq!(winding(&sq, &Point::int(2, 1)), None);
        assert!(is_simple(&sq));
        let bow = vec![Point::int(0, 0), Point::int(2, 2), Point::int(2, 0), Point::int(0, 2)];
        assert!(!is_simple(&bow));
        assert!(signed_area2(&sq) > q(0));
    }
}
