//! Geometric intersection numbers by counting linked pairs of cyclic words.
//!
//! The punctured sphere retracts onto a rose whose petal `i` crosses `u_i`
//! once. Half-edges at the rose vertex are identified with the boundary
//! positions of the cut disk (see [`crate::word`]), which already come in
//! counterclockwise order. Two reduced cyclic words meet at the vertex either
//! transversally or along maximal common segments (in the same or opposite
//! direction); each such meeting is a crossing of the geodesic
//! representatives exactly when the strands are linked.

use crate::key::CurveKey;
use crate::word::{enter_pos, exit_pos, inverse, Letter};

/// Intersection number of two curves.
pub fn intersection_number(a: &CurveKey, c: &CurveKey) -> u64 {
    assert_eq!(a.b(), c.b(), "curves live on different surfaces");
    if a == c {
        return 0;
    }
    linked_pairs(a.b(), &a.word(), &c.word())
}

/// Counts linked pairs between two cyclically reduced, primitive, non
/// conjugate words.
pub fn linked_pairs(b: usize, u: &[Letter], v: &[Letter]) -> u64 {
    let modulus = 4 * (b - 1) + 1;
    // going counterclockwise from `from`, is `x` met before `y`?
    let before = |from: usize, x: usize, y: usize| {
        (x + modulus - from) % modulus < (y + modulus - from) % modulus
    };
    let start = |l: Letter| exit_pos(b, l);
    let end = |l: Letter| enter_pos(b, l);
    let n = u.len();
    let m = v.len();
    if n == 0 || m == 0 {
        return 0;
    }
    let vinv = inverse(v);
    let mut count = 0u64;
    for (vv, transverse) in [(v, true), (&vinv[..], false)] {
        for i in 0..n {
            let up = u[(i + n - 1) % n];
            for j in 0..m {
                let vp = vv[(j + m - 1) % m];
                if up == vp {
                    continue;
                }
                let mut l = 0;
                while l < n + m && u[(i + l) % n] == vv[(j + l) % m] {
                    l += 1;
                }
                if l == 0 {
                    if !transverse {
                        continue;
                    }
                    let (ui, uo, vi, vo) = (end(up), start(u[i]), end(vp), start(vv[j]));
                    if ui == vo || uo == vi {
                        continue;
                    }
                    // does the pair {ui, uo} separate {vi, vo}?
                    if before(ui, vi, uo) != before(ui, vo, uo) {
                        count += 1;
                    }
                } else if l < n + m {
                    let hs = start(u[i]);
                    let left_start = before(hs, end(vp), end(up));
                    let he = end(u[(i + l - 1) % n]);
                    let left_end = before(he, start(u[(i + l) % n]), start(vv[(j + l) % m]));
                    if left_start != left_end {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}
