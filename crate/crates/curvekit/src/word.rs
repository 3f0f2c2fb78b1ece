//! Free-group words dual to the `u` edges, and the conversion from a
//! cyclically reduced word back to normal coordinates.
//!
//! Cutting the sphere along the rays `u_1 .. u_{b-1}` leaves a disk `D`.
//! Walking its boundary counterclockwise, with `k = b - 1 - i`, the two
//! sides of `u_i` sit at positions `4k + 1` (exit side of `x_i`) and `4k + 3`
//! (entry side of `x_i`), the puncture `p_i` at `4k + 2`, and the copy of
//! infinity facing the lower half-plane at `0`. The `s` and `d` edges are
//! diagonals of `D`; a reduced cyclic word cuts `D` into chords, and the
//! weight of a diagonal is the number of chords that interleave with it.

use crate::triangulation::{Edge, Triangulation};

/// `+i` is the generator `x_i`, `-i` its inverse.
pub type Letter = i32;

pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let w = free_reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

/// Boundary position at which the letter leaves `D`.
pub(crate) fn exit_pos(b: usize, l: Letter) -> usize {
    let i = l.unsigned_abs() as usize;
    let k = b - 1 - i;
    if l > 0 {
        4 * k + 1
    } else {
        4 * k + 3
    }
}

/// Boundary position at which the letter re-enters `D`.
pub(crate) fn enter_pos(b: usize, l: Letter) -> usize {
    let i = l.unsigned_abs() as usize;
    let k = b - 1 - i;
    if l > 0 {
        4 * k + 3
    } else {
        4 * k + 1
    }
}

fn puncture_pos(b: usize, i: usize) -> usize {
    4 * (b - 1 - i) + 2
}

/// Normal coordinates of the curve carried by a cyclically reduced word.
pub fn weights_from_word(b: usize, word: &[Letter]) -> Vec<u64> {
    let tri = Triangulation::new(b);
    let mut w = vec![0u64; tri.edge_count()];
    let n = word.len();
    if n == 0 {
        return w;
    }
    for &l in word {
        w[tri.index(Edge::U(l.unsigned_abs() as usize))] += 1;
    }
    let chords: Vec<(usize, usize)> = (0..n)
        .map(|k| {
            let a = enter_pos(b, word[k]);
            let c = exit_pos(b, word[(k + 1) % n]);
            if a < c {
                (a, c)
            } else {
                (c, a)
            }
        })
        .collect();
    let mut diag = |e: Edge, x: usize, y: usize| {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        let count = chords
            .iter()
            .filter(|&&(a, c)| (x < a && a < y) != (x < c && c < y))
            .count();
        w[tri.index(e)] = count as u64;
    };
    for i in 1..=b - 2 {
        diag(Edge::S(i), puncture_pos(b, i), puncture_pos(b, i + 1));
    }
    for i in 2..=b - 2 {
        diag(Edge::D(i), puncture_pos(b, i), 0);
    }
    w
}

/// The automorphism of the free group induced by the positive half twist
/// `H_i` (or its inverse), as images of the generators `x_1 .. x_{b-1}`.
///
/// For `i < b-1`, `H_i` sends `x_i -> x_i^-1 x_{i+1} x_i` and
/// `x_{i+1} -> x_i`; `H_i^-1` sends `x_i -> x_{i+1}` and
/// `x_{i+1} -> x_{i+1} x_i x_{i+1}^-1`. `H_{b-1}` treats the loop around
/// infinity, `x_b = x_1^-1 x_2^-1 .. x_{b-1}^-1`, as the next generator.
pub fn half_twist_substitution(b: usize, i: usize, sign: i8) -> Vec<Vec<Letter>> {
    assert!((1..b).contains(&i));
    let mut img: Vec<Vec<Letter>> = (0..b).map(|j| vec![j as Letter]).collect();
    let xi = i as Letter;
    if i < b - 1 {
        let xj = xi + 1;
        if sign > 0 {
            img[i] = vec![-xi, xj, xi];
            img[i + 1] = vec![xi];
        } else {
            img[i] = vec![xj];
            img[i + 1] = vec![xj, xi, -xj];
        }
    } else if sign > 0 {
        // x_{b-1} -> x_{b-1}^-1 x_b x_{b-1} = x_{b-1}^-1 x_1^-1 .. x_{b-2}^-1
        let mut w = vec![-xi];
        w.extend((1..i as Letter).map(|j| -j));
        img[i] = w;
    } else {
        // x_{b-1} -> x_b = x_1^-1 .. x_{b-1}^-1
        img[i] = (1..=i as Letter).map(|j| -j).collect();
    }
    img
}

/// Applies a substitution (images of generators, indexed from 1) to a word.
pub fn substitute(img: &[Vec<Letter>], w: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len() * 2);
    for &l in w {
        let g = &img[l.unsigned_abs() as usize];
        if l > 0 {
            for &x in g {
                push_reduced(&mut out, x);
            }
        } else {
            for &x in g.iter().rev() {
                push_reduced(&mut out, -x);
            }
        }
    }
    out
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(inverse(&[1, -2]), vec![2, -1]);
    }

    #[test]
    fn substitutions_are_mutually_inverse() {
        for b in 4..9 {
            for i in 1..b {
                let p = half_twist_substitution(b, i, 1);
                let m = half_twist_substitution(b, i, -1);
                for g in 1..b as Letter {
                    assert_eq!(substitute(&m, &substitute(&p, &[g])), vec![g], "b={b} i={i}");
                    assert_eq!(substitute(&p, &substitute(&m, &[g])), vec![g], "b={b} i={i}");
                }
            }
        }
    }

    #[test]
    fn positions_are_interleaved_correctly() {
        let b = 6;
        for i in 1..b {
            let l = i as Letter;
            assert_eq!(exit_pos(b, l) + 1, puncture_pos(b, i));
            assert_eq!(enter_pos(b, l) - 1, puncture_pos(b, i));
            assert_eq!(exit_pos(b, -l), enter_pos(b, l));
        }
    }
}
