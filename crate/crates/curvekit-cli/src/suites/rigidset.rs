//! The finite rigid sets `X_b`.

use curvekit::detectors::is_chain;
use curvekit::engine::engine_intersection_number;
use curvekit::rigid::{
    build_rigid_set, collapse_isomorphism, embedding_violations, extension_uniqueness_check, minimal_transporters,
    minimal_vertices, special_pentagon_certificate, two_block_vertices, verify_pentagon, ChordGraph,
};
use curvekit::topology::half_twist_word;
use curvekit::{apply_word, enumerate_curves, CurveKey};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{upper_b, CheckFn};
use crate::config::Config;
use crate::report::Check;

pub const CHECKS: &[CheckFn] = &[vertex_counts, x5_pentagon, embedding, pentagons, minimal_links, extension];

fn b_range(cfg: &Config) -> std::ops::RangeInclusive<usize> {
    5..=upper_b(cfg, 10, 5)
}

fn rigid(b: usize) -> ChordGraph {
    build_rigid_set(b).expect("b >= 5")
}

pub fn vertex_counts(cfg: &Config) -> Check {
    let check = Check::new("rigidset.vertex-count", "rigid-set-size");
    let mut sizes = Vec::new();
    for b in b_range(cfg) {
        let n = rigid(b).len();
        sizes.push(format!("{b}:{n}"));
        if n != b * (b - 3) / 2 {
            return check.fail(format!("|V(X_{b})| = {n}"), json!({"b": b, "vertices": n}));
        }
    }
    check.pass(format!("|V(X_b)| = b(b-3)/2 ({})", sizes.join(" ")))
}

pub fn x5_pentagon(_cfg: &Config) -> Check {
    let check = Check::new("rigidset.x5-pentagon", "x5-is-a-pentagon");
    let x = rigid(5);
    let degrees_two = (0..x.len()).all(|v| x.neighbours(v).len() == 2);
    let mut seen = vec![0usize];
    let mut k = 0;
    while k < seen.len() {
        for w in x.neighbours(seen[k]) {
            if !seen.contains(&w) {
                seen.push(w);
            }
        }
        k += 1;
    }
    let cycle = x.len() == 5 && x.edges().len() == 5 && degrees_two && seen.len() == 5;
    let detail = format!("{} vertices, {} edges, connected and 2-regular: {cycle}", x.len(), x.edges().len());
    let check = check.with_certificate(serde_json::from_str(&x.to_graph().to_json()).unwrap());
    if cycle {
        check.pass(detail)
    } else {
        check.fail(detail, json!(x.edges()))
    }
}

/// Adjacency is `i = 0`, non-adjacency `i = 2`, with `i` computed by the
/// engine on every pair.
pub fn embedding(cfg: &Config) -> Check {
    let check = Check::new("rigidset.embedding", "adjacency-is-disjointness-crossings-are-two");
    let mut pairs = 0;
    for b in b_range(cfg) {
        let x = rigid(b);
        let n = x.len();
        pairs += n * (n - 1) / 2;
        let engine: Vec<(usize, usize, u64)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|u| {
                let x = &x;
                (u + 1..n).map(move |v| (u, v, engine_intersection_number(&x.curves[u], &x.curves[v]).unwrap_or(u64::MAX)))
            })
            .collect();
        let lookup = |a: &CurveKey, c: &CurveKey| {
            let (u, v) = (x.vertex_of_curve(a).unwrap(), x.vertex_of_curve(c).unwrap());
            let (u, v) = (u.min(v), u.max(v));
            engine.iter().find(|e| e.0 == u && e.1 == v).map_or(0, |e| e.2)
        };
        if let Some(&(u, v, i)) = embedding_violations(&x, lookup).first() {
            return check.fail(format!("b={b}: pair with i = {i}"), json!({"b": b, "blocks": [x.blocks[u], x.blocks[v]]}));
        }
    }
    check.pass(format!("{pairs} pairs through the engine, b = {}..={}", b_range(cfg).start(), b_range(cfg).end()))
}

pub fn pentagons(cfg: &Config) -> Check {
    let check = Check::new("rigidset.pentagon-certificates", "crossing-pairs-have-special-pentagons");
    let mut certs: Vec<Value> = Vec::new();
    let mut total = 0;
    for b in b_range(cfg) {
        let x = rigid(b);
        let n = x.len();
        let crossing: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !x.adjacent(u, v)).collect();
        total += crossing.len();
        let results: Vec<Result<Value, Value>> = crossing
            .par_iter()
            .map(|&(u, v)| {
                let fail = |why: String| json!({"b": b, "blocks": [x.blocks[u], x.blocks[v]], "why": why});
                let cert = special_pentagon_certificate(&x, u, v).map_err(|e| fail(e.to_string()))?;
                verify_pentagon(&x, &cert).map_err(|e| fail(e.to_string()))?;
                let chain: Vec<CurveKey> = cert.chain()[..4].iter().map(|&k| x.curves[k].clone()).collect();
                if !is_chain(&chain) {
                    return Err(fail("not a chain".into()));
                }
                Ok(cert.to_json(&x))
            })
            .collect();
        for r in results {
            match r {
                Ok(c) => {
                    if b == 7 {
                        certs.push(c);
                    }
                }
                Err(rep) => return check.fail("certificate missing or invalid", rep),
            }
        }
    }
    check
        .with_certificate(json!({"b": 7, "certificates": certs}))
        .pass(format!("{total} crossing pairs certified inside X_b"))
}

pub fn minimal_links(cfg: &Config) -> Check {
    let check = Check::new("rigidset.minimal-links", "minimal-links-are-smaller-rigid-sets");
    let top = upper_b(cfg, 10, 5).min(9);
    let mut count = 0;
    for b in 6..=top {
        let x = rigid(b);
        let mut m = match minimal_vertices(&x) {
            Ok(m) => m,
            Err(e) => return Check::errored(&check.id, &check.anchor, e),
        };
        let mut t = two_block_vertices(&x);
        m.sort();
        t.sort();
        if m != t {
            return check.fail(format!("b={b}: minimal vertices are not the two-blocks"), json!({"b": b, "minimal": m}));
        }
        for v in t {
            if let Err(e) = collapse_isomorphism(&x, v) {
                return check.fail(format!("b={b}: {e}"), json!({"b": b, "beta": x.blocks[v]}));
            }
            count += 1;
        }
    }
    check.pass(format!("{count} links isomorphic to X_(b-1), b = 6..={top}"))
}

/// The facet `{1,2,3}`-side of `{3,4}` singles out `{4,5}` inside the
/// window, and not its half-twist image. Default window: three times the
/// heaviest curve of `X_7`.
pub fn extension(cfg: &Config) -> Check {
    let check = Check::new("rigidset.extension-uniqueness", "facet-extension-unique-in-window");
    let x = rigid(7);
    let idx = |blk: &[usize]| x.index_of(blk).unwrap();
    let (beta, alpha, z) = (idx(&[3, 4]), idx(&[1, 2, 3]), idx(&[4, 5]));
    let w = cfg.window_or(3 * crate::config::default_window(7) / 2);
    let window = enumerate_curves(7, w);
    let run = || -> curvekit::Result<(bool, bool)> {
        let v = extension_uniqueness_check(&x, beta, alpha, &x.curves[z], &window, w)?;
        let (_, t) = minimal_transporters(&x).into_iter().find(|(v, _)| *v == beta).unwrap();
        let hz = apply_word(&half_twist_word(&x.curves[beta], &t)?, &x.curves[z]);
        let v2 = extension_uniqueness_check(&x, beta, alpha, &hz, &window, w)?;
        Ok((v.unique, v2.unique))
    };
    match run() {
        Ok((true, false)) => check.pass(format!("b=7, W={w}: unique, twisted copy rejected")),
        Ok((u, u2)) => check.fail(format!("b=7, W={w}: unique={u}, twisted unique={u2}"), json!({"window": w})),
        Err(e) => Check::errored(&check.id, &check.anchor, e),
    }
}
