//! Curve keys, the combinatorial intersection number and their agreement
//! with the piecewise-linear engine.

use curvekit::engine::complement::components_by_separation;
use curvekit::engine::{
    apply_word_engine, arrangement, complement_components, engine_intersection_number, extract_key,
    filled_subsurface, filled_subsurface_shuffled, realize, tauten, ComplementComponent, PLConfiguration,
};
use curvekit::rigid::{block_list, blocks_disjoint};
use curvekit::topology::dehn_twist_word;
use curvekit::{
    apply_word, block_curve, curves_equal, enumerate_curves, intersection_number, nested_separations, separation,
    CurveKey, MappingWord,
};
use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{key_json, random_curve, random_word, rng_for, upper_b, CheckFn};
use crate::config::{default_window, Config};
use crate::report::Check;

pub const CHECKS: &[CheckFn] = &[
    canonical_keys,
    equality_criterion,
    intersection_invariance,
    engine_intersection,
    engine_twists,
    disjoint_nested,
    twist_separations,
    generator_relations,
    tauten_minimal,
    complement_euler,
    filled_independent,
];

pub fn canonical_keys(cfg: &Config) -> Check {
    let check = Check::new("core.canonical-keys", "realize-extract-round-trip");
    let mut total = 0;
    for b in 5..=upper_b(cfg, 6, 5) {
        let w = cfg.window_or(default_window(b));
        let curves = enumerate_curves(b, w);
        total += curves.len();
        let bad = curves.par_iter().find_first(|k| !matches!(realize(k).and_then(|c| extract_key(&c)), Ok(e) if e == **k));
        if let Some(k) = bad {
            return check.fail(format!("b={b}, W={w}: round trip changed a key"), key_json(k));
        }
    }
    check.pass(format!("{total} keys round-trip"))
}

pub fn equality_criterion(cfg: &Config) -> Check {
    let check = Check::new("core.equality-criterion", "equal-iff-disjoint-and-same-separation");
    let w = cfg.window_or(default_window(6));
    let curves = enumerate_curves(6, w);
    let seps: Vec<_> = curves.iter().map(separation).collect();
    let bad = (0..curves.len()).into_par_iter().find_map_first(|x| {
        (0..curves.len()).find_map(|y| {
            let (a, c) = (&curves[x], &curves[y]);
            let crit = intersection_number(a, c) == 0 && seps[x] == seps[y];
            (curves_equal(a, c) != crit).then(|| json!([a, c]))
        })
    });
    let n = curves.len();
    check.verdict(format!("{} pairs in enumerate_curves(6, {w})", n * n), bad)
}

pub fn intersection_invariance(cfg: &Config) -> Check {
    let check = Check::new("core.intersection-invariance", "intersection-symmetric-and-invariant");
    let mut rng = rng_for(cfg, &check.id);
    let mut max_i = 0;
    for _ in 0..cfg.samples {
        let b = rng.gen_range(5..=8);
        let (a, c) = (random_curve(b, cfg.word_len, &mut rng), random_curve(b, cfg.word_len, &mut rng));
        let w = random_word(b, cfg.word_len, &mut rng);
        let i = intersection_number(&a, &c);
        max_i = max_i.max(i);
        if intersection_number(&c, &a) != i || intersection_number(&apply_word(&w, &a), &apply_word(&w, &c)) != i {
            return check.fail("asymmetric or not invariant", json!({"a": a, "c": c, "word": w}));
        }
    }
    check.pass(format!("{} random pairs, largest i = {max_i}", cfg.samples))
}

pub fn engine_intersection(cfg: &Config) -> Check {
    let check = Check::new("core.engine-intersection", "engine-agrees-with-combinatorial-intersection");
    let mut rng = rng_for(cfg, &check.id);
    let pairs: Vec<(CurveKey, CurveKey)> = (0..60)
        .map(|_| {
            let b = rng.gen_range(5..=7);
            (random_curve(b, 4, &mut rng), random_curve(b, 4, &mut rng))
        })
        .collect();
    let bad = pairs.par_iter().find_map_first(|(a, c)| match engine_intersection_number(a, c) {
        Ok(e) if e == intersection_number(a, c) => None,
        other => Some(json!({"a": a, "c": c, "engine": format!("{other:?}")})),
    });
    check.verdict(format!("{} pairs through the engine", pairs.len()), bad)
}

pub fn engine_twists(cfg: &Config) -> Check {
    let check = Check::new("core.engine-twists", "engine-agrees-with-word-action");
    let mut rng = rng_for(cfg, &check.id);
    let cases: Vec<(MappingWord, CurveKey)> = (0..40)
        .map(|_| {
            let b = rng.gen_range(5..=7);
            (MappingWord::random(b, rng.gen_range(1..=3), &mut rng), random_curve(b, 3, &mut rng))
        })
        .collect();
    let bad = cases.par_iter().find_map_first(|(w, c)| match apply_word_engine(w, c) {
        Ok(e) if e == apply_word(w, c) => None,
        other => Some(json!({"word": w, "curve": c, "engine": format!("{other:?}")})),
    });
    check.verdict(format!("{} words applied both ways", cases.len()), bad)
}

/// Ordered pairs of distinct disjoint blocks of `X_b`.
fn disjoint_block_pairs(b: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let blocks = block_list(b);
    let mut out = Vec::new();
    for x in &blocks {
        for y in &blocks {
            if x != y && blocks_disjoint(b, x, y) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

pub fn disjoint_nested(cfg: &Config) -> Check {
    let check = Check::new("core.disjoint-nested", "disjoint-curves-have-nested-distinct-separations");
    let mut rng = rng_for(cfg, &check.id);
    for _ in 0..cfg.samples {
        let b = rng.gen_range(5..=9);
        let pairs = disjoint_block_pairs(b);
        let (x, y) = &pairs[rng.gen_range(0..pairs.len())];
        let w = random_word(b, cfg.word_len, &mut rng);
        let a = apply_word(&w, &block_curve(b, x).unwrap());
        let c = apply_word(&w, &block_curve(b, y).unwrap());
        let (sa, sc) = (separation(&a), separation(&c));
        if a == c {
            continue;
        }
        if intersection_number(&a, &c) != 0 || !nested_separations(&sa, &sc) || sa == sc {
            return check.fail("disjoint pair with bad separations", json!({"a": a, "c": c}));
        }
    }
    check.pass(format!("{} random disjoint pairs", cfg.samples))
}

pub fn twist_separations(cfg: &Config) -> Check {
    let check = Check::new("core.twist-separations", "dehn-twists-fix-separations");
    let mut rng = rng_for(cfg, &check.id);
    for _ in 0..cfg.samples {
        let b = rng.gen_range(5..=9);
        let blocks = block_list(b);
        let blk = &blocks[rng.gen_range(0..blocks.len())];
        let t = random_word(b, cfg.word_len / 2, &mut rng);
        let gamma = apply_word(&t, &block_curve(b, blk).unwrap());
        let twist = match dehn_twist_word(&gamma, blk, &t) {
            Ok(w) => w.pow(if rng.gen_bool(0.5) { 1 } else { -1 }),
            Err(e) => return Check::errored(&check.id, &check.anchor, e),
        };
        let c = random_curve(b, cfg.word_len / 2, &mut rng);
        if separation(&apply_word(&twist, &c)) != separation(&c) || apply_word(&twist, &gamma) != gamma {
            return check.fail("twist moved a separation", json!({"gamma": gamma, "twist": twist, "curve": c}));
        }
    }
    check.pass(format!("{} curve/twist pairs", cfg.samples))
}

pub fn generator_relations(cfg: &Config) -> Check {
    let check = Check::new("core.generator-relations", "braid-and-commutation-relations");
    let mut rng = rng_for(cfg, &check.id);
    let g = |v: &[i64]| MappingWord::from_signed(v).unwrap();
    for _ in 0..100 {
        let b = rng.gen_range(5..=9);
        let c = random_curve(b, cfg.word_len, &mut rng);
        for i in 1..b as i64 {
            if i + 1 < b as i64 && apply_word(&g(&[i, i + 1, i]), &c) != apply_word(&g(&[i + 1, i, i + 1]), &c) {
                return check.fail(format!("braid relation at H_{i}"), key_json(&c));
            }
            for j in i + 2..b as i64 {
                if apply_word(&g(&[i, j]), &c) != apply_word(&g(&[j, i]), &c) {
                    return check.fail(format!("H_{i} and H_{j} do not commute"), key_json(&c));
                }
            }
        }
    }
    check.pass("100 random curves, all generator pairs")
}

pub fn tauten_minimal(cfg: &Config) -> Check {
    let check = Check::new("core.tauten-minimal", "tautened-pairs-have-no-empty-bigons");
    let mut rng = rng_for(cfg, &check.id);
    let pairs: Vec<(CurveKey, CurveKey)> = (0..30)
        .map(|_| {
            let b = rng.gen_range(5..=7);
            (random_curve(b, 3, &mut rng), random_curve(b, 3, &mut rng))
        })
        .filter(|(a, c)| a != c)
        .collect();
    let bad = pairs.par_iter().find_map_first(|(a, c)| {
        let run = || -> curvekit::Result<usize> {
            let mut curves = realize(a)?.curves;
            curves.extend(realize(c)?.curves);
            let t = tauten(&PLConfiguration { b: a.b(), curves })?;
            Ok(arrangement::build(a.b(), &t.curves)?.empty_small_faces().len())
        };
        match run() {
            Ok(0) => None,
            other => Some(json!({"a": a, "c": c, "result": format!("{other:?}")})),
        }
    });
    check.verdict(format!("{} tautened pairs", pairs.len()), bad)
}

/// A random multicurve: a greedy family of pairwise disjoint blocks moved
/// by one word.
fn random_multicurve(b: usize, max_len: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<CurveKey> {
    let mut blocks = block_list(b);
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(1..=b - 3) {
        blocks.retain(|x| chosen.iter().all(|y| x != y && blocks_disjoint(b, x, y)));
        if blocks.is_empty() {
            break;
        }
        chosen.push(blocks.swap_remove(rng.gen_range(0..blocks.len())));
    }
    let w = random_word(b, max_len, rng);
    let mut curves: Vec<CurveKey> = chosen.iter().map(|x| apply_word(&w, &block_curve(b, x).unwrap())).collect();
    curves.sort();
    curves.dedup();
    curves
}

fn component_types(v: &[ComplementComponent]) -> Vec<(Vec<usize>, usize)> {
    let mut t: Vec<_> = v.iter().map(|c| (c.punctures.clone(), c.boundary_count)).collect();
    t.sort();
    t
}

pub fn complement_euler(cfg: &Config) -> Check {
    let check = Check::new("core.complement-euler", "complement-partitions-punctures-and-euler-sum");
    let mut rng = rng_for(cfg, &check.id);
    let cases: Vec<Vec<CurveKey>> = (0..60).map(|_| random_multicurve(rng.gen_range(5..=9), 3, &mut rng)).collect();
    let bad = cases.par_iter().find_map_first(|m| {
        let b = m[0].b();
        let comps = match complement_components(m) {
            Ok(c) => c,
            Err(e) => return Some(json!({"curves": m, "error": e.to_string()})),
        };
        let mut all: Vec<usize> = comps.iter().flat_map(|c| c.punctures.clone()).collect();
        all.sort();
        let euler: i64 = comps.iter().map(|c| 2 - c.punctures.len() as i64 - c.boundary_count as i64).sum();
        let by_sep = components_by_separation(m).map(|c| component_types(&c));
        let ok = all == (1..=b).collect::<Vec<_>>()
            && euler == 2 - b as i64
            && by_sep.as_ref().ok() == Some(&component_types(&comps));
        (!ok).then(|| json!({"curves": m}))
    });
    check.verdict(format!("{} random multicurves, both routes", cases.len()), bad)
}

fn filled_type(r: (ComplementComponent, Vec<CurveKey>)) -> (Vec<usize>, usize, Vec<CurveKey>) {
    let (c, mut boundary) = r;
    boundary.sort();
    (c.punctures, c.boundary_count, boundary)
}

pub fn filled_independent(cfg: &Config) -> Check {
    let check = Check::new("core.filled-independent", "filled-subsurface-independent-of-realization");
    let mut rng = rng_for(cfg, &check.id);
    let mut cases = Vec::new();
    while cases.len() < 12 {
        let b = rng.gen_range(6..=8);
        let (a, c) = (random_curve(b, 2, &mut rng), random_curve(b, 2, &mut rng));
        if intersection_number(&a, &c) > 0 {
            cases.push((a, c, rng.gen::<u64>()));
        }
    }
    let bad = cases.par_iter().find_map_first(|(a, c, seed)| {
        let mut r: rand_chacha::ChaCha8Rng = rand::SeedableRng::seed_from_u64(*seed);
        let base = filled_subsurface(a, c).map(filled_type);
        (0..3).find_map(|_| {
            let other = filled_subsurface_shuffled(a, c, &mut r).map(filled_type);
            (other != base).then(|| json!({"a": a, "c": c}))
        })
    });
    check.verdict(format!("{} crossing pairs, 3 shuffled realizations each", cases.len()), bad)
}
