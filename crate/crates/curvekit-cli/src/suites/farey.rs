//! The Farey graph and its identification with links of facets.

use curvekit::farey::{
    adjacent, edge_triangle_violations, half_twist_on_slope, link_as_farey, slopes_up_to, triangles_on_edge,
    LinkFrame, Slope,
};
use curvekit::{apply_word, MappingWord};
use rand::Rng;
use serde_json::json;

use super::{random_word, rng_for, CheckFn};
use crate::config::Config;
use crate::report::Check;

pub const CHECKS: &[CheckFn] = &[two_triangles, common_neighbours, twist_orbits, link_identification];

pub fn two_triangles(cfg: &Config) -> Check {
    let check = Check::new("farey.two-triangles", "edges-in-two-triangles");
    let (edges, bad) = edge_triangle_violations(cfg.max_den);
    let detail = format!("edges-in-two-triangles: {bad} violations over {edges} edges with |p|,|q| <= {}", cfg.max_den);
    if bad == 0 {
        check.pass(detail)
    } else {
        check.fail(detail, json!({"max_den": cfg.max_den, "violations": bad}))
    }
}

/// Brute force over a slope universe holding every mediant of the edges
/// checked: adjacent slopes have exactly the two common neighbours that
/// close their triangles.
pub fn common_neighbours(_cfg: &Config) -> Check {
    let check = Check::new("farey.common-neighbours", "adjacent-slopes-have-two-common-neighbours");
    let edge_h = 6;
    let universe = slopes_up_to(2 * edge_h);
    let small: Vec<Slope> = universe.iter().copied().filter(|s| s.height() <= edge_h).collect();
    let mut count = 0;
    for (x, &s) in small.iter().enumerate() {
        for &t in &small[x + 1..] {
            if !adjacent(s, t) {
                continue;
            }
            count += 1;
            let mut common: Vec<Slope> = universe.iter().copied().filter(|&r| adjacent(r, s) && adjacent(r, t)).collect();
            common.sort();
            let mut tri = triangles_on_edge(s, t).map(|v| v.to_vec()).unwrap_or_default();
            tri.sort();
            if common.len() != 2 || common != tri {
                return check.fail(
                    "wrong common neighbours",
                    json!({"edge": [s.to_string(), t.to_string()], "common": common.iter().map(|r| r.to_string()).collect::<Vec<_>>()}),
                );
            }
        }
    }
    check.pass(format!("{count} edges with slopes of height <= {edge_h}"))
}

/// Walking the triangles around `beta` from the edge `(alpha, beta)` meets
/// only half-twist images `H_beta^k(alpha)` with `|k|` at most the walk
/// length.
pub fn twist_orbits(cfg: &Config) -> Check {
    let check = Check::new("farey.twist-orbits", "triangles-around-a-slope-are-half-twist-orbit");
    let mut rng = rng_for(cfg, &check.id);
    let slopes = slopes_up_to(cfg.max_den.min(20));
    let steps = 10;
    let mut edges = 0;
    while edges < 100 {
        let beta = slopes[rng.gen_range(0..slopes.len())];
        let nbrs: Vec<Slope> = slopes.iter().copied().filter(|&a| adjacent(a, beta)).collect();
        if nbrs.is_empty() {
            continue;
        }
        let alpha = nbrs[rng.gen_range(0..nbrs.len())];
        edges += 1;
        for dir in 0..2 {
            let (mut prev, mut cur) = (alpha, triangles_on_edge(alpha, beta).unwrap()[dir]);
            for step in 1..=steps {
                let in_orbit = (-(step as i64)..=step as i64).any(|k| half_twist_on_slope(beta, k, alpha) == cur);
                if !in_orbit {
                    return check.fail(
                        "walk left the half-twist orbit",
                        json!({"alpha": alpha.to_string(), "beta": beta.to_string(), "slope": cur.to_string(), "step": step}),
                    );
                }
                let [x, y] = triangles_on_edge(cur, beta).unwrap();
                let next = if x == prev { y } else { x };
                (prev, cur) = (cur, next);
            }
        }
    }
    check.pass(format!("{edges} edges, walks of {steps} triangles both ways"))
}

/// Half twists computed on curves agree with half twists on slopes, for
/// standard and transported frames.
pub fn link_identification(cfg: &Config) -> Check {
    let check = Check::new("farey.link-identification", "link-of-facet-is-farey-graph");
    let mut rng = rng_for(cfg, &check.id);
    let h = MappingWord::generator(3, 1);
    let mut cases = 0;
    for b in 5..=8 {
        let f = match LinkFrame::standard(b) {
            Ok(f) => f,
            Err(e) => return Check::errored(&check.id, &check.anchor, e),
        };
        let lam = link_as_farey(&f, &f.lambda).unwrap();
        for _ in 0..5 {
            let w = random_word(b, 4, &mut rng);
            let g = f.transported(&w);
            for (start, slope) in [(&f.mu, Slope::new(0, 1).unwrap()), (&f.nu, Slope::new(1, 1).unwrap())] {
                for k in -3i64..=3 {
                    let c = apply_word(&w, &apply_word(&h.pow(k), start));
                    cases += 1;
                    match link_as_farey(&g, &c) {
                        Ok(s) if s == half_twist_on_slope(lam, k, slope) => {}
                        other => {
                            return check.fail(
                                "curve and slope twists disagree",
                                json!({"b": b, "word": w, "k": k, "got": format!("{other:?}")}),
                            )
                        }
                    }
                }
            }
        }
    }
    check.pass(format!("{cases} twisted curves through transported frames, b = 5..8"))
}
