//! Type-level census of complete support sets.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock};

use curvekit::supports::{
    census, classify_support, completions_included, completions_of, config_tree, split, Census, Support, SupportType,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{upper_b, CheckFn};
use crate::config::Config;
use crate::report::Check;

pub const CHECKS: &[CheckFn] = &[nu_table, shapes, minambig, euler, split_model, witnesses];

type Cached = Arc<Result<Census, String>>;

/// Census per `b`, computed once per process.
fn census_for(b: usize) -> Cached {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<OnceLock<Cached>>>>> = OnceLock::new();
    let slot = CACHE.get_or_init(Default::default).lock().unwrap().entry(b).or_default().clone();
    slot.get_or_init(|| Arc::new(census(b).map_err(|e| e.to_string()))).clone()
}

fn b_range(cfg: &Config) -> std::ops::RangeInclusive<usize> {
    7..=upper_b(cfg, 12, 7)
}

/// Censuses for the configured range, or the first error.
fn all_censuses(cfg: &Config) -> Result<Vec<Cached>, (String, Value)> {
    let list: Vec<Cached> = b_range(cfg).collect::<Vec<_>>().into_par_iter().map(census_for).collect();
    for (b, c) in b_range(cfg).zip(&list) {
        if let Err(e) = c.as_ref() {
            return Err((format!("b={b}: {e}"), json!({"b": b})));
        }
    }
    Ok(list)
}

macro_rules! censuses {
    ($cfg:expr, $check:expr) => {
        match all_censuses($cfg) {
            Ok(l) => l,
            Err((detail, rep)) => return $check.fail(detail, rep),
        }
    };
}

fn get(c: &Cached) -> &Census {
    c.as_ref().as_ref().expect("checked by all_censuses")
}

pub fn nu_table(cfg: &Config) -> Check {
    let check = Check::new("supports.nu", "max-disjoint-supports-three-routes");
    let list = censuses!(cfg, check);
    let mut table = Vec::new();
    let mut certs = Vec::new();
    for c in list.iter().map(get) {
        table.push(c.nu.to_string());
        let mut cert = c.to_json();
        cert["csv"] = json!(c.to_csv());
        certs.push(cert);
        let expected = (c.b - 2) / 2;
        if c.nu != expected || c.nu_by_compositions != c.nu || c.nu_by_pants != c.nu || !c.pants_route_agrees {
            return check.fail(
                format!("b={}: nu = {} (compositions {}, pants {})", c.b, c.nu, c.nu_by_compositions, c.nu_by_pants),
                json!({"b": c.b, "pants_route_agrees": c.pants_route_agrees}),
            );
        }
    }
    let r = b_range(cfg);
    check
        .with_certificate(json!(certs))
        .pass(format!("nu table {} for b = {}..={}; tree, pants and composition routes agree", table.join(","), r.start(), r.end()))
}

pub fn shapes(cfg: &Config) -> Check {
    let check = Check::new("supports.shapes", "complete-set-supports-have-listed-shapes");
    let list = censuses!(cfg, check);
    let mut count = 0;
    for c in list.iter().map(get) {
        count += c.hinge_supports.len();
        if !c.shape_violations.is_empty() {
            let v: Vec<String> = c.shape_violations.iter().map(|s| s.to_string()).collect();
            return check.fail(format!("b={}: supports outside the shape list", c.b), json!({"b": c.b, "supports": v}));
        }
    }
    check.pass(format!("{count} support types, all within the shape list"))
}

pub fn minambig(cfg: &Config) -> Check {
    let check = Check::new("supports.minambig", "hinge-minimality-and-ambiguity");
    let list = censuses!(cfg, check);
    let mut rows = Vec::new();
    for c in list.iter().map(get) {
        let minimal = c.hinge_supports.iter().filter(|h| h.minimal).count();
        rows.push(format!("b={}: {minimal}/{} minimal", c.b, c.hinge_supports.len()));
        if !c.minambig_holds {
            return check.fail(format!("b={}: classification differs", c.b), json!(c.hinge_supports));
        }
    }
    check.pass(format!(
        "odd b: minimal iff unambiguous four-holed; even b: all minimal and unambiguous ({})",
        rows.join(", ")
    ))
}

pub fn euler(cfg: &Config) -> Check {
    let check = Check::new("supports.euler", "configuration-tree-euler-sum");
    let list = censuses!(cfg, check);
    let mut trees = 0;
    for c in list.iter().map(get) {
        for t in &c.complete_types {
            trees += 1;
            if t.tree.validate().is_err() || t.tree.euler_sum() != 2 - c.b as i64 {
                return check.fail(format!("b={}: bad tree", c.b), json!({"b": c.b, "tree": t.canonical}));
            }
        }
    }
    check.pass(format!("{trees} configuration trees sum to 2 - b"))
}

/// Brute force over labelled supports on `S_7` and `S_8`, checked against
/// the type-level classification.
pub fn split_model(_cfg: &Config) -> Check {
    let check = Check::new("supports.split-model", "labelled-brute-force-matches-types");
    for b in [7, 8] {
        let all = split::all_supports(b);
        let nu = split::nu(&all);
        let c = census_for(b);
        let Ok(c) = c.as_ref() else { return Check::errored(&check.id, &check.anchor, "census failed") };
        if nu != c.nu {
            return check.fail(format!("b={b}: brute-force nu = {nu}"), json!({"b": b}));
        }
        let hinges: Vec<&Support> = all.iter().filter(|u| !split::completions(&all, u, nu).is_empty()).collect();
        let types: BTreeSet<SupportType> = hinges.iter().map(|u| u.support_type()).collect();
        let expected: BTreeSet<SupportType> = c.hinge_supports.iter().map(|h| h.support.clone()).collect();
        if types != expected {
            return check.fail(format!("b={b}: hinge types differ"), json!({"b": b}));
        }
        for t in &types {
            let rep = t.representative();
            let compl = split::completions(&all, &rep, nu);
            let (mut minimal, mut unambiguous) = (true, true);
            for v in &hinges {
                let included = compl.iter().all(|f| f.iter().all(|&i| all[i].disjoint(v)));
                if included != completions_included(&rep, v) {
                    return check.fail(format!("b={b}: inclusion of completions differs"), json!({"u": t, "v": v}));
                }
                if included {
                    let back = split::completions(&all, v, nu).iter().all(|f| f.iter().all(|&i| all[i].disjoint(&rep)));
                    minimal &= back;
                    unambiguous &= !back || **v == rep;
                }
            }
            let cl = match classify_support(t) {
                Ok(cl) => cl,
                Err(e) => return Check::errored(&check.id, &check.anchor, e),
            };
            let same_types = split::completion_types(&all, &rep, nu).ok() == Some(completions_of(t));
            if (cl.minimal, cl.unambiguous) != (minimal, unambiguous) || !same_types {
                return check.fail(format!("b={b}: classification of {t} differs"), json!({"support": t}));
            }
        }
    }
    check.pass("labelled supports on S_7 and S_8 reproduce nu, hinge types, classification and completions")
}

/// Witness multicurves of each complete type cut the sphere into that type.
pub fn witnesses(cfg: &Config) -> Check {
    let check = Check::new("supports.witnesses", "complete-types-are-realized-by-curves");
    let top = upper_b(cfg, 12, 7).min(10);
    let mut count = 0;
    for b in 7..=top {
        let c = census_for(b);
        let Ok(c) = c.as_ref() else { return Check::errored(&check.id, &check.anchor, "census failed") };
        let bad = c.complete_types.par_iter().find_map_first(|t| {
            let got = t.tree.witness().and_then(|w| config_tree(b, &w)).map(|tr| tr.canonical());
            (got.as_ref().ok() != Some(&t.canonical)).then(|| json!({"b": b, "type": t.canonical, "got": format!("{got:?}")}))
        });
        if let Some(rep) = bad {
            return check.fail("witness realizes another type", rep);
        }
        count += c.complete_types.len();
    }
    check.pass(format!("{count} complete types realized by block curves and re-read through the engine, b = 7..={top}"))
}
