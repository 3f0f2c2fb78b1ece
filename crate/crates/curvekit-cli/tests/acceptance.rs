//! Acceptance criteria 1 to 12. Prints one line per criterion and exits
//! non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use curvekit_cli::suites::{core, detectors, farey, rigidset, supports};
use curvekit_cli::{Check, Config, Status};

struct Outcome {
    ok: bool,
    detail: String,
}

/// All checks must pass.
fn all_pass(checks: &[Check]) -> Outcome {
    let ok = checks.iter().all(|c| c.status == Status::Pass);
    let detail = checks
        .iter()
        .map(|c| match c.status {
            Status::Pass => format!("{}: {}", c.id, c.detail),
            _ => format!("{} {:?}: {} {:?}", c.id, c.status, c.detail, c.reproducer),
        })
        .collect::<Vec<_>>()
        .join(" | ");
    Outcome { ok, detail }
}

fn run_checks(cfg: &Config, fns: &[fn(&Config) -> Check]) -> Vec<Check> {
    fns.iter().map(|f| f(cfg)).collect()
}

fn criterion_11(cfg: &Config) -> Outcome {
    let checks = run_checks(cfg, &[supports::nu_table, supports::shapes, supports::minambig, supports::euler]);
    let mut o = all_pass(&checks);
    if !checks[0].detail.contains("nu table 2,3,3,4,4,5 for b = 7..=12") {
        o.ok = false;
        o.detail = format!("unexpected nu table: {}", checks[0].detail);
    }
    o
}

fn files_under(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(dir).unwrap().display().to_string(), std::fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn criterion_12() -> Outcome {
    let root = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for k in 0..2 {
        let dir = root.path().join(format!("run{k}"));
        std::fs::create_dir(&dir).unwrap();
        let status = Command::new(env!("CARGO_BIN_EXE_curvekit"))
            .args(["verify", "all", "--seed", "1", "--report"])
            .arg(dir.join("report.json"))
            .output()
            .unwrap()
            .status;
        runs.push((status.code(), files_under(&dir)));
    }
    let same = runs[0].1 == runs[1].1;
    let files = runs[0].1.len();
    let bytes: usize = runs[0].1.iter().map(|f| f.1.len()).sum();
    Outcome {
        ok: same && files > 1,
        detail: format!(
            "two `verify all` runs: {files} files, {bytes} bytes, identical: {same}; exit codes {:?} and {:?}",
            runs[0].0, runs[1].0
        ),
    }
}

fn main() {
    let cfg = Config::default();
    type Criterion<'a> = (usize, &'a str, u64, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, "Farey edges in two triangles", 10, Box::new(|| all_pass(&[farey::two_triangles(&cfg)]))),
        (
            2,
            "engine round trip and intersection invariance",
            120,
            Box::new(|| all_pass(&run_checks(&cfg, &[core::canonical_keys, core::intersection_invariance]))),
        ),
        (
            3,
            "rigid set sizes, X_5 pentagon, in-X_b pentagon certificates",
            300,
            Box::new(|| {
                all_pass(&run_checks(
                    &cfg,
                    &[rigidset::vertex_counts, rigidset::x5_pentagon, rigidset::embedding, rigidset::pentagons],
                ))
            }),
        ),
        (4, "minimal-vertex links", 60, Box::new(|| all_pass(&[rigidset::minimal_links(&cfg)]))),
        (5, "half-twist characterization", 300, Box::new(|| all_pass(&[detectors::half_twists(&cfg)]))),
        (
            6,
            "separations of disjoint curves and under twists",
            120,
            Box::new(|| all_pass(&run_checks(&cfg, &[core::disjoint_nested, core::twist_separations]))),
        ),
        (7, "heptagons", 180, Box::new(|| all_pass(&[detectors::heptagons(&cfg)]))),
        (8, "octagon", 60, Box::new(|| all_pass(&[detectors::octagon(&cfg)]))),
        (9, "filled divisions", 300, Box::new(|| all_pass(&[detectors::filled_divisions(&cfg)]))),
        (10, "bizarre simplices", 60, Box::new(|| all_pass(&[detectors::bizarre(&cfg)]))),
        (11, "supports census", 300, Box::new(|| criterion_11(&cfg))),
        (12, "determinism of verify all", 600, Box::new(criterion_12)),
    ];
    let mut failed = 0;
    for (n, name, budget, f) in criteria {
        let t = Instant::now();
        let mut o = f();
        let elapsed = t.elapsed();
        if elapsed > Duration::from_secs(budget) {
            o.ok = false;
            o.detail = format!("over the {budget} s budget; {}", o.detail);
        }
        failed += !o.ok as usize;
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {tag} [{:.1} s] {name}: {}", elapsed.as_secs_f64(), o.detail);
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
