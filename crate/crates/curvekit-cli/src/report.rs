use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use crate::config::Config;

pub const REPORT_SCHEMA: &str = "curvekit.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// Nothing refuted, but the window or bound was too small to decide.
    UnresolvedWithinWindow,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    /// Slug of the property the check exercises.
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    /// Smallest failing input found, present iff the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<Value>,
    /// File name of the certificate, relative to the certificate directory.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip)]
    pub certificate: Option<Value>,
}

impl Check {
    pub fn new(id: &str, anchor: &str) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            detail: String::new(),
            reproducer: None,
            witness: None,
            certificate: None,
        }
    }

    pub fn pass(mut self, detail: impl Into<String>) -> Self {
        self.status = Status::Pass;
        self.detail = detail.into();
        self
    }

    pub fn fail(mut self, detail: impl Into<String>, reproducer: Value) -> Self {
        self.status = Status::Fail;
        self.detail = detail.into();
        self.reproducer = Some(reproducer);
        self
    }

    pub fn unresolved(mut self, detail: impl Into<String>) -> Self {
        self.status = Status::UnresolvedWithinWindow;
        self.detail = detail.into();
        self
    }

    /// Passes when `failure` is `None`.
    pub fn verdict(self, detail: impl Into<String>, failure: Option<Value>) -> Self {
        match failure {
            None => self.pass(detail),
            Some(r) => self.fail(detail, r),
        }
    }

    pub fn with_certificate(mut self, cert: Value) -> Self {
        self.witness = Some(format!("{}.json", self.id));
        self.certificate = Some(cert);
        self
    }

    /// A check that could not run because a library call errored.
    pub fn errored(id: &str, anchor: &str, err: impl std::fmt::Display) -> Self {
        Check::new(id, anchor).fail(format!("error: {err}"), Value::String(err.to_string()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub unresolved: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub config: Config,
    pub checks: Vec<Check>,
    pub totals: Totals,
}

impl SuiteReport {
    pub fn new(suite: &str, config: &Config, checks: Vec<Check>) -> Self {
        let mut totals = Totals::default();
        for c in &checks {
            match c.status {
                Status::Pass => totals.pass += 1,
                Status::Fail => totals.fail += 1,
                Status::UnresolvedWithinWindow => totals.unresolved += 1,
            }
        }
        SuiteReport { schema: REPORT_SCHEMA, suite: suite.into(), config: config.clone(), checks, totals }
    }

    /// Worst status over all checks.
    pub fn status(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    /// 0 when everything passed, 2 when only unresolved checks remain, 1 on
    /// any failure.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::UnresolvedWithinWindow => 2,
            Status::Fail => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::UnresolvedWithinWindow => "UNRESOLVED",
            };
            s.push_str(&format!("{tag:<10} {:<36} {}\n", c.id, c.detail));
        }
        let t = &self.totals;
        s.push_str(&format!("{}: {} pass, {} fail, {} unresolved\n", self.suite, t.pass, t.fail, t.unresolved));
        s
    }

    pub fn certificates(&self) -> BTreeMap<&str, &Value> {
        self.checks.iter().filter_map(|c| Some((c.witness.as_deref()?, c.certificate.as_ref()?))).collect()
    }

    /// Writes the report to `path` and certificates to `<stem>.certs/`
    /// next to it.
    pub fn write(&self, path: &Path) -> Result<()> {
        let certs = self.certificates();
        if !certs.is_empty() {
            let dir = cert_dir(path);
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, v) in certs {
                let text = serde_json::to_string_pretty(v)? + "\n";
                write_atomic(&dir.join(name), text.as_bytes())?;
            }
        }
        write_atomic(path, self.to_json().as_bytes())
    }
}

pub fn cert_dir(report: &Path) -> PathBuf {
    let stem = report.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    report.with_file_name(format!("{stem}.certs"))
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("temp file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_and_files() {
        let cfg = Config::default();
        let ok = Check::new("a", "x").pass("fine");
        let open = Check::new("b", "y").unresolved("window");
        let bad = Check::new("c", "z").fail("broken", serde_json::json!([1, 2]));
        assert_eq!(SuiteReport::new("s", &cfg, vec![ok.clone()]).exit_code(), 0);
        assert_eq!(SuiteReport::new("s", &cfg, vec![ok.clone(), open.clone()]).exit_code(), 2);
        let r = SuiteReport::new("s", &cfg, vec![ok, open, bad.with_certificate(serde_json::json!({"k": 1}))]);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.totals, Totals { pass: 1, fail: 1, unresolved: 1 });
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][1]["status"], "unresolved-within-window");
        assert_eq!(v["checks"][2]["reproducer"][1], 2);
        assert!(v["checks"][0].get("reproducer").is_none());

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        r.write(&path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), r.to_json());
        let cert = std::fs::read_to_string(dir.path().join("out.certs").join("c.json")).unwrap();
        assert!(cert.contains("\"k\": 1"));
    }
}
