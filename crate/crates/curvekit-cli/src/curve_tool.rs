//! JSON front end to the curve operations.
//!
//! A curve is either a key `{"b": 7, "weights": [..]}` or a block
//! `{"b": 7, "block": [1, 2, 3]}`. A word is a list of `["H", i, sign]`
//! triples or of signed generator indices such as `[1, -3]`.

use anyhow::{anyhow, bail, Result};
use curvekit::{apply_word, block_curve, classify, intersection_number, separation, CurveKey, MappingWord};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Deserialize)]
#[serde(untagged)]
enum CurveInput {
    Key { b: usize, weights: Vec<u64> },
    Block { b: usize, block: Vec<usize> },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WordInput {
    Signed(Vec<i64>),
    Triples(MappingWord),
}

/// Parses JSON text, reporting syntax errors with line and column.
fn parse_json(what: &str, text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| anyhow!("parse error in {what} at line {}, column {}: {e}", e.line(), e.column()))
}

pub fn parse_curve(text: &str) -> Result<CurveKey> {
    let v = parse_json("curve", text)?;
    let input: CurveInput = serde_json::from_value(v)
        .map_err(|_| anyhow!("curve must be {{\"b\", \"weights\"}} or {{\"b\", \"block\"}}"))?;
    Ok(match input {
        CurveInput::Key { b, weights } => CurveKey::new(b, weights)?,
        CurveInput::Block { b, block } => block_curve(b, &block)?,
    })
}

pub fn parse_word(text: &str) -> Result<MappingWord> {
    let v = parse_json("word", text)?;
    let input: WordInput = serde_json::from_value(v)
        .map_err(|e| anyhow!("word must be a list of [\"H\", index, sign] triples or signed indices: {e}"))?;
    Ok(match input {
        WordInput::Signed(s) => MappingWord::from_signed(&s)?,
        WordInput::Triples(w) => w,
    })
}

/// Reads `@path` arguments from disk and passes other text through.
pub fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(p) => std::fs::read_to_string(p).map_err(|e| anyhow!("reading {p}: {e}")),
        None => Ok(arg.to_string()),
    }
}

fn same_b(a: &CurveKey, c: &CurveKey) -> Result<()> {
    if a.b() != c.b() {
        bail!("curves live on different spheres: b = {} and b = {}", a.b(), c.b());
    }
    Ok(())
}

pub fn intersect(a: &str, c: &str) -> Result<Value> {
    let (a, c) = (parse_curve(a)?, parse_curve(c)?);
    same_b(&a, &c)?;
    Ok(json!({"intersection": intersection_number(&a, &c)}))
}

pub fn separation_of(a: &str) -> Result<Value> {
    let s = separation(&parse_curve(a)?);
    Ok(json!({"b": s.b(), "sides": s.sides()}))
}

pub fn classify_curve(a: &str) -> Result<Value> {
    let c = classify(&parse_curve(a)?);
    let label = if c.minimal {
        "minimal"
    } else if c.one_separating {
        "one-separating"
    } else {
        "strongly-separating"
    };
    Ok(json!({"class": label, "sizes": [c.s1, c.s2], "minimal": c.minimal,
        "one_separating": c.one_separating, "strongly_separating": c.strongly_separating}))
}

pub fn apply(word: &str, a: &str) -> Result<Value> {
    let (w, c) = (parse_word(word)?, parse_curve(a)?);
    w.check(c.b())?;
    Ok(serde_json::to_value(apply_word(&w, &c))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let i = intersect(r#"{"b":7,"block":[1,2,3]}"#, r#"{"b":7,"block":[2,3,4]}"#).unwrap();
        assert_eq!(i["intersection"], 2);
        assert_eq!(classify_curve(r#"{"b":7,"block":[1,2]}"#).unwrap()["class"], "minimal");
        let k = serde_json::to_string(&block_curve(7, &[2, 3, 4]).unwrap()).unwrap();
        let same: CurveKey = serde_json::from_value(apply("[]", &k).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&same).unwrap(), k);
        let w = r#"[["H", 1, 1], ["H", 1, 1]]"#;
        assert_eq!(apply(w, r#"{"b":6,"block":[1,2]}"#).unwrap(), apply("[1, 1]", r#"{"b":6,"block":[1,2]}"#).unwrap());
        assert_eq!(separation_of(r#"{"b":6,"block":[2,3]}"#).unwrap()["sides"][1], json!([2, 3]));
    }

    #[test]
    fn errors() {
        let e = parse_curve("{\"b\": 7,\n \"block\": [1, 2,]}").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        assert!(parse_curve(r#"{"b":7,"weights":[1]}"#).is_err());
        assert!(parse_curve(r#"{"b":7}"#).is_err());
        assert!(apply("[9]", r#"{"b":7,"block":[1,2]}"#).is_err());
        assert!(intersect(r#"{"b":7,"block":[1,2]}"#, r#"{"b":6,"block":[1,2]}"#).is_err());
    }
}
