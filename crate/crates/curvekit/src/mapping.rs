//! Words in the half-twist generators `H_1 .. H_{b-1}`.
//!
//! `H_i` is the positive half twist about the standard minimal curve around
//! punctures `{i, i+1}`; `H_{b-1}` encloses `{b-1, b}`. A word `l_1 l_2 .. l_n`
//! acts as the composition `l_1 ∘ l_2 ∘ .. ∘ l_n`, so its last letter acts
//! first.

use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub index: usize,
    pub sign: i8,
}

impl Generator {
    pub fn inverse(self) -> Self {
        Generator { index: self.index, sign: -self.sign }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MappingWord {
    letters: Vec<Generator>,
}

impl MappingWord {
    pub fn identity() -> Self {
        MappingWord::default()
    }

    pub fn new(letters: Vec<Generator>) -> Result<Self> {
        if let Some(g) = letters.iter().find(|g| g.index == 0 || (g.sign != 1 && g.sign != -1)) {
            return Err(Error::Parse(format!("bad generator H{} sign {}", g.index, g.sign)));
        }
        Ok(MappingWord { letters })
    }

    /// Builds a word from signed indices: `2` is `H_2`, `-2` is `H_2^-1`.
    pub fn from_signed(letters: &[i64]) -> Result<Self> {
        MappingWord::new(
            letters
                .iter()
                .map(|&l| Generator { index: l.unsigned_abs() as usize, sign: l.signum() as i8 })
                .collect(),
        )
    }

    pub fn generator(index: usize, sign: i8) -> Self {
        MappingWord { letters: vec![Generator { index, sign }] }
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|g| g.index).max().unwrap_or(0)
    }

    /// Checks every generator index against `1..b-1`.
    pub fn check(&self, b: usize) -> Result<()> {
        match self.letters.iter().find(|g| g.index >= b) {
            Some(g) => Err(Error::Precondition(format!("generator H{} needs b > {}", g.index, g.index))),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> Self {
        MappingWord { letters: self.letters.iter().rev().map(|g| g.inverse()).collect() }
    }

    /// The product `self · other`, which applies `other` first.
    pub fn then_after(&self, other: &MappingWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        MappingWord { letters }
    }

    pub fn product(words: &[&MappingWord]) -> Self {
        let mut letters = Vec::new();
        for w in words {
            letters.extend_from_slice(&w.letters);
        }
        MappingWord { letters }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        MappingWord { letters }
    }

    /// Conjugate `self · inner · self^-1`.
    pub fn conjugate(&self, inner: &MappingWord) -> Self {
        MappingWord::product(&[self, inner, &self.inverse()])
    }

    /// A uniformly random word of length `len` in the generators of `S_{0,b}`.
    pub fn random<R: rand::Rng>(b: usize, len: usize, rng: &mut R) -> Self {
        let letters = (0..len)
            .map(|_| Generator { index: rng.gen_range(1..b), sign: if rng.gen_bool(0.5) { 1 } else { -1 } })
            .collect();
        MappingWord { letters }
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Generator> = Vec::new();
        for &g in &self.letters {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        MappingWord { letters: out }
    }
}

impl fmt::Display for MappingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|g| if g.sign > 0 { format!("H{}", g.index) } else { format!("H{}^-1", g.index) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for MappingWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.letters.len()))?;
        for g in &self.letters {
            seq.serialize_element(&("H", g.index, g.sign))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for MappingWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = MappingWord;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of [\"H\", index, sign] triples")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<MappingWord, A::Error> {
                let mut letters = Vec::new();
                while let Some((tag, index, sign)) = seq.next_element::<(String, usize, i8)>()? {
                    if tag != "H" {
                        return Err(de::Error::custom(format!("unknown generator tag {tag:?}")));
                    }
                    letters.push(Generator { index, sign });
                }
                MappingWord::new(letters).map_err(de::Error::custom)
            }
        }
        d.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let w = MappingWord::from_signed(&[1, -3]).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"[["H",1,1],["H",3,-1]]"#);
        let back: MappingWord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<MappingWord>(r#"[["T",1,1]]"#).is_err());
        assert!(serde_json::from_str::<MappingWord>(r#"[["H",1,2]]"#).is_err());
    }

    #[test]
    fn inverse_and_reduce() {
        let w = MappingWord::from_signed(&[1, 2, -1]).unwrap();
        assert!(w.then_after(&w.inverse()).free_reduce().is_empty());
        assert_eq!(w.pow(2).len(), 6);
        assert_eq!(w.pow(-1), w.inverse());
    }
}
