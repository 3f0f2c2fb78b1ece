//! Verification suites. Each check is a pure function of the config, so
//! checks run in parallel and the report comes out in declaration order.

use std::fmt;
use std::str::FromStr;

use curvekit::rigid::block_list;
use curvekit::{apply_word, block_curve, CurveKey, MappingWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::Config;
use crate::report::{Check, SuiteReport};

pub mod core;
pub mod detectors;
pub mod farey;
pub mod rigidset;
pub mod supports;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Farey,
    Rigidset,
    Detectors,
    Supports,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["core", "farey", "rigidset", "detectors", "supports", "all"];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Core, Suite::Farey, Suite::Rigidset, Suite::Detectors, Suite::Supports],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "core" => Suite::Core,
            "farey" => Suite::Farey,
            "rigidset" => Suite::Rigidset,
            "detectors" => Suite::Detectors,
            "supports" => Suite::Supports,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite `{s}`; expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::Core, Suite::Farey, Suite::Rigidset, Suite::Detectors, Suite::Supports, Suite::All]
            .iter()
            .position(|s| s == self)
            .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

pub type CheckFn = fn(&Config) -> Check;

pub fn checks(suite: Suite) -> Vec<CheckFn> {
    suite
        .parts()
        .into_iter()
        .flat_map(|s| match s {
            Suite::Core => core::CHECKS.to_vec(),
            Suite::Farey => farey::CHECKS.to_vec(),
            Suite::Rigidset => rigidset::CHECKS.to_vec(),
            Suite::Detectors => detectors::CHECKS.to_vec(),
            Suite::Supports => supports::CHECKS.to_vec(),
            Suite::All => unreachable!(),
        })
        .collect()
}

pub fn run_suite(suite: Suite, config: &Config) -> SuiteReport {
    let results: Vec<Check> = checks(suite).par_iter().map(|f| f(config)).collect();
    SuiteReport::new(&suite.to_string(), config, results)
}

/// A generator seeded from the config seed and the check id, so checks do
/// not share random streams.
pub fn rng_for(config: &Config, id: &str) -> ChaCha8Rng {
    let salt = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, x| (h ^ x as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(config.seed ^ salt)
}

/// Upper end of a suite's puncture range.
pub fn upper_b(config: &Config, default: usize, min: usize) -> usize {
    config.b.unwrap_or(default).max(min)
}

pub fn random_word(b: usize, max_len: usize, rng: &mut ChaCha8Rng) -> MappingWord {
    let len = rng.gen_range(0..=max_len);
    MappingWord::random(b, len, rng)
}

/// A random essential block curve moved by a random word.
pub fn random_curve(b: usize, max_len: usize, rng: &mut ChaCha8Rng) -> CurveKey {
    let blocks = block_list(b);
    let blk = &blocks[rng.gen_range(0..blocks.len())];
    apply_word(&random_word(b, max_len, rng), &block_curve(b, blk).expect("listed blocks are essential"))
}

/// Cyclic block of `len` punctures starting at `start`.
pub fn cyclic_block(b: usize, start: usize, len: usize) -> Vec<usize> {
    (0..len).map(|k| (start - 1 + k) % b + 1).collect()
}

pub fn key_json(c: &CurveKey) -> serde_json::Value {
    serde_json::to_value(c).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().to_string(), n);
        }
        assert!("cores".parse::<Suite>().is_err());
        assert_eq!(checks(Suite::All).len(), Suite::NAMES[..5].iter().map(|n| checks(n.parse().unwrap()).len()).sum::<usize>());
    }

    #[test]
    fn rng_streams_differ() {
        let c = Config::default();
        assert_ne!(rng_for(&c, "a").gen::<u64>(), rng_for(&c, "b").gen::<u64>());
        assert_eq!(rng_for(&c, "a").gen::<u64>(), rng_for(&c, "a").gen::<u64>());
    }
}
