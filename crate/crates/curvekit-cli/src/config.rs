use std::path::Path;

use anyhow::{Context, Result};
use curvekit::rigid::build_rigid_set;
use serde::{Deserialize, Serialize};

/// Knobs shared by all suites. Unset `b` and `window` fall back to the
/// defaults of each check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Upper end of the puncture range a suite sweeps.
    pub b: Option<usize>,
    /// Weight bound of enumerated curve windows.
    pub window: Option<u64>,
    /// Witnesses wanted on each side of a filled division.
    pub n_w: usize,
    pub max_den: i64,
    pub word_len: usize,
    pub samples: usize,
    pub seed: u64,
    /// Step bound of the triple-chain search.
    pub chain_bound: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { b: None, window: None, n_w: 10, max_den: 50, word_len: 20, samples: 500, seed: 1, chain_bound: 8 }
    }
}

/// Command-line values; each one set here beats the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub b: Option<usize>,
    pub window: Option<u64>,
    pub n_w: Option<usize>,
    pub max_den: Option<i64>,
    pub word_len: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub chain_bound: Option<usize>,
}

impl Config {
    /// Defaults, then the TOML file, then flags.
    pub fn load(file: Option<&Path>, flags: &Overrides) -> Result<Config> {
        let mut c = match file {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
            }
            None => Config::default(),
        };
        if flags.b.is_some() {
            c.b = flags.b;
        }
        if flags.window.is_some() {
            c.window = flags.window;
        }
        c.n_w = flags.n_w.unwrap_or(c.n_w);
        c.max_den = flags.max_den.unwrap_or(c.max_den);
        c.word_len = flags.word_len.unwrap_or(c.word_len);
        c.samples = flags.samples.unwrap_or(c.samples);
        c.seed = flags.seed.unwrap_or(c.seed);
        c.chain_bound = flags.chain_bound.unwrap_or(c.chain_bound);
        Ok(c)
    }

    pub fn window_or(&self, default: u64) -> u64 {
        self.window.unwrap_or(default)
    }
}

/// Twice the heaviest curve of `X_b`.
pub fn default_window(b: usize) -> u64 {
    let x = build_rigid_set(b).expect("rigid set for b >= 5");
    2 * x.curves.iter().map(|c| c.total_weight()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.toml");
        std::fs::write(&p, "seed = 9\nsamples = 40\nwindow = 30\n").unwrap();
        let flags = Overrides { seed: Some(3), ..Default::default() };
        let c = Config::load(Some(&p), &flags).unwrap();
        assert_eq!((c.seed, c.samples, c.window, c.n_w), (3, 40, Some(30), 10));
        std::fs::write(&p, "sead = 9\n").unwrap();
        assert!(Config::load(Some(&p), &Overrides::default()).is_err());
    }
}
