//! Exact piecewise-linear ground truth for curves on `S_{0,b}`.
//!
//! Everything here works with rational coordinates in the plane, puncture
//! `b` being the point at infinity. The engine is deliberately slow and
//! direct; the fast routines in [`crate::topology`] and
//! [`crate::intersection`] are tested against it.

pub mod arrangement;
pub mod complement;
pub mod extract;
pub mod geom;
pub mod realize;
pub mod svg;
pub mod tauten;
pub mod twist;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::key::CurveKey;
use crate::triangulation::Triangulation;
use geom::Point;
use realize::{Layout, System};

pub use complement::{complement_components, filled_subsurface, filled_subsurface_shuffled, ComplementComponent};
pub use tauten::{engine_intersection_number, tauten};
pub use twist::{apply_generator_engine, apply_word_engine};

/// Closed polygonal curves in the plane with punctures at `(i, 0)` for
/// `1 <= i < b` and puncture `b` at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PLConfiguration {
    pub b: usize,
    pub curves: Vec<Vec<Point>>,
}

impl PLConfiguration {
    pub fn punctures(&self) -> Vec<Point> {
        (1..self.b as i64).map(|i| Point::int(i, 0)).collect()
    }

    /// Vertex-list dump.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// A tautened representative of a curve.
pub fn realize(k: &CurveKey) -> Result<PLConfiguration> {
    realize_weights(k.b(), k.weights())
}

/// Realizes a normal multicurve given by raw weights.
pub fn realize_weights(b: usize, weights: &[u64]) -> Result<PLConfiguration> {
    if b < 4 {
        return Err(Error::Unsupported(format!("b = {b} < 4")));
    }
    let tri = Triangulation::new(b);
    if weights.len() != tri.edge_count() {
        return Err(Error::MalformedKey(format!("expected {} weights", tri.edge_count())));
    }
    let sys = System::new(&tri, weights)?;
    let r = Layout::stacked(tri, vec![sys]).realize();
    Ok(PLConfiguration { b, curves: r.polygons })
}

/// The key of a configuration holding a single curve.
pub fn extract_key(cfg: &PLConfiguration) -> Result<CurveKey> {
    match cfg.curves.len() {
        0 => Err(Error::Inessential("empty configuration".into())),
        1 => extract::polygon_key(cfg.b, &cfg.curves[0], true),
        n => Err(Error::SingleCurveExpected(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{block_curve, enumerate_curves};

    #[test]
    fn round_trip_small() {
        for b in [4, 5, 6] {
            for k in enumerate_curves(b, 12) {
                let cfg = realize(&k).unwrap();
                assert_eq!(cfg.curves.len(), 1);
                assert_eq!(extract_key(&cfg).unwrap(), k, "b={b}");
            }
        }
    }

    #[test]
    fn block_fixtures() {
        // frozen normal coordinates of standard block curves
        let b = 7;
        assert_eq!(block_curve(b, &[1, 2]).unwrap().weights(), &[0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(
            block_curve(b, &[2, 3, 4]).unwrap().weights(),
            &[1, 0, 0, 1, 0, 0, 1, 1, 1, 0, 0, 1, 1, 1, 0]
        );
        let k = block_curve(b, &[2, 3, 4]).unwrap();
        let cfg = realize(&k).unwrap();
        assert_eq!(extract_key(&cfg).unwrap(), k);
    }

    #[test]
    fn malformed_and_empty() {
        let tri = Triangulation::new(5);
        let mut w = vec![0u64; tri.edge_count()];
        w[0] = 1;
        assert!(matches!(realize_weights(5, &w), Err(Error::MalformedKey(_))));
        let empty = PLConfiguration { b: 5, curves: vec![] };
        assert!(extract_key(&empty).is_err());
    }
}
