//! Curves on punctured spheres: canonical keys, exact piecewise-linear
//! realizations, the Farey model of four-holed spheres, the finite rigid
//! sets `X_b`, combinatorial detectors and subsurface support enumeration.

pub mod detectors;
pub mod engine;
pub mod error;
pub mod farey;
pub mod graph;
pub mod intersection;
pub mod key;
pub mod mapping;
pub mod rigid;
pub mod supports;
pub mod topology;
pub mod triangulation;
pub mod word;

pub use error::{Error, Result};
pub use intersection::intersection_number;
pub use key::{CurveClass, CurveKey, PunctureSeparation};
pub use mapping::{Generator, MappingWord};
pub use topology::{
    apply_word, block_curve, classify, curves_equal, enumerate_curves, half_twist_word, nested_separations,
    separates, separation,
};
pub use triangulation::{Cell, Edge, Triangulation};
