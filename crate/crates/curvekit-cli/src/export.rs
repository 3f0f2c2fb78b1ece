//! Graph export in DOT or versioned JSON.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use curvekit::detectors::{heptagon_certificate, octagon_certificate};
use curvekit::farey::farey_ball;
use curvekit::graph::LabelledGraph;
use curvekit::rigid::build_rigid_set;
use curvekit::{block_curve, MappingWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}`; expected dot or json")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Object {
    RigidSet,
    FareyBall,
    Octagon,
    Heptagon,
}

impl FromStr for Object {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "rigid-set" => Object::RigidSet,
            "farey-ball" => Object::FareyBall,
            "octagon" => Object::Octagon,
            "heptagon" => Object::Heptagon,
            _ => return Err(format!("unknown object `{s}`; expected rigid-set, farey-ball, octagon or heptagon")),
        })
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Object::RigidSet => "rigid-set",
            Object::FareyBall => "farey-ball",
            Object::Octagon => "octagon",
            Object::Heptagon => "heptagon",
        })
    }
}

/// `b` selects the rigid set, `height` the Farey ball radius; the octagon
/// and heptagon have fixed puncture counts.
pub fn graph(object: Object, b: usize, height: i64) -> Result<LabelledGraph> {
    Ok(match object {
        Object::RigidSet => {
            if b < 5 {
                bail!("rigid sets need b >= 5, got {b}");
            }
            build_rigid_set(b)?.to_graph()
        }
        Object::FareyBall => farey_ball(height),
        Object::Octagon => octagon_certificate().to_graph(),
        Object::Heptagon => {
            let (a, c) = (block_curve(7, &[1, 2, 3])?, block_curve(7, &[2, 3, 4])?);
            heptagon_certificate(&a, &c, &MappingWord::identity())?.to_graph()
        }
    })
}

pub fn render(g: &LabelledGraph, format: Format) -> String {
    match format {
        Format::Dot => g.to_dot(),
        Format::Json => g.to_json(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let x7 = graph(Object::RigidSet, 7, 0).unwrap();
        assert_eq!(x7.nodes.len(), 14);
        assert_eq!(render(&x7, Format::Dot).matches("[label=").count(), 14);
        let o = graph(Object::Octagon, 0, 0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&render(&o, Format::Json)).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 8);
        assert_eq!(v["edges"].as_array().unwrap().len(), 12);
        assert_eq!(v["schema"], "curvekit.graph/1");
        assert_eq!(graph(Object::Heptagon, 0, 0).unwrap().edges.len(), 7);
        assert!("svg".parse::<Format>().is_err());
        assert!("pentagon".parse::<Object>().is_err());
        assert!(graph(Object::RigidSet, 4, 0).is_err());
    }
}
