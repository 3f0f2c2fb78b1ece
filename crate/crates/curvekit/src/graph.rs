//! Small labelled graphs with deterministic DOT and JSON serialization.

use std::fmt::Write;

use serde::Serialize;

pub const GRAPH_SCHEMA: &str = "curvekit.graph/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: usize,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelledGraph {
    pub schema: &'static str,
    pub name: String,
    pub nodes: Vec<Node>,
    pub edges: Vec<(usize, usize)>,
}

impl LabelledGraph {
    pub fn new(name: impl Into<String>) -> Self {
        LabelledGraph { schema: GRAPH_SCHEMA, name: name.into(), nodes: Vec::new(), edges: Vec::new() }
    }

    pub fn add_node(&mut self, label: impl Into<String>, weights: Option<Vec<u64>>) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node { id, label: label.into(), weights });
        id
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a.min(b), a.max(b)));
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.nodes.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "graph \"{}\" {{", self.name).unwrap();
        for n in &self.nodes {
            writeln!(s, "  n{} [label=\"{}\"];", n.id, n.label.replace('"', "\\\"")).unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(s, "  n{a} -- n{b};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_and_json() {
        let mut g = LabelledGraph::new("t");
        let a = g.add_node("a", None);
        let b = g.add_node("b \"q\"", Some(vec![1, 2]));
        g.add_edge(b, a);
        assert_eq!(g.edges, vec![(0, 1)]);
        assert!(g.to_dot().contains("n0 -- n1;"));
        assert!(g.to_dot().contains("b \\\"q\\\""));
        let v: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(v["nodes"][1]["weights"][1], 2);
        assert!(v["nodes"][0].get("weights").is_none());
    }
}
