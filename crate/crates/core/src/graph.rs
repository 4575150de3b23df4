//! Presentation graphs.

use std::collections::HashMap;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::vset::{VertexSet, MAX_VERTICES};

/// A finite simplicial graph. Vertex order is the order of declaration and is
/// the tie-break order for every canonical form downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<VertexSet>,
}

pub(crate) fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn syntax(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::GraphSyntax { location: location.into(), message: message.into() }
}

impl Graph {
    /// Builds a graph from vertex names and edges given by name.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let vs: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let es: Vec<(String, String)> =
            edges.iter().map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string())).collect();
        Self::build(vs, es)
    }

    fn build(vertices: Vec<String>, edges: Vec<(String, String)>) -> Result<Graph> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(vertices.len()));
        }
        let mut index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            let location = format!("vertices[{i}]");
            if !valid_name(name) {
                return Err(Error::BadVertexName { name: name.clone(), location });
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex { name: name.clone(), location });
            }
        }
        let mut adj = vec![VertexSet::EMPTY; vertices.len()];
        for (k, (a, b)) in edges.iter().enumerate() {
            let lookup = |name: &String, end: usize| {
                index.get(name).copied().ok_or_else(|| Error::UndeclaredEndpoint {
                    name: name.clone(),
                    location: format!("edges[{k}][{end}]"),
                })
            };
            let (u, v) = (lookup(a, 0)?, lookup(b, 1)?);
            if u == v {
                return Err(Error::LoopEdge { name: a.clone(), location: format!("edges[{k}]") });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { names: vertices, index, adj })
    }

    /// Parses the JSON graph format `{"vertices": [...], "edges": [[a, b], ...]}`.
    pub fn load_graph(text: &str) -> Result<Graph> {
        let value: Value = serde_json::from_str(text).map_err(|e| syntax("input", e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| syntax("root", "expected an object"))?;
        let vertices = match obj.get("vertices") {
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.as_str().map(str::to_string).ok_or_else(|| syntax(format!("vertices[{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>>>()?,
            Some(_) => return Err(syntax("vertices", "expected an array")),
            None => return Err(syntax("root", "missing key \"vertices\"")),
        };
        let edges = match obj.get("edges") {
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(k, e)| match e.as_array().map(Vec::as_slice) {
                    Some([Value::String(a), Value::String(b)]) => Ok((a.clone(), b.clone())),
                    _ => Err(syntax(format!("edges[{k}]"), "expected a pair of vertex names")),
                })
                .collect::<Result<Vec<_>>>()?,
            Some(_) => return Err(syntax("edges", "expected an array")),
            None => return Err(syntax("root", "missing key \"edges\"")),
        };
        Self::build(vertices, edges)
    }

    pub fn to_json(&self) -> String {
        let edges: Vec<[&str; 2]> = self
            .edges()
            .into_iter()
            .map(|(u, v)| [self.names[u].as_str(), self.names[v].as_str()])
            .collect();
        serde_json::json!({ "vertices": self.names, "edges": edges }).to_string()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Edges as index pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    /// The vertex together with its neighbours.
    pub fn star(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    /// Neighbours of `v` inside `within`.
    pub fn link_in(&self, v: usize, within: VertexSet) -> VertexSet {
        self.adj[v].intersection(within)
    }

    /// Intersection of the stars of the members of `s`; all vertices when `s` is empty.
    pub fn star_set(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(self.all(), |acc, v| acc.intersection(self.star(v)))
    }

    /// Connectivity of the full subgraph on `s`. The empty set counts as connected.
    pub fn is_connected(&self, s: VertexSet) -> bool {
        let Some(start) = s.first() else { return true };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v].intersection(s));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen == s
    }

    /// Parses a comma- or whitespace-separated list of vertex names.
    pub fn parse_set(&self, text: &str) -> Result<VertexSet> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| self.vertex(t))
            .collect()
    }

    pub fn format_set(&self, s: VertexSet) -> String {
        s.iter().map(|v| self.names[v].as_str()).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path3() -> Graph {
        Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn loads_json() {
        let g = Graph::load_graph(r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#).unwrap();
        assert!(g.adjacent(0, 1));
        let f2 = Graph::load_graph(r#"{ "vertices": ["x","y"], "edges": [] }"#).unwrap();
        assert!(!f2.adjacent(0, 1));
        let empty = Graph::load_graph(r#"{"vertices":[],"edges":[]}"#).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn reports_errors_with_location() {
        let e = Graph::load_graph(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).unwrap_err();
        assert_eq!(e, Error::LoopEdge { name: "a".into(), location: "edges[0]".into() });
        let e = Graph::load_graph(r#"{"vertices":["a","b","a"],"edges":[]}"#).unwrap_err();
        assert_eq!(e, Error::DuplicateVertex { name: "a".into(), location: "vertices[2]".into() });
        let e = Graph::load_graph(r#"{"vertices":["a"],"edges":[["a","q"]]}"#).unwrap_err();
        assert_eq!(e, Error::UndeclaredEndpoint { name: "q".into(), location: "edges[0][1]".into() });
        let e = Graph::load_graph(r#"{"vertices":["1a"],"edges":[]}"#).unwrap_err();
        assert_eq!(e.code(), "bad_vertex_name");
        assert_eq!(Graph::load_graph("[]").unwrap_err().code(), "graph_syntax");
    }

    #[test]
    fn stars_and_connectivity() {
        let g = path3();
        assert_eq!(g.star(1), g.all());
        assert_eq!(g.star_set(g.parse_set("a,c").unwrap()), VertexSet::singleton(1));
        assert_eq!(g.star_set(VertexSet::EMPTY), g.all());
        assert!(!g.is_connected(g.parse_set("a,c").unwrap()));
        assert!(g.is_connected(g.all()));
        assert!(g.is_connected(VertexSet::EMPTY));
        let c4 = Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        assert!(c4.is_connected(c4.all()));
        let two = Graph::new::<&str>(&["a", "b"], &[]).unwrap();
        assert!(!two.is_connected(two.all()));
    }

    #[test]
    fn json_round_trip() {
        let g = path3();
        assert_eq!(Graph::load_graph(&g.to_json()).unwrap(), g);
    }
}
