use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::map::{is_identifier, EmbeddedMap};

/// An abstract multigraph (loops and parallel edges allowed) with named
/// vertices and no embedding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    pub fn with_vertices<I, S>(names: I) -> Graph
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Graph { names: names.into_iter().map(Into::into).collect(), edges: Vec::new() }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u < self.names.len() && v < self.names.len(), "edge endpoint out of range");
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degrees, counting a loop twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.names.len()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        let n = self.names.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The underlying graph of an embedded map.
    pub fn from_map(m: &EmbeddedMap) -> Graph {
        Graph {
            names: m.vertex_names().to_vec(),
            edges: (0..m.edge_count()).map(|e| m.edge_ends(e)).collect(),
        }
    }

    /// Parses the edge-list format: an optional `graph 1` header, then
    /// `vertex <id>` and `edge <id> <id>` lines. Vertices named only by edges
    /// are created on first use.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut lookup = |g: &mut Graph, name: &str, line: usize| -> Result<usize> {
            if !is_identifier(name) {
                return Err(Error::Parse { line, message: format!("invalid vertex id `{name}`") });
            }
            Ok(*index.entry(name.to_string()).or_insert_with(|| g.add_vertex(name)))
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                ["graph", "1"] => {}
                ["vertex", v] => {
                    lookup(&mut g, v, line)?;
                }
                ["edge", u, v] => {
                    let a = lookup(&mut g, u, line)?;
                    let b = lookup(&mut g, v, line)?;
                    g.add_edge(a, b);
                }
                _ => {
                    return Err(Error::Parse { line, message: format!("unrecognized line `{content}`") });
                }
            }
        }
        if g.vertex_count() == 0 {
            return Err(Error::Parse { line: 1, message: "graph has no vertices".into() });
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("graph 1\n");
        for n in &self.names {
            out.push_str(&format!("vertex {n}\n"));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("edge {} {}\n", self.names[u], self.names[v]));
        }
        out
    }
}
