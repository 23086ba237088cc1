//! Finite simple graphs with stable vertex labels.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{BitRow, VertexSet, WideRow};

/// Largest vertex count stored with one machine word per adjacency row.
pub const NARROW_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex index {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("adjacency not symmetric between {0} and {1}")]
    Asymmetric(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Adjacency {
    Narrow(Vec<u64>),
    Wide(Vec<WideRow>),
}

/// A finite simple graph. Vertices are the indices `0..n`; labels are kept
/// alongside for input and output and never change under read-only operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    adj: Adjacency,
}

/// Callback used to run a row-generic algorithm on whichever adjacency
/// representation a graph has.
pub(crate) trait RowVisitor {
    type Output;
    fn visit<B: BitRow>(self, rows: &[B]) -> Self::Output;
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `"0"`, `"1"`, ...
    pub fn empty(n: usize) -> Self {
        Self::from_unique_labels((0..n).map(|i| i.to_string()).collect())
    }

    /// Edgeless graph with the given labels.
    pub fn with_labels<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self, GraphError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self::from_unique_labels(labels))
    }

    pub(crate) fn from_unique_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        let adj = if n <= NARROW_LIMIT {
            Adjacency::Narrow(vec![0; n])
        } else {
            Adjacency::Wide(vec![WideRow::empty(n); n])
        };
        Graph { labels, adj }
    }

    /// Graph on `n` vertices with default labels and the listed edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `uv`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(self.labels[u].clone()));
        }
        self.set_edge(u, v);
        Ok(())
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        match &mut self.adj {
            Adjacency::Narrow(rows) => {
                rows[u].insert(v);
                rows[v].insert(u);
            }
            Adjacency::Wide(rows) => {
                rows[u].insert(v);
                rows[v].insert(u);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Like [`Graph::index_of`] but with an error for unknown labels.
    pub fn vertex(&self, label: &str) -> Result<usize, GraphError> {
        self.index_of(label)
            .ok_or_else(|| GraphError::UnknownLabel(label.to_string()))
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.adj {
            Adjacency::Narrow(rows) => rows.get(u).is_some_and(|r| r.contains(v)),
            Adjacency::Wide(rows) => rows.get(u).is_some_and(|r| r.contains(v)),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        match &self.adj {
            Adjacency::Narrow(rows) => rows[v].count(),
            Adjacency::Wide(rows) => rows[v].count(),
        }
    }

    /// Neighbours of `v` in increasing index order.
    pub fn neighbor_indices(&self, v: usize) -> Vec<usize> {
        match &self.adj {
            Adjacency::Narrow(rows) => rows[v].ones().collect(),
            Adjacency::Wide(rows) => rows[v].ones().collect(),
        }
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(VertexSet::from_indices(self.n(), self.neighbor_indices(v)))
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.neighbor_indices(u)
                    .into_iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// Degrees sorted in decreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Closed neighbourhood `N(v) ∪ {v}`.
    pub fn star(&self, v: usize) -> Result<VertexSet, GraphError> {
        let mut s = self.neighbors(v)?;
        s.insert(v);
        Ok(s)
    }

    /// Open neighbourhood `N(v)`.
    pub fn link(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.neighbors(v)
    }

    /// Subgraph induced on `keep`, with vertices in their original relative
    /// order and labels carried over. Members outside `0..n` are ignored.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Graph {
        let order: Vec<usize> = keep.iter().filter(|&v| v < self.n()).collect();
        self.reordered(&order)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let mut keep = VertexSet::full(self.n());
        keep.remove(v);
        Ok(self.induced_subgraph(&keep))
    }

    /// Graph whose vertex `i` is this graph's vertex `order[i]`. `order` must
    /// list distinct valid vertices; the result is induced on them.
    pub fn reordered(&self, order: &[usize]) -> Graph {
        let labels = order.iter().map(|&v| self.labels[v].clone()).collect();
        let mut g = Graph::from_unique_labels(labels);
        for (i, &u) in order.iter().enumerate() {
            for (j, &v) in order.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// Same adjacency with new labels.
    pub fn relabeled<S: Into<String>>(
        &self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Graph, GraphError> {
        let mut g = Graph::with_labels(labels)?;
        if g.n() != self.n() {
            return Err(GraphError::InvalidVertex {
                vertex: g.n(),
                n: self.n(),
            });
        }
        g.adj = self.adj.clone();
        Ok(g)
    }

    /// Checks the structural invariants: unique labels, symmetric and
    /// irreflexive adjacency.
    pub fn validate(&self) -> Result<(), GraphError> {
        Graph::with_labels(self.labels.iter().cloned())?;
        for u in 0..self.n() {
            if self.has_edge(u, u) {
                return Err(GraphError::SelfLoop(self.labels[u].clone()));
            }
            for v in self.neighbor_indices(u) {
                if v >= self.n() || !self.has_edge(v, u) {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(())
    }

    /// Graphviz rendering for inspection.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for l in &self.labels {
            let _ = writeln!(out, "  \"{}\";", escape_dot(l));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                escape_dot(&self.labels[u]),
                escape_dot(&self.labels[v])
            );
        }
        out.push_str("}\n");
        out
    }

    pub(crate) fn dispatch<V: RowVisitor>(&self, visitor: V) -> V::Output {
        match &self.adj {
            Adjacency::Narrow(rows) => visitor.visit(rows),
            Adjacency::Wide(rows) => visitor.visit(rows),
        }
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<(&str, &str)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (self.label(u), self.label(v)))
            .collect();
        f.debug_struct("Graph")
            .field("labels", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

/// Where a graph came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSource {
    File { path: String, record: u64 },
    Generator { name: String, params: Vec<String> },
    Inline,
}
