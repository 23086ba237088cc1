//! Doubling a graph along an induced subgraph, and the star double.
//!
//! Doubling `g` over `s` glues two copies of `g` along the subgraph induced
//! on `s`. Doubling over the star of `x` and then deleting `x` gives the
//! defining graph of an index-two reflection subgroup.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::VertexSet;
use crate::graph::{Graph, GraphError};
use crate::graph6::to_graph6_string;
use crate::iso::{are_isomorphic, ISO_MAX_N};
use crate::tran::{check_tran_condition, TranOptions, TranVerdict};

/// Which copy a vertex of a double belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Shared,
    Copy1,
    Copy2,
}

impl Side {
    fn swapped(self) -> Side {
        match self {
            Side::Shared => Side::Shared,
            Side::Copy1 => Side::Copy2,
            Side::Copy2 => Side::Copy1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Origin {
    pub side: Side,
    /// Vertex index in the original graph.
    pub original: usize,
}

/// A double together with the origin of each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Doubled {
    pub graph: Graph,
    pub origin: Vec<Origin>,
}

/// Result of [`star_double_minus`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleResult {
    pub graph: Graph,
    pub origin: Vec<Origin>,
    /// The deleted vertex, as an index of the original graph.
    pub center: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("double invariant violated: {0}")]
    Invariant(String),
}

/// Appends `suffix` to `base`, adding further `'` marks until the label is
/// not in `taken`.
fn fresh_label(base: &str, suffix: &str, taken: &mut HashSet<String>) -> String {
    let mut label = format!("{base}{suffix}");
    while taken.contains(&label) {
        label.push('\'');
    }
    taken.insert(label.clone());
    label
}

/// Glues two copies of `g` along the subgraph induced on `s`.
///
/// Result vertices are the members of `s` and the first copies of the other
/// vertices, interleaved in original order, followed by the second copies.
/// Shared vertices keep their labels; copies get `#1` and `#2` suffixes.
pub fn double_over(g: &Graph, s: &VertexSet) -> Doubled {
    let n = g.n();
    let mut origin = Vec::with_capacity(2 * n);
    for v in 0..n {
        let side = if s.contains(v) {
            Side::Shared
        } else {
            Side::Copy1
        };
        origin.push(Origin { side, original: v });
    }
    for v in (0..n).filter(|&v| !s.contains(v)) {
        origin.push(Origin {
            side: Side::Copy2,
            original: v,
        });
    }

    let mut taken: HashSet<String> = origin
        .iter()
        .filter(|o| o.side == Side::Shared)
        .map(|o| g.label(o.original).to_string())
        .collect();
    let labels: Vec<String> = origin
        .iter()
        .map(|o| match o.side {
            Side::Shared => g.label(o.original).to_string(),
            Side::Copy1 => fresh_label(g.label(o.original), "#1", &mut taken),
            Side::Copy2 => fresh_label(g.label(o.original), "#2", &mut taken),
        })
        .collect();

    let mut graph = Graph::from_unique_labels(labels);
    for (i, a) in origin.iter().enumerate() {
        for (j, b) in origin.iter().enumerate().skip(i + 1) {
            let across = matches!(
                (a.side, b.side),
                (Side::Copy1, Side::Copy2) | (Side::Copy2, Side::Copy1)
            );
            if !across && g.has_edge(a.original, b.original) {
                graph.add_edge(i, j).expect("distinct vertices");
            }
        }
    }
    Doubled { graph, origin }
}

/// Doubles `g` over the star of `x`, then deletes `x`.
pub fn star_double_minus(g: &Graph, x: usize) -> Result<DoubleResult, GraphError> {
    let star = g.star(x)?;
    let Doubled { graph, mut origin } = double_over(g, &star);
    // x is shared, so it sits at its original index.
    debug_assert_eq!(
        origin[x],
        Origin {
            side: Side::Shared,
            original: x
        }
    );
    let graph = graph.delete_vertex(x)?;
    origin.remove(x);
    Ok(DoubleResult {
        graph,
        origin,
        center: x,
    })
}

impl DoubleResult {
    /// The permutation exchanging the two copies and fixing shared vertices.
    pub fn swap_involution(&self) -> Vec<usize> {
        let index: HashMap<Origin, usize> = self
            .origin
            .iter()
            .enumerate()
            .map(|(i, o)| (*o, i))
            .collect();
        self.origin
            .iter()
            .map(|o| {
                index[&Origin {
                    side: o.side.swapped(),
                    original: o.original,
                }]
            })
            .collect()
    }

    /// Re-derives every structural property of the double from `base`.
    pub fn check_invariants(&self, base: &Graph) -> Result<(), ConstructionError> {
        let fail = |msg: String| Err(ConstructionError::Invariant(msg));
        let x = self.center;
        let g = &self.graph;
        g.validate()?;
        if g.n() != self.origin.len() {
            return fail("origin map size differs from vertex count".into());
        }
        let expected_n = (2 * base.n()).checked_sub(base.degree(x) + 2);
        if Some(g.n()) != expected_n {
            return fail(format!("vertex count {} != 2n - deg(x) - 2", g.n()));
        }
        let link = base.link(x)?;
        let shared = VertexSet::from_indices(
            base.n(),
            self.origin
                .iter()
                .filter(|o| o.side == Side::Shared)
                .map(|o| o.original),
        );
        if shared != link {
            return fail("shared vertices differ from link(x)".into());
        }
        let star = base.star(x)?;
        let star_edges = base.induced_subgraph(&star).edge_count();
        if g.edge_count() + star_edges + base.degree(x) != 2 * base.edge_count() {
            return fail("edge count != 2|E| - |E(st x)| - deg(x)".into());
        }
        for (i, a) in self.origin.iter().enumerate() {
            for (j, b) in self.origin.iter().enumerate() {
                if i == j {
                    continue;
                }
                let across = matches!(
                    (a.side, b.side),
                    (Side::Copy1, Side::Copy2) | (Side::Copy2, Side::Copy1)
                );
                let want = !across && base.has_edge(a.original, b.original);
                if g.has_edge(i, j) != want {
                    return fail(format!(
                        "adjacency of {} and {} does not match their originals",
                        g.label(i),
                        g.label(j)
                    ));
                }
            }
        }
        let swap = self.swap_involution();
        for (u, v) in g.edges() {
            if !g.has_edge(swap[u], swap[v]) {
                return fail("copy swap is not an automorphism".into());
            }
        }
        if swap.iter().enumerate().any(|(i, &s)| swap[s] != i) {
            return fail("copy swap is not an involution".into());
        }
        Ok(())
    }

    pub fn report<'a>(&'a self, base: &'a Graph) -> DoubleReport<'a> {
        let g = &self.graph;
        DoubleReport {
            center: base.label(self.center),
            n: g.n(),
            edge_count: g.edge_count(),
            graph6: to_graph6_string(g).unwrap_or_default(),
            labels: g.labels().iter().map(String::as_str).collect(),
            edges: g
                .edges()
                .into_iter()
                .map(|(u, v)| [g.label(u), g.label(v)])
                .collect(),
            origin: self
                .origin
                .iter()
                .enumerate()
                .map(|(i, o)| OriginReport {
                    vertex: g.label(i),
                    side: o.side,
                    original: base.label(o.original),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleReport<'a> {
    pub center: &'a str,
    pub n: usize,
    pub edge_count: usize,
    pub graph6: String,
    pub labels: Vec<&'a str>,
    pub edges: Vec<[&'a str; 2]>,
    pub origin: Vec<OriginReport<'a>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OriginReport<'a> {
    pub vertex: &'a str,
    pub side: Side,
    pub original: &'a str,
}

/// Which vertices to double over.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum VertexPolicy {
    #[default]
    All,
    /// Only vertices carrying one of these labels; absent labels are skipped.
    Listed(Vec<String>),
}

impl VertexPolicy {
    pub fn select(&self, g: &Graph) -> Vec<usize> {
        match self {
            VertexPolicy::All => (0..g.n()).collect(),
            VertexPolicy::Listed(labels) => {
                let mut vs: Vec<usize> = labels.iter().filter_map(|l| g.index_of(l)).collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterateOptions {
    pub depth: usize,
    pub policy: VertexPolicy,
    /// Branches whose double would exceed this order are reported, not built.
    pub max_n: usize,
    pub tran: TranOptions,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions {
            depth: 1,
            policy: VertexPolicy::All,
            max_n: 64,
            tran: TranOptions::default(),
        }
    }
}

/// One step of a derivation: the vertex doubled over and the resulting order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub vertex: String,
    pub n: usize,
}

#[derive(Debug, Clone)]
pub enum NodeOutcome {
    Evaluated {
        graph: Graph,
        verdict: TranVerdict,
        /// Index of an earlier isomorphic node; such nodes are not expanded.
        duplicate_of: Option<usize>,
    },
    TooLarge {
        n: usize,
    },
}

#[derive(Debug, Clone)]
pub struct DoubleNode {
    pub path: Vec<Step>,
    pub outcome: NodeOutcome,
}

impl DoubleNode {
    pub fn verdict(&self) -> Option<&TranVerdict> {
        match &self.outcome {
            NodeOutcome::Evaluated { verdict, .. } => Some(verdict),
            NodeOutcome::TooLarge { .. } => None,
        }
    }
}

/// Breadth-first exploration of iterated star doubles up to `depth` levels,
/// checking the burst condition at every node. Node 0 is `g` itself.
/// Isomorphic results are merged while both graphs have at most
/// [`ISO_MAX_N`] vertices; larger graphs are always kept distinct.
pub fn iterate_doubles(g: &Graph, opts: &IterateOptions) -> Vec<DoubleNode> {
    let mut nodes = vec![DoubleNode {
        path: vec![],
        outcome: NodeOutcome::Evaluated {
            graph: g.clone(),
            verdict: check_tran_condition(g, &opts.tran),
            duplicate_of: None,
        },
    }];
    let mut frontier = vec![0usize];
    for _ in 0..opts.depth {
        let mut next = Vec::new();
        for &parent in &frontier {
            let (base, path) = match &nodes[parent].outcome {
                NodeOutcome::Evaluated {
                    graph,
                    duplicate_of: None,
                    ..
                } => (graph.clone(), nodes[parent].path.clone()),
                _ => continue,
            };
            for x in opts.policy.select(&base) {
                let n = 2 * base.n() - base.degree(x) - 2;
                let mut child_path = path.clone();
                child_path.push(Step {
                    vertex: base.label(x).to_string(),
                    n,
                });
                if n > opts.max_n {
                    nodes.push(DoubleNode {
                        path: child_path,
                        outcome: NodeOutcome::TooLarge { n },
                    });
                    continue;
                }
                let child = star_double_minus(&base, x)
                    .expect("selected vertex exists")
                    .graph;
                let duplicate_of = find_duplicate(&nodes, &child);
                let verdict = check_tran_condition(&child, &opts.tran);
                nodes.push(DoubleNode {
                    path: child_path,
                    outcome: NodeOutcome::Evaluated {
                        graph: child,
                        verdict,
                        duplicate_of,
                    },
                });
                if duplicate_of.is_none() {
                    next.push(nodes.len() - 1);
                }
            }
        }
        frontier = next;
    }
    nodes
}

fn find_duplicate(nodes: &[DoubleNode], g: &Graph) -> Option<usize> {
    if g.n() > ISO_MAX_N {
        return None;
    }
    nodes.iter().position(|node| match &node.outcome {
        NodeOutcome::Evaluated {
            graph,
            duplicate_of: None,
            ..
        } => {
            graph.n() == g.n()
                && graph.edge_count() == g.edge_count()
                && are_isomorphic(graph, g).unwrap_or(false)
        }
        _ => false,
    })
}
