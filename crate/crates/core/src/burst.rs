//! Square diagonals and burst cycles.
//!
//! A non-adjacent pair `u, w` lies on a common induced 4-cycle exactly when
//! it is that square's diagonal, i.e. `u` and `w` have two non-adjacent
//! common neighbours. An induced cycle is burst when two of its non-adjacent
//! vertices form such a pair. The square may use vertices off the cycle.

use serde::{Deserialize, Serialize};

use crate::bits::{BitRow, VertexSet};
use crate::cycles::{CycleError, InducedCycle};
use crate::graph::{Graph, GraphError, RowVisitor};

/// Evidence that a cycle is burst: `pair` lies on the cycle and is the
/// diagonal of the induced square `(u, a, w, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurstWitness {
    pub pair: (usize, usize),
    pub square: [usize; 4],
}

impl BurstWitness {
    /// Checks the witness against `g` and the cycle it claims to burst.
    pub fn verify(&self, g: &Graph, cycle: &InducedCycle) -> bool {
        let [u, a, w, b] = self.square;
        let on_cycle = |v| cycle.vertices().contains(&v);
        (u, w) == self.pair
            && on_cycle(u)
            && on_cycle(w)
            && g.has_edge(u, a)
            && g.has_edge(a, w)
            && g.has_edge(w, b)
            && g.has_edge(b, u)
            && !g.has_edge(u, w)
            && !g.has_edge(a, b)
            && u != w
            && a != b
    }
}

pub(crate) fn square_through<B: BitRow>(rows: &[B], u: usize, w: usize) -> Option<(usize, usize)> {
    if u == w || rows[u].contains(w) {
        return None;
    }
    let common = rows[u].and(&rows[w]);
    common
        .ones()
        .find_map(|a| common.above(a).and_not(&rows[a]).first().map(|b| (a, b)))
}

/// For each vertex, the set of partners it forms a square diagonal with.
pub(crate) fn diagonal_rows<B: BitRow>(rows: &[B]) -> Vec<B> {
    let n = rows.len();
    let mut out = vec![B::empty(n); n];
    for u in 0..n {
        for w in u + 1..n {
            if rows[u].contains(w) {
                continue;
            }
            let common = rows[u].and(&rows[w]);
            // Some common neighbour must miss another common neighbour.
            let found = common
                .ones()
                .any(|a| !common.and_not(&rows[a]).above(a).is_empty());
            if found {
                out[u].insert(w);
                out[w].insert(u);
            }
        }
    }
    out
}

/// Returns the square `(u, a, w, b)` with `u, w` as diagonal, choosing the
/// lexicographically smallest `(a, b)` with `a < b`, or `None` if `u ~ w`,
/// `u == w`, or no such square exists.
pub fn is_square_diagonal(g: &Graph, u: usize, w: usize) -> Result<Option<[usize; 4]>, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(w)?;
    struct Find(usize, usize);
    impl RowVisitor for Find {
        type Output = Option<(usize, usize)>;
        fn visit<B: BitRow>(self, rows: &[B]) -> Self::Output {
            square_through(rows, self.0, self.1)
        }
    }
    Ok(g.dispatch(Find(u, w)).map(|(a, b)| [u, a, w, b]))
}

/// All square-diagonal pairs `(u, w)` with `u < w`, sorted.
pub fn square_diagonal_pairs(g: &Graph) -> Vec<(usize, usize)> {
    SquareIndex::new(g).pairs()
}

/// Precomputed square-diagonal relation of one graph.
#[derive(Debug, Clone)]
pub struct SquareIndex {
    partners: Vec<VertexSet>,
}

impl SquareIndex {
    pub fn new(g: &Graph) -> Self {
        struct Build(usize);
        impl RowVisitor for Build {
            type Output = Vec<VertexSet>;
            fn visit<B: BitRow>(self, rows: &[B]) -> Self::Output {
                diagonal_rows(rows)
                    .iter()
                    .map(|r| VertexSet::from_indices(self.0, r.ones()))
                    .collect()
            }
        }
        SquareIndex {
            partners: g.dispatch(Build(g.n())),
        }
    }

    pub fn is_diagonal(&self, u: usize, w: usize) -> bool {
        self.partners.get(u).is_some_and(|s| s.contains(w))
    }

    pub fn partners(&self, u: usize) -> &VertexSet {
        &self.partners[u]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partners
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().filter(move |&w| w > u).map(move |w| (u, w)))
            .collect()
    }
}

/// Decides whether the induced cycle `c` of `g` is burst. The witness is the
/// first qualifying pair of cycle positions `(i, j)`, `i < j`, in
/// lexicographic order, with its smallest square.
pub fn is_burst(g: &Graph, c: &InducedCycle) -> Result<Option<BurstWitness>, CycleError> {
    c.validate(g)?;
    Ok(burst_witness(g, c))
}

pub(crate) fn burst_witness(g: &Graph, c: &InducedCycle) -> Option<BurstWitness> {
    let vs = c.vertices();
    c.non_adjacent_positions().find_map(|(i, j)| {
        let (u, w) = (vs[i], vs[j]);
        is_square_diagonal(g, u, w)
            .expect("cycle vertices are valid")
            .map(|square| BurstWitness {
                pair: (u, w),
                square,
            })
    })
}
