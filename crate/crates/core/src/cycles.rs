//! Induced (chordless) cycle enumeration.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::bits::{BitRow, VertexSet};
use crate::graph::{Graph, RowVisitor};

/// Order limit for [`brute_force_induced_cycles`].
pub const BRUTE_FORCE_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("cycle has {0} vertices; an induced cycle needs at least 3")]
    TooShort(usize),
    #[error("cycle vertex {0} is not a vertex of the graph")]
    InvalidVertex(usize),
    #[error("vertex {0} repeats on the cycle")]
    Repeated(usize),
    #[error("consecutive cycle vertices {0} and {1} are not adjacent")]
    MissingEdge(usize, usize),
    #[error("chord between cycle vertices {0} and {1}")]
    Chord(usize, usize),
    #[error("cycle is not in canonical rotation")]
    NotCanonical,
    #[error("brute-force oracle limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
}

/// An induced cycle stored in canonical form: the smallest vertex first, and
/// the second vertex smaller than the last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InducedCycle {
    vertices: Vec<usize>,
}

impl InducedCycle {
    /// Rotates and reflects `seq` into canonical form. Does not check the
    /// graph; see [`InducedCycle::validate`].
    pub fn canonical(seq: &[usize]) -> Self {
        let k = seq.len();
        let Some((start, _)) = seq.iter().enumerate().min_by_key(|(_, v)| **v) else {
            return InducedCycle { vertices: vec![] };
        };
        let mut vertices: Vec<usize> = (0..k).map(|i| seq[(start + i) % k]).collect();
        if k > 2 && vertices[1] > vertices[k - 1] {
            vertices[1..].reverse();
        }
        InducedCycle { vertices }
    }

    pub(crate) fn from_canonical_unchecked(vertices: Vec<usize>) -> Self {
        InducedCycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.vertices.iter().map(|&v| g.label(v)).collect()
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_indices(n, self.vertices.iter().copied())
    }

    /// Positions `i < j` on the cycle that are not consecutive.
    pub fn non_adjacent_positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.len();
        (0..k).flat_map(move |i| {
            (i + 2..k)
                .filter(move |&j| !(i == 0 && j == k - 1))
                .map(move |j| (i, j))
        })
    }

    /// Checks that this is a canonical induced cycle of `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), CycleError> {
        let k = self.len();
        if k < 3 {
            return Err(CycleError::TooShort(k));
        }
        let mut seen = VertexSet::empty(g.n());
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(CycleError::InvalidVertex(v));
            }
            if seen.contains(v) {
                return Err(CycleError::Repeated(v));
            }
            seen.insert(v);
        }
        for i in 0..k {
            let (u, v) = (self.vertices[i], self.vertices[(i + 1) % k]);
            if !g.has_edge(u, v) {
                return Err(CycleError::MissingEdge(u, v));
            }
        }
        for (i, j) in self.non_adjacent_positions() {
            let (u, v) = (self.vertices[i], self.vertices[j]);
            if g.has_edge(u, v) {
                return Err(CycleError::Chord(u, v));
            }
        }
        if *self != InducedCycle::canonical(&self.vertices) {
            return Err(CycleError::NotCanonical);
        }
        Ok(())
    }
}

/// Bounds for an enumeration run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBounds {
    pub min_len: usize,
    pub max_len: usize,
    /// Maximum number of search-tree nodes; exceeding it truncates the run.
    pub node_budget: Option<u64>,
}

impl EnumBounds {
    pub fn new(min_len: usize, max_len: usize) -> Self {
        EnumBounds {
            min_len,
            max_len,
            node_budget: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumStats {
    /// Cycles delivered to the visitor, by length.
    pub counts: BTreeMap<usize, u64>,
    /// Search-tree nodes expanded.
    pub nodes: u64,
    /// Set when the length cap or the node budget cut off a branch that
    /// could still have produced a longer induced cycle.
    pub truncated: bool,
    /// Set when the visitor asked to stop.
    pub stopped: bool,
}

impl EnumStats {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Visits every induced cycle with length in `[min_len, max_len]` once, in
/// canonical form and in lexicographic order of the vertex sequences. The
/// visitor may return `ControlFlow::Break` to stop. `min_len` is raised to
/// 3 and `max_len` is capped at `n`.
pub fn enumerate_induced_cycles<F>(g: &Graph, bounds: EnumBounds, mut visitor: F) -> EnumStats
where
    F: FnMut(&InducedCycle) -> ControlFlow<()>,
{
    enumerate_raw(g, bounds, |seq| {
        visitor(&InducedCycle::from_canonical_unchecked(seq.to_vec()))
    })
}

/// Collects [`enumerate_induced_cycles`] output.
pub fn induced_cycles(g: &Graph, min_len: usize, max_len: usize) -> Vec<InducedCycle> {
    let mut out = Vec::new();
    enumerate_induced_cycles(g, EnumBounds::new(min_len, max_len), |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Enumeration without allocating per cycle: the visitor sees the canonical
/// vertex sequence, which is only valid for the duration of the call.
pub(crate) fn enumerate_raw<F>(g: &Graph, bounds: EnumBounds, visitor: F) -> EnumStats
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    struct Run<F> {
        bounds: EnumBounds,
        n: usize,
        visitor: F,
    }
    impl<F: FnMut(&[usize]) -> ControlFlow<()>> RowVisitor for Run<F> {
        type Output = EnumStats;
        fn visit<B: BitRow>(self, rows: &[B]) -> EnumStats {
            let mut w = Walker {
                rows,
                min_len: self.bounds.min_len.max(3),
                max_len: self.bounds.max_len.min(self.n),
                budget: self.bounds.node_budget,
                n: self.n,
                path: Vec::with_capacity(self.n),
                stats: EnumStats::default(),
                visitor: self.visitor,
            };
            w.run();
            w.stats
        }
    }
    g.dispatch(Run {
        bounds,
        n: g.n(),
        visitor,
    })
}

struct Walker<'a, B, F> {
    rows: &'a [B],
    min_len: usize,
    max_len: usize,
    budget: Option<u64>,
    n: usize,
    path: Vec<usize>,
    stats: EnumStats,
    visitor: F,
}

impl<B: BitRow, F: FnMut(&[usize]) -> ControlFlow<()>> Walker<'_, B, F> {
    fn run(&mut self) {
        if self.min_len > self.max_len {
            return;
        }
        for v0 in 0..self.n {
            let later = self.rows[v0].above(v0);
            for v1 in later.ones() {
                self.path.clear();
                self.path.push(v0);
                self.path.push(v1);
                if self.extend(B::empty(self.n)).is_break() {
                    return;
                }
            }
        }
    }

    /// `blocked` holds the closed neighbourhoods of the interior path
    /// vertices `v1..v(k-1)`; nothing in it may join the path.
    fn extend(&mut self, blocked: B) -> ControlFlow<()> {
        self.stats.nodes += 1;
        if self.budget.is_some_and(|b| self.stats.nodes > b) {
            self.stats.truncated = true;
            return ControlFlow::Break(());
        }
        let v0 = self.path[0];
        let v1 = self.path[1];
        let end = *self.path.last().expect("path has two vertices");
        let len = self.path.len();
        let candidates = self.rows[end].above(v0).and_not(&blocked);
        let start_row = &self.rows[v0];
        for w in candidates.ones() {
            if start_row.contains(w) {
                // Closing edge back to v0; the path cannot continue past w.
                let cycle_len = len + 1;
                if v1 < w && cycle_len >= self.min_len && cycle_len <= self.max_len {
                    self.path.push(w);
                    *self.stats.counts.entry(cycle_len).or_default() += 1;
                    let flow = (self.visitor)(&self.path);
                    self.path.pop();
                    if flow.is_break() {
                        self.stats.stopped = true;
                        return ControlFlow::Break(());
                    }
                }
            } else if len + 1 < self.max_len {
                let mut next_blocked = blocked.or(&self.rows[end]);
                next_blocked.insert(end);
                self.path.push(w);
                let flow = self.extend(next_blocked);
                self.path.pop();
                flow?;
            } else if self.max_len < self.n {
                self.stats.truncated = true;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Independent oracle: tries every vertex subset of size `3..=max_len` and
/// keeps those inducing a connected 2-regular graph. Output is canonical and
/// sorted.
pub fn brute_force_induced_cycles(
    g: &Graph,
    max_len: usize,
) -> Result<Vec<InducedCycle>, CycleError> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(CycleError::TooLarge {
            n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size < 3 || size > max_len {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = g.induced_subgraph(&VertexSet::from_indices(n, members.iter().copied()));
        if (0..sub.n()).any(|v| sub.degree(v) != 2) {
            continue;
        }
        // Walk the 2-regular subgraph from its first vertex; it is a single
        // cycle iff the walk visits every vertex.
        let mut walk = vec![0usize];
        let mut prev = usize::MAX;
        let mut cur = 0usize;
        loop {
            let next = sub
                .neighbor_indices(cur)
                .into_iter()
                .find(|&w| w != prev)
                .expect("degree two");
            if next == 0 {
                break;
            }
            walk.push(next);
            prev = cur;
            cur = next;
        }
        if walk.len() == size {
            let seq: Vec<usize> = walk.into_iter().map(|i| members[i]).collect();
            out.push(InducedCycle::canonical(&seq));
        }
    }
    out.sort();
    Ok(out)
}
