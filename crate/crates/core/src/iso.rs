//! Small-graph isomorphism and canonical forms.
//!
//! Both are plain backtracking searches over vertex orderings, pruned by
//! colour refinement. Good enough for test fixtures and corpora of a few
//! dozen vertices; not a substitute for a real canonical labeller.

use thiserror::Error;

use crate::graph::Graph;

/// Order limit for [`are_isomorphic`].
pub const ISO_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("isomorphism test limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
}

type Cells = Vec<Vec<usize>>;

fn adjacency_lists(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbor_indices(v)).collect()
}

/// Refines an ordered partition until every cell is equitable. The order of
/// the new cells depends only on neighbour counts, never on vertex indices.
fn refine(adj: &[Vec<usize>], mut cells: Cells) -> Cells {
    let n = adj.len();
    let mut cell_of = vec![0usize; n];
    loop {
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let k = cells.len();
        let mut next: Cells = Vec::with_capacity(k);
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut key = vec![0usize; k];
                    for &w in &adj[v] {
                        key[cell_of[w]] += 1;
                    }
                    (key, v)
                })
                .collect();
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            let before = next.len();
            let mut i = 0;
            while i < keyed.len() {
                let mut j = i;
                while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                    j += 1;
                }
                next.push(keyed[i..j].iter().map(|(_, v)| *v).collect());
                i = j;
            }
            changed |= next.len() - before > 1;
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn leaf_code(adj_rows: &[Vec<bool>], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let bits = n * n.saturating_sub(1) / 2;
    let mut code = vec![0u64; bits.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if adj_rows[order[i]][order[j]] {
                code[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    code
}

/// Canonical code and the graph relabelled into canonical order (default
/// labels `"0"`..). Two graphs are isomorphic iff their codes are equal.
pub fn canonical_form(g: &Graph) -> (Vec<u64>, Graph) {
    let adj = adjacency_lists(g);
    let n = g.n();
    let rows: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
        .collect();
    let start = refine(
        &adj,
        if n == 0 {
            vec![]
        } else {
            vec![(0..n).collect()]
        },
    );
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search_leaves(&adj, &rows, start, &mut best);
    let (code, order) = best.unwrap_or_else(|| (vec![0], vec![]));
    let canon =
        Graph::from_edges(n, &g.reordered(&order).edges()).expect("reordered edges are valid");
    (code, canon)
}

fn search_leaves(
    adj: &[Vec<usize>],
    rows: &[Vec<bool>],
    cells: Cells,
    best: &mut Option<(Vec<u64>, Vec<usize>)>,
) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().flatten().collect();
        let code = leaf_code(rows, &order);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, order));
        }
        return;
    };
    for &v in &cells[target] {
        let mut split = cells.clone();
        let rest: Vec<usize> = split[target].iter().copied().filter(|&w| w != v).collect();
        split[target] = vec![v];
        split.insert(target + 1, rest);
        search_leaves(adj, rows, refine(adj, split), best);
    }
}

/// Isomorphism test for graphs on at most [`ISO_MAX_N`] vertices.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, IsoError> {
    for n in [g.n(), h.n()] {
        if n > ISO_MAX_N {
            return Err(IsoError::TooLarge {
                n,
                limit: ISO_MAX_N,
            });
        }
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// Searches for a bijection `phi` with `u ~ v` in `g` iff `phi[u] ~ phi[v]`
/// in `h`. No size limit; running time is exponential in the worst case.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence()
    {
        return None;
    }
    if n == 0 {
        return Some(vec![]);
    }
    // Refine the disjoint union so that colours are comparable across graphs.
    let mut adj = adjacency_lists(g);
    adj.extend(
        adjacency_lists(h)
            .into_iter()
            .map(|ns| ns.into_iter().map(|w| w + n).collect()),
    );
    let cells = refine(&adj, vec![(0..2 * n).collect()]);
    let mut color = vec![0usize; 2 * n];
    for (ci, cell) in cells.iter().enumerate() {
        if cell.iter().filter(|&&v| v < n).count() != cell.iter().filter(|&&v| v >= n).count() {
            return None;
        }
        for &v in cell {
            color[v] = ci;
        }
    }

    // Visit g in BFS order so each vertex after the first in its component
    // has an already-mapped neighbour.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for root in 0..n {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        order.push(root);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in g.neighbor_indices(u) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
    }

    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(g, h, &order, 0, &color, &mut phi, &mut used).then_some(phi)
}

fn extend(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    color: &[usize],
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = g.n();
    let Some(&u) = order.get(depth) else {
        return true;
    };
    for cand in 0..n {
        if used[cand] || color[cand + n] != color[u] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&p| g.has_edge(u, p) == h.has_edge(cand, phi[p]));
        if !consistent {
            continue;
        }
        phi[u] = cand;
        used[cand] = true;
        if extend(g, h, order, depth + 1, color, phi, used) {
            return true;
        }
        used[cand] = false;
        phi[u] = usize::MAX;
    }
    false
}
