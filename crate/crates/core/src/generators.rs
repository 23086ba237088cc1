//! Standard graph families and small exhaustive corpora.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::iso::canonical_form;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("{family} parameter {param} exceeds the supported maximum {max}")]
    TooLarge {
        family: &'static str,
        param: usize,
        max: usize,
    },
}

/// Largest hypercube dimension the generator will build.
pub const MAX_HYPERCUBE_DIM: usize = 20;

/// Largest order for [`all_graphs`]; above it the canonical-form search
/// becomes impractically slow.
pub const MAX_EXHAUSTIVE_ORDER: usize = 9;

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// `C_n` on `v1..vn`, with `vi ~ v(i+1)` and `vn ~ v1`.
pub fn gen_cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::CycleTooShort(n));
    }
    let mut g = Graph::from_unique_labels(numbered(n));
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).expect("valid");
    }
    Ok(g)
}

/// `P_n` on `v1..vn`.
pub fn gen_path(n: usize) -> Graph {
    let mut g = Graph::from_unique_labels(numbered(n));
    for i in 1..n {
        g.add_edge(i - 1, i).expect("valid");
    }
    g
}

/// `K_n` on `v1..vn`.
pub fn gen_complete(n: usize) -> Result<Graph, GenError> {
    let mut g = Graph::from_unique_labels(numbered(n));
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("valid");
        }
    }
    Ok(g)
}

/// The `d`-cube `Q_d`. Vertex `i` is labelled by the `d`-digit binary
/// expansion of `i`; two vertices are adjacent when their labels differ in
/// exactly one digit. `Q_0` is a single vertex labelled `e`.
pub fn gen_hypercube(d: usize) -> Result<Graph, GenError> {
    if d > MAX_HYPERCUBE_DIM {
        return Err(GenError::TooLarge {
            family: "hypercube",
            param: d,
            max: MAX_HYPERCUBE_DIM,
        });
    }
    let n = 1usize << d;
    let labels = if d == 0 {
        vec!["e".to_string()]
    } else {
        (0..n).map(|i| format!("{i:0d$b}")).collect()
    };
    let mut g = Graph::from_unique_labels(labels);
    for u in 0..n {
        for bit in 0..d {
            let v = u ^ (1 << bit);
            if u < v {
                g.add_edge(u, v).expect("valid");
            }
        }
    }
    Ok(g)
}

/// Erdős–Rényi `G(n, p)` with default labels.
pub fn gen_random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).expect("valid");
            }
        }
    }
    g
}

/// `count` samples of `G(n, p)` from a ChaCha8 stream seeded with `seed`;
/// the same arguments always give the same graphs.
pub fn random_corpus(n: usize, p: f64, seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen_random(n, p, &mut rng)).collect()
}

/// Every graph on exactly `n` vertices up to isomorphism, each in canonical
/// form, sorted by canonical code. Built by extending each graph on `n - 1`
/// vertices with a new vertex in every possible way and keeping one
/// representative per canonical form.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>, GenError> {
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(GenError::TooLarge {
            family: "exhaustive corpus",
            param: n,
            max: MAX_EXHAUSTIVE_ORDER,
        });
    }
    let mut level = vec![Graph::empty(0)];
    for order in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let edges = g.edges();
            for mask in 0u64..(1 << (order - 1)) {
                let mut h = Graph::empty(order);
                for &(u, v) in &edges {
                    h.add_edge(u, v).expect("valid");
                }
                for u in 0..order - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, order - 1).expect("valid");
                    }
                }
                let (code, canon) = canonical_form(&h);
                if seen.insert(code.clone()) {
                    next.push((code, canon));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(level)
}
