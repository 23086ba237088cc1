//! Reference implementations used as oracles. They work from `has_edge`
//! alone and share no code with the library algorithms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use burst_core::Graph;

/// Vertex sets (sorted) inducing a cycle of length `min_len..=max_len`,
/// found by trying every subset.
pub fn subset_cycles(g: &Graph, min_len: usize, max_len: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k < min_len.max(3) || k > max_len {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let two_regular = verts
            .iter()
            .all(|&u| verts.iter().filter(|&&w| g.has_edge(u, w)).count() == 2);
        if !two_regular {
            continue;
        }
        // A 2-regular graph is a single cycle iff it is connected.
        let mut seen = vec![verts[0]];
        let mut stack = vec![verts[0]];
        while let Some(u) = stack.pop() {
            for &w in &verts {
                if g.has_edge(u, w) && !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        if seen.len() == k {
            out.push(verts);
        }
    }
    out
}

/// Whether `u` and `w` are opposite corners of an induced 4-cycle.
pub fn naive_diagonal(g: &Graph, u: usize, w: usize) -> bool {
    if u == w || g.has_edge(u, w) {
        return false;
    }
    let common: Vec<usize> = (0..g.n())
        .filter(|&v| v != u && v != w && g.has_edge(u, v) && g.has_edge(w, v))
        .collect();
    common
        .iter()
        .any(|&a| common.iter().any(|&b| a != b && !g.has_edge(a, b)))
}

pub fn naive_burst(g: &Graph, cycle: &[usize]) -> bool {
    cycle
        .iter()
        .any(|&u| cycle.iter().any(|&w| naive_diagonal(g, u, w)))
}

pub struct NaiveVerdict {
    pub all_burst: bool,
    pub counts: BTreeMap<usize, u64>,
}

pub fn naive_condition(g: &Graph) -> NaiveVerdict {
    let mut counts = BTreeMap::new();
    let mut all_burst = true;
    for c in subset_cycles(g, 4, g.n()) {
        *counts.entry(c.len()).or_insert(0) += 1;
        all_burst &= naive_burst(g, &c);
    }
    NaiveVerdict { all_burst, counts }
}

/// Bit-at-a-time graph6 decoder for orders below 63.
pub fn reference_decode(text: &str) -> (usize, Vec<(usize, usize)>) {
    let bytes = text.as_bytes();
    let n = (bytes[0] - 63) as usize;
    assert!(n < 63);
    let mut bits = Vec::new();
    for &b in &bytes[1..] {
        let v = b - 63;
        for i in (0..6).rev() {
            bits.push(v >> i & 1 == 1);
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    assert_eq!(bits.len(), k.div_ceil(6) * 6);
    assert!(bits[k..].iter().all(|b| !b));
    edges.sort();
    (n, edges)
}

/// Bit-at-a-time graph6 encoder for orders below 63.
pub fn reference_encode(n: usize, edges: &[(usize, usize)]) -> String {
    assert!(n < 63);
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(edges.contains(&(i, j)) || edges.contains(&(j, i)));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut s = String::new();
    s.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let v = chunk.iter().fold(0u8, |acc, &b| acc << 1 | b as u8);
        s.push((v + 63) as char);
    }
    s
}

/// Star double of `g` at `x` built straight from the adjacency relation:
/// vertex `(v, 0)` for every `v != x`, plus `(v, 1)` for `v` outside the
/// closed neighbourhood of `x`.
pub fn naive_star_double(g: &Graph, x: usize) -> Graph {
    let n = g.n();
    let in_star = |v: usize| v == x || g.has_edge(v, x);
    let mut verts = Vec::new();
    for v in 0..n {
        if v != x {
            verts.push((v, 0));
        }
    }
    for v in 0..n {
        if !in_star(v) {
            verts.push((v, 1));
        }
    }
    let mut h = Graph::empty(verts.len());
    for (i, &(u, su)) in verts.iter().enumerate() {
        for (j, &(w, sw)) in verts.iter().enumerate().skip(i + 1) {
            let shared = in_star(u) || in_star(w);
            if g.has_edge(u, w) && (su == sw || shared) {
                h.add_edge(i, j).unwrap();
            }
        }
    }
    h
}

/// Trees on `n` vertices from Prüfer sequences, one per sequence.
pub fn pruefer_tree(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut g = Graph::empty(n);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        g.add_edge(leaf, s).unwrap();
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]).unwrap();
    g
}
