//! The "every induced cycle of length at least four is burst" condition.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::bits::BitRow;
use crate::burst::{burst_witness, diagonal_rows, BurstWitness};
use crate::cycles::{enumerate_raw, EnumBounds, InducedCycle};
use crate::graph::{Graph, RowVisitor};

pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Shortest cycle length the condition quantifies over.
pub const MIN_CYCLE_LEN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranOptions {
    /// Longest cycle examined; `None` means `n`, i.e. a complete check.
    pub max_len: Option<usize>,
    /// How many non-burst cycles (and, separately, burst witnesses) to keep.
    pub witness_cap: usize,
    /// Stop at the first non-burst cycle.
    pub early_exit: bool,
    /// Search-node budget passed to the enumerator.
    pub node_budget: Option<u64>,
}

impl Default for TranOptions {
    fn default() -> Self {
        TranOptions {
            max_len: None,
            witness_cap: DEFAULT_WITNESS_CAP,
            early_exit: false,
            node_budget: None,
        }
    }
}

impl TranOptions {
    pub fn early_exit() -> Self {
        TranOptions {
            early_exit: true,
            witness_cap: 1,
            ..Self::default()
        }
    }
}

/// Outcome of [`check_tran_condition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranVerdict {
    pub all_burst: bool,
    pub truncated: bool,
    /// Induced cycles examined, by length.
    pub counts: BTreeMap<usize, u64>,
    /// First non-burst cycles in enumeration order, at most `witness_cap`.
    pub non_burst_cycles: Vec<InducedCycle>,
    /// All non-burst cycles met, including those past the cap.
    pub non_burst_total: u64,
    /// Burst witnesses for the first burst cycles, at most `witness_cap`.
    pub witnesses: Vec<(InducedCycle, BurstWitness)>,
}

impl TranVerdict {
    pub fn examined(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Stable JSON form with vertex labels in place of indices.
    pub fn report<'g>(&self, g: &'g Graph) -> VerdictReport<'g> {
        VerdictReport {
            all_burst: self.all_burst,
            truncated: self.truncated,
            counts: self.counts.clone(),
            non_burst_cycles: self.non_burst_cycles.iter().map(|c| c.labels(g)).collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|(c, w)| WitnessReport {
                    cycle: c.labels(g),
                    pair: [g.label(w.pair.0), g.label(w.pair.1)],
                    square: w.square.map(|v| g.label(v)),
                })
                .collect(),
        }
    }

    /// [`TranVerdict::report`] followed by the [`annotate_verdict`] notes.
    pub fn check_report<'g>(&self, g: &'g Graph) -> CheckReport<'g> {
        CheckReport {
            verdict: self.report(g),
            annotations: annotate_verdict(self),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport<'g> {
    #[serde(flatten)]
    pub verdict: VerdictReport<'g>,
    pub annotations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport<'g> {
    pub all_burst: bool,
    pub truncated: bool,
    pub counts: BTreeMap<usize, u64>,
    pub non_burst_cycles: Vec<Vec<&'g str>>,
    pub witnesses: Vec<WitnessReport<'g>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport<'g> {
    pub cycle: Vec<&'g str>,
    pub pair: [&'g str; 2],
    pub square: [&'g str; 4],
}

/// Checks whether every induced cycle of `g` with length in
/// `[4, max_len]` is burst.
pub fn check_tran_condition(g: &Graph, opts: &TranOptions) -> TranVerdict {
    struct Run<'a> {
        g: &'a Graph,
        opts: &'a TranOptions,
    }
    impl RowVisitor for Run<'_> {
        type Output = TranVerdict;
        fn visit<B: BitRow>(self, rows: &[B]) -> TranVerdict {
            let Run { g, opts } = self;
            let n = g.n();
            let diag = diagonal_rows(rows);
            let mut non_burst = Vec::new();
            let mut non_burst_total = 0u64;
            let mut witnesses = Vec::new();
            let bounds = EnumBounds {
                min_len: MIN_CYCLE_LEN,
                max_len: opts.max_len.unwrap_or(n).min(n),
                node_budget: opts.node_budget,
            };
            let stats = enumerate_raw(g, bounds, |seq| {
                let mut on_cycle = B::empty(n);
                for &v in seq {
                    on_cycle.insert(v);
                }
                let burst = seq.iter().any(|&u| diag[u].intersects(&on_cycle));
                if burst {
                    if witnesses.len() < opts.witness_cap {
                        let c = InducedCycle::from_canonical_unchecked(seq.to_vec());
                        let w = burst_witness(g, &c).expect("diagonal pair on cycle");
                        witnesses.push((c, w));
                    }
                    return ControlFlow::Continue(());
                }
                non_burst_total += 1;
                if non_burst.len() < opts.witness_cap {
                    non_burst.push(InducedCycle::from_canonical_unchecked(seq.to_vec()));
                }
                if opts.early_exit {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            TranVerdict {
                all_burst: non_burst_total == 0 && !stats.truncated,
                truncated: stats.truncated,
                counts: stats.counts,
                non_burst_cycles: non_burst,
                non_burst_total,
                witnesses,
            }
        }
    }
    g.dispatch(Run { g, opts })
}

/// Informational notes for a verdict. A non-burst cycle yields the known
/// consequence for the Morse boundary; an all-burst verdict supports no
/// conclusion and yields nothing.
pub fn annotate_verdict(v: &TranVerdict) -> Vec<String> {
    if v.non_burst_cycles.is_empty() {
        return vec![];
    }
    vec![format!(
        "a non-burst induced cycle of length {} exists, so the Morse boundary of the \
         right-angled Coxeter group on this graph contains an embedded circle \
         (H. C. Tran, On strongly quasiconvex subgroups, Corollary 1.12)",
        v.non_burst_cycles[0].len()
    )]
}
