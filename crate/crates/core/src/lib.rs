//! Burst-cycle analysis for defining graphs of right-angled Coxeter groups.
//!
//! The right-angled Coxeter group of a finite simple graph has one
//! involution per vertex, with two generators commuting exactly when their
//! vertices are adjacent. This crate works purely at the level of the
//! defining graph:
//!
//! * [`cycles`] enumerates induced cycles, with a brute-force oracle;
//! * [`burst`] finds square diagonals and decides whether a cycle is burst;
//! * [`tran`] checks that every induced cycle of length at least four is
//!   burst;
//! * [`constructions`] doubles a graph over the star of a vertex and deletes
//!   that vertex, which yields the defining graph of an index-two reflection
//!   subgroup;
//! * [`search`] streams graph6 corpora looking for graphs that satisfy the
//!   burst condition while one of their star doubles does not.

mod bits;
pub mod burst;
pub mod constructions;
pub mod cycles;
pub mod edges;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod search;
pub mod tran;

pub use bits::VertexSet;
pub use burst::{is_burst, is_square_diagonal, square_diagonal_pairs, BurstWitness, SquareIndex};
pub use constructions::{
    double_over, iterate_doubles, star_double_minus, DoubleResult, IterateOptions, VertexPolicy,
};
pub use cycles::{
    brute_force_induced_cycles, enumerate_induced_cycles, induced_cycles, EnumBounds, InducedCycle,
};
pub use edges::{parse_edge_list, write_edge_list};
pub use generators::{all_graphs, gen_complete, gen_cycle, gen_hypercube, gen_path, gen_random};
pub use graph::{Graph, GraphError, GraphSource};
pub use graph6::{parse_graph6, to_graph6_string, write_graph6};
pub use iso::{are_isomorphic, canonical_form, find_isomorphism};
pub use search::{scan_stream, CounterexampleRecord, ScanOptions, ScanStats, SearchCheckpoint};
pub use tran::{annotate_verdict, check_tran_condition, TranOptions, TranVerdict};
