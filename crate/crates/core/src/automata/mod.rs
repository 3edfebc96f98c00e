//! Deterministic finite automata compiled from LTL_f formulas.
//!
//! Compilation works by formula progression: states are canonical residual
//! formulas, transitions rewrite a residual against one symbol, and a state
//! accepts iff its residual holds on the empty continuation. The automaton
//! is then minimized by partition refinement, and parallel symbol
//! transitions between a state pair are compacted into one propositional
//! guard formula via cube merging.

mod cubes;
mod dfa;
mod export;
mod graph;

pub use cubes::{merge_cubes, Cube};
pub use dfa::{compile, compile_with, isomorphic, minimize, CompileOptions, Dfa};
pub use export::{graph_from_json, graph_to_dot, graph_to_json};
pub use graph::{
    compact_edges, compact_edges_with, guard_violations, DfaNodeInfo, GraphOptions, LabeledDfaGraph,
    LabeledEdge, NormalForm,
};
