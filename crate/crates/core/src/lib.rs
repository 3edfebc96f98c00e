//! Finite-trace temporal logic, automata, and graph embeddings.
//!
//! The pipeline implemented here:
//!
//! 1. [`ltl`] — LTL_f formulas: parsing, canonicalization, finite-trace
//!    semantics (the model-checking oracle), and formula progression.
//! 2. [`automata`] — compilation of formulas into deterministic finite
//!    automata via progression, minimization, and compaction of parallel
//!    transitions into propositional edge guards.
//! 3. [`graphs`] — feature-graph views of automata, traces, syntax trees,
//!    and edge guards: the uniform input of the graph-convolutional nets.
//! 4. [`nn`] — a minimal deterministic tensor/autodiff kernel with GCN and
//!    MLP layers, Adam, finite-difference checking, and checkpoint I/O.
//! 5. [`embedder`] — the hierarchical embedder (edge embedder + meta
//!    embedder) trained with a triplet loss, plus the differentiable
//!    logic loss over soft traces.
//! 6. [`datasets`] — synthetic corpora of formulas with satisfying and
//!    unsatisfying traces, sampled through the compiled automata.
//! 7. [`experiment`] — the model-checking benchmark: embedder + MLP
//!    classifier across complexity regimes, with embedding export.
//! 8. [`cooking`] — a symbolic cooking environment with a temporal-logic
//!    knowledge base, scripted expert, and logic-loss trajectory scoring.
//!
//! Everything is deterministic given explicit seeds; no global state.

pub mod automata;
pub mod cooking;
pub mod datasets;
pub mod embedder;
pub mod error;
pub mod experiment;
pub mod graphs;
pub mod ltl;
pub mod nn;
pub mod util;

pub use error::{Error, Result};
