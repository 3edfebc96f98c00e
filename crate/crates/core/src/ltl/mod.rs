//! LTL_f: syntax, parsing, canonical forms, finite-trace semantics, and
//! formula progression.
//!
//! A formula is interpreted over a finite, nonempty trace: a sequence of
//! symbols, each symbol being the set of propositions true at that step.
//! [`check`] is the direct recursive satisfaction relation and serves as the
//! semantic oracle for everything else in the crate; the automaton
//! construction in [`crate::automata`] is validated against it, never the
//! other way around.

mod alphabet;
mod check;
mod formula;
mod gen;
mod parser;
mod printer;
mod progress;

pub use alphabet::{Alphabet, Proposition, Symbol, Trace, full_symbol_set, MAX_ENUM_PROPS};
pub use check::check;
pub use formula::Formula;
pub use gen::{random_formula, ComplexityParams};
pub use parser::{parse, parse_batch};
pub use printer::print;
pub use progress::{accepts_empty, progress};
