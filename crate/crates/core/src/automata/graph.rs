//! Formula-labeled DFA graphs: compaction of parallel symbol transitions
//! into one propositional guard per ordered state pair.

use std::collections::BTreeMap;

use super::cubes::{cubes_to_formula, merge_cubes, negated_cubes_to_formula, Cube};
use super::dfa::Dfa;
use crate::ltl::{Alphabet, Formula, Symbol};

/// Which two-level normal form guards are rendered in.
///
/// `Dnf` (OR of assignment cubes) falls directly out of transition merging;
/// `Cnf` complements the OFF-set instead. Both label the same symbol set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NormalForm {
    #[default]
    Dnf,
    Cnf,
}

/// Options for [`compact_edges_with`].
#[derive(Clone, Debug, Default)]
pub struct GraphOptions {
    pub normal_form: NormalForm,
    /// Drop states that can never reach acceptance (the universal-reject
    /// sink). Off by default: completeness is what makes the outgoing
    /// guards of every state exclusive *and* exhaustive.
    pub drop_trap: bool,
}

/// A node of the labeled graph; a state may be initial and accepting at
/// the same time, so roles are independent bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfaNodeInfo {
    pub initial: bool,
    pub accepting: bool,
    /// Non-accepting with no path to acceptance; kept unless dropped via
    /// [`GraphOptions::drop_trap`].
    pub trap: bool,
}

/// A compacted edge: all symbol transitions `src → dst` as one guard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledEdge {
    pub src: usize,
    pub dst: usize,
    pub guard: Formula,
}

/// A DFA as a directed graph with propositional edge guards.
///
/// Invariants (with traps kept): guards are purely propositional, and the
/// guards out of each node are mutually exclusive and jointly exhaustive
/// over the symbol set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDfaGraph {
    pub alphabet: Alphabet,
    pub symbols: Vec<Symbol>,
    pub nodes: Vec<DfaNodeInfo>,
    pub edges: Vec<LabeledEdge>,
}

impl LabeledDfaGraph {
    pub fn initial(&self) -> usize {
        self.nodes.iter().position(|n| n.initial).expect("exactly one initial node")
    }

    /// Outgoing edge indices of a node, in edge order.
    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.src == node).map(|(i, _)| i)
    }
}

/// Compact with default options (DNF guards, traps kept).
pub fn compact_edges(a: &Dfa) -> LabeledDfaGraph {
    compact_edges_with(a, &GraphOptions::default())
}

/// Merge the parallel symbol transitions of each ordered state pair into a
/// single two-level guard formula.
///
/// Expects a minimized automaton (works on any complete one). Edges are
/// emitted in `(src, dst)` order.
pub fn compact_edges_with(a: &Dfa, opts: &GraphOptions) -> LabeledDfaGraph {
    let n_props = a.alphabet().len();
    let traps = a.trap_states();
    let n = a.state_count();

    let keep: Vec<bool> = (0..n).map(|s| !(opts.drop_trap && traps[s])).collect();
    let mut renumber = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if keep[s] {
            renumber[s] = next;
            next += 1;
        }
    }

    let mut nodes = Vec::with_capacity(next);
    for s in 0..n {
        if keep[s] {
            nodes.push(DfaNodeInfo {
                initial: s == a.initial(),
                accepting: a.is_accepting(s),
                trap: traps[s],
            });
        }
    }

    let mut edges = Vec::new();
    for src in 0..n {
        if !keep[src] {
            continue;
        }
        let mut by_dst: BTreeMap<usize, Vec<Symbol>> = BTreeMap::new();
        for (k, &sym) in a.symbols().iter().enumerate() {
            let dst = a.step_by_index(src, k);
            by_dst.entry(dst).or_default().push(sym);
        }
        for (dst, syms) in by_dst {
            if !keep[dst] {
                continue;
            }
            let guard = match opts.normal_form {
                NormalForm::Dnf => {
                    let cubes = syms.iter().map(|&s| Cube::from_symbol(s, n_props)).collect();
                    cubes_to_formula(&merge_cubes(cubes))
                }
                NormalForm::Cnf => {
                    let off: Vec<Cube> = a
                        .symbols()
                        .iter()
                        .filter(|s| !syms.contains(s))
                        .map(|&s| Cube::from_symbol(s, n_props))
                        .collect();
                    negated_cubes_to_formula(&merge_cubes(off))
                }
            };
            edges.push(LabeledEdge { src: renumber[src], dst: renumber[dst], guard });
        }
    }

    LabeledDfaGraph {
        alphabet: a.alphabet().clone(),
        symbols: a.symbols().to_vec(),
        nodes,
        edges,
    }
}

/// Truth-table check of guard determinism: for every node and every symbol,
/// exactly one outgoing guard must hold. Returns `(node, symbol, holds)` for
/// each violation; empty means exclusive and exhaustive.
///
/// Only meaningful for graphs that kept their trap states.
pub fn guard_violations(g: &LabeledDfaGraph) -> Vec<(usize, Symbol, usize)> {
    let mut bad = Vec::new();
    for node in 0..g.nodes.len() {
        let guards: Vec<&Formula> =
            g.out_edges(node).map(|e| &g.edges[e].guard).collect();
        for &sym in &g.symbols {
            let holds = guards.iter().filter(|f| f.eval_prop(sym)).count();
            if holds != 1 {
                bad.push((node, sym, holds));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile;
    use crate::ltl::parse;

    fn graph_for(text: &str, names: &[&str], opts: &GraphOptions) -> LabeledDfaGraph {
        let mut ab = Alphabet::with_names(names.iter().copied()).unwrap();
        let f = parse(text, &mut ab).unwrap().canonical();
        compact_edges_with(&compile(&f, &ab).unwrap().minimized(), opts)
    }

    #[test]
    fn single_atom_two_cubes() {
        let g = graph_for("p", &["p"], &GraphOptions::default());
        // Initial, accept-all, reject-all.
        assert_eq!(g.nodes.len(), 3);
        let init = g.initial();
        let out: Vec<&LabeledEdge> = g.edges.iter().filter(|e| e.src == init).collect();
        assert_eq!(out.len(), 2);
        let guards: Vec<String> =
            out.iter().map(|e| crate::ltl::print(&e.guard, &g.alphabet)).collect();
        assert!(guards.contains(&"p".to_string()));
        assert!(guards.contains(&"!p".to_string()));
    }

    #[test]
    fn free_variable_is_merged_away() {
        // Over {p,q}, the transitions of `p` from the initial state split
        // only on p; q must not appear in the guards.
        let g = graph_for("p", &["p", "q"], &GraphOptions::default());
        let init = g.initial();
        for ei in g.out_edges(init) {
            let guard = &g.edges[ei].guard;
            assert!(!guard.props().contains(&1), "q leaked into {guard:?}");
        }
    }

    #[test]
    fn guards_exclusive_and_exhaustive() {
        for text in ["p U q", "G (p -> X q)", "F p & G (q | p)", "true"] {
            let g = graph_for(text, &["p", "q"], &GraphOptions::default());
            assert!(guard_violations(&g).is_empty(), "{text}");
        }
    }

    #[test]
    fn cnf_guards_label_the_same_transitions() {
        let dnf = graph_for("p U q", &["p", "q"], &GraphOptions::default());
        let cnf = graph_for(
            "p U q",
            &["p", "q"],
            &GraphOptions { normal_form: NormalForm::Cnf, drop_trap: false },
        );
        assert_eq!(dnf.edges.len(), cnf.edges.len());
        for (e1, e2) in dnf.edges.iter().zip(&cnf.edges) {
            assert_eq!((e1.src, e1.dst), (e2.src, e2.dst));
            for &s in &dnf.symbols {
                assert_eq!(e1.guard.eval_prop(s), e2.guard.eval_prop(s));
            }
        }
        assert!(guard_violations(&cnf).is_empty());
    }

    #[test]
    fn drop_trap_removes_reject_sink() {
        let kept = graph_for("G p", &["p"], &GraphOptions::default());
        let dropped =
            graph_for("G p", &["p"], &GraphOptions { drop_trap: true, ..Default::default() });
        assert_eq!(kept.nodes.len(), 2);
        assert_eq!(dropped.nodes.len(), 1);
        assert!(dropped.nodes.iter().all(|n| !n.trap));
        // The surviving node keeps only its self-loop.
        assert_eq!(dropped.edges.len(), 1);
        assert_eq!(dropped.edges[0].src, dropped.edges[0].dst);
    }

    #[test]
    fn universal_language_is_one_node_one_self_edge() {
        let g = graph_for("true", &["p"], &GraphOptions::default());
        assert_eq!(g.nodes.len(), 1);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].guard, Formula::True);
        assert!(g.nodes[0].initial && g.nodes[0].accepting);
    }

    #[test]
    fn initial_may_be_accepting() {
        let g = graph_for("G p", &["p"], &GraphOptions::default());
        let init = &g.nodes[g.initial()];
        assert!(init.accepting, "G p accepts before consuming input suffix");
    }
}
