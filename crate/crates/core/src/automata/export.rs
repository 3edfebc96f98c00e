//! Serialization of labeled DFA graphs: Graphviz DOT for inspection and a
//! versioned JSON schema for round-tripping.

use serde::{Deserialize, Serialize};

use super::graph::{DfaNodeInfo, LabeledDfaGraph, LabeledEdge};
use crate::ltl::{full_symbol_set, parse, print, Alphabet, Symbol};
use crate::{Error, Result};

const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    version: u32,
    propositions: Vec<String>,
    /// Symbol set the guards range over, each symbol as the sorted list of
    /// propositions it sets. Omitted when the set is the full power set.
    #[serde(skip_serializing_if = "Option::is_none")]
    symbols: Option<Vec<Vec<String>>>,
    states: Vec<StateDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct StateDoc {
    id: usize,
    initial: bool,
    accepting: bool,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    src: usize,
    dst: usize,
    guard: String,
}

/// Render as pretty-printed JSON (schema version 1, stable field order).
/// Trap flags are not stored; they are recomputed on load by reachability.
pub fn graph_to_json(g: &LabeledDfaGraph) -> String {
    let full = full_symbol_set(g.alphabet.len())
        .map(|s| s == g.symbols)
        .unwrap_or(false);
    let symbols = (!full).then(|| {
        g.symbols
            .iter()
            .map(|s| s.ids().map(|i| g.alphabet.name(i).to_string()).collect())
            .collect()
    });
    let doc = GraphDoc {
        version: SCHEMA_VERSION,
        propositions: g.alphabet.names().to_vec(),
        symbols,
        states: g
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| StateDoc { id, initial: n.initial, accepting: n.accepting })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeDoc { src: e.src, dst: e.dst, guard: print(&e.guard, &g.alphabet) })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("graph serializes");
    out.push('\n');
    out
}

/// Parse a schema-version-1 graph document back into memory.
pub fn graph_from_json(text: &str) -> Result<LabeledDfaGraph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    if doc.version != SCHEMA_VERSION {
        return Err(Error::Format(format!(
            "unsupported graph schema version {} (expected {SCHEMA_VERSION})",
            doc.version
        )));
    }
    let mut alphabet = Alphabet::with_names(doc.propositions.iter().map(String::as_str))?;
    let symbols = match doc.symbols {
        Some(lists) => {
            let mut syms = Vec::with_capacity(lists.len());
            for list in &lists {
                let mut sym = Symbol::EMPTY;
                for name in list {
                    let id = alphabet
                        .lookup(name)
                        .ok_or_else(|| Error::UnknownProposition(name.clone()))?;
                    sym = sym.with(id);
                }
                syms.push(sym);
            }
            syms.sort();
            syms.dedup();
            syms
        }
        None => full_symbol_set(alphabet.len())?,
    };
    for (i, s) in doc.states.iter().enumerate() {
        if s.id != i {
            return Err(Error::Format(format!(
                "state ids must be 0..n in order; found id {} at position {i}",
                s.id
            )));
        }
    }
    if doc.states.iter().filter(|s| s.initial).count() != 1 {
        return Err(Error::Format("graph must have exactly one initial state".into()));
    }
    let n = doc.states.len();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        if e.src >= n || e.dst >= n {
            return Err(Error::Format(format!(
                "edge {} -> {} out of range for {n} states",
                e.src, e.dst
            )));
        }
        let guard = parse(&e.guard, &mut alphabet)?;
        if !guard.is_propositional() {
            return Err(Error::TemporalInGuard(e.guard.clone()));
        }
        edges.push(LabeledEdge { src: e.src, dst: e.dst, guard });
    }
    edges.sort_by_key(|e| (e.src, e.dst));
    let trap = recompute_traps(&doc.states, &edges);
    Ok(LabeledDfaGraph {
        alphabet,
        symbols,
        nodes: doc
            .states
            .iter()
            .zip(&trap)
            .map(|(d, &t)| DfaNodeInfo { initial: d.initial, accepting: d.accepting, trap: t })
            .collect(),
        edges,
    })
}

/// A state is a trap iff it is non-accepting and no edge path leads from it
/// to an accepting state; reverse reachability from the accepting set.
fn recompute_traps(states: &[StateDoc], edges: &[LabeledEdge]) -> Vec<bool> {
    let n = states.len();
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        rev[e.dst].push(e.src);
    }
    let mut alive = vec![false; n];
    let mut queue: Vec<usize> = (0..n).filter(|&i| states[i].accepting).collect();
    for &i in &queue {
        alive[i] = true;
    }
    while let Some(s) = queue.pop() {
        for &p in &rev[s] {
            if !alive[p] {
                alive[p] = true;
                queue.push(p);
            }
        }
    }
    alive.into_iter().map(|a| !a).collect()
}

/// Render as Graphviz DOT. Accepting states are `doublecircle`, the initial
/// state is marked by an arrow from a point node, traps are drawn dashed.
pub fn graph_to_dot(g: &LabeledDfaGraph) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n");
    for (i, node) in g.nodes.iter().enumerate() {
        let shape = if node.accepting { "doublecircle" } else { "circle" };
        let style = if node.trap { ", style=dashed" } else { "" };
        out.push_str(&format!("  q{i} [shape={shape}{style}];\n"));
    }
    out.push_str(&format!("  __start -> q{};\n", g.initial()));
    for e in &g.edges {
        let label = print(&e.guard, &g.alphabet).replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  q{} -> q{} [label=\"{label}\"];\n", e.src, e.dst));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compact_edges, compile, compile_with, CompileOptions};
    use crate::ltl::parse;

    fn sample(text: &str, names: &[&str]) -> LabeledDfaGraph {
        let mut ab = Alphabet::with_names(names.iter().copied()).unwrap();
        let f = parse(text, &mut ab).unwrap().canonical();
        compact_edges(&compile(&f, &ab).unwrap().minimized())
    }

    #[test]
    fn json_round_trip_is_identity() {
        for text in ["p U q", "G (p -> X q)", "F p"] {
            let g = sample(text, &["p", "q"]);
            let back = graph_from_json(&graph_to_json(&g)).unwrap();
            assert_eq!(g.nodes, back.nodes, "{text}");
            assert_eq!(g.symbols, back.symbols, "{text}");
            assert_eq!(g.edges.len(), back.edges.len(), "{text}");
            for (a, b) in g.edges.iter().zip(&back.edges) {
                assert_eq!((a.src, a.dst), (b.src, b.dst));
                // Guards survive print -> parse up to canonical form.
                assert_eq!(a.guard.clone().canonical(), b.guard.clone().canonical());
            }
        }
    }

    #[test]
    fn schema_field_names_are_stable() {
        let g = sample("p", &["p"]);
        let text = graph_to_json(&g);
        for field in ["\"version\"", "\"propositions\"", "\"states\"", "\"edges\"", "\"id\"",
            "\"initial\"", "\"accepting\"", "\"src\"", "\"dst\"", "\"guard\""]
        {
            assert!(text.contains(field), "missing {field} in {text}");
        }
        assert!(!text.contains("\"trap\""), "traps are derived, not stored");
    }

    #[test]
    fn trap_flags_are_recomputed_on_load() {
        // G p has a universal-reject state; the round trip must rediscover it.
        let g = sample("G p", &["p"]);
        assert!(g.nodes.iter().any(|n| n.trap));
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(
            g.nodes.iter().map(|n| n.trap).collect::<Vec<_>>(),
            back.nodes.iter().map(|n| n.trap).collect::<Vec<_>>()
        );
    }

    #[test]
    fn restricted_symbols_are_persisted() {
        let mut ab = Alphabet::with_names(["p", "q"]).unwrap();
        let f = parse("F p", &mut ab).unwrap().canonical();
        let syms = vec![Symbol::EMPTY, Symbol::from_ids([0]), Symbol::from_ids([1])];
        let opts = CompileOptions { symbols: Some(syms.clone()), ..Default::default() };
        let g = compact_edges(&compile_with(&f, &ab, &opts).unwrap().minimized());
        let text = graph_to_json(&g);
        assert!(text.contains("\"symbols\""));
        let back = graph_from_json(&text).unwrap();
        assert_eq!(back.symbols, syms);
    }

    #[test]
    fn full_symbol_set_is_implicit() {
        let g = sample("p", &["p"]);
        let text = graph_to_json(&g);
        assert!(!text.contains("\"symbols\""));
        assert_eq!(graph_from_json(&text).unwrap().symbols, full_symbol_set(1).unwrap());
    }

    #[test]
    fn dot_marks_roles() {
        let g = sample("G p", &["p"]);
        let dot = graph_to_dot(&g);
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("style=dashed"));
        assert!(dot.contains("__start -> q"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn bad_version_and_temporal_guards_are_rejected() {
        let g = sample("p", &["p"]);
        let good = graph_to_json(&g);
        let bad = good.replace("\"version\": 1", "\"version\": 9");
        assert!(graph_from_json(&bad).is_err());

        let temporal = good.replace("\"guard\": \"p\"", "\"guard\": \"X p\"");
        assert!(graph_from_json(&temporal).is_err());
    }

    #[test]
    fn out_of_order_state_ids_are_rejected() {
        let g = sample("p", &["p"]);
        let good = graph_to_json(&g);
        let bad = good.replacen("\"id\": 0", "\"id\": 7", 1);
        assert!(graph_from_json(&bad).is_err());
    }
}
