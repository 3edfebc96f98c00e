//! Feature graphs: the shared node-feature/arc representation consumed by
//! the graph-convolution embedder.
//!
//! Three graph families live in one 113-dimensional node layout (automata,
//! traces, syntax trees) so a single network can embed all of them; guard
//! formulas get their own small 38-dimensional layout for the edge-content
//! network. Node rows split into constant structure bits (roles, operator
//! kinds, direction flags), written here, and a content region that the
//! embedder fills in later: either a learned guard embedding or a learned
//! proposition feature. Each node records which in [`ContentSlot`], keeping
//! graph construction independent of model parameters.

use crate::automata::{Cube, LabeledDfaGraph};
use crate::ltl::{Alphabet, Formula, Trace};
use crate::{Error, Result};

/// Width of a learned proposition feature.
pub const PROP_FEATURE_DIM: usize = 32;
/// Width of a guard embedding, i.e. the edge-content region.
pub const CONTENT_DIM: usize = 100;

/// Node layout for automaton, trace, and syntax-tree graphs.
pub const META_NODE_DIM: usize = 4 + 8 + CONTENT_DIM + 1;
pub const ROLE_INITIAL: usize = 0;
pub const ROLE_ACCEPTING: usize = 1;
pub const ROLE_STATE: usize = 2;
pub const ROLE_EDGE: usize = 3;
/// Operator-kind one-hot block starts here; offsets follow [`Formula`]
/// variant order (True, False, Atom, Not, And, Or, Next, Until).
pub const KIND_BASE: usize = 4;
pub const META_CONTENT: usize = 12;
/// Marks the continuation (right) operand of an `Until` node.
pub const META_DIR: usize = META_CONTENT + CONTENT_DIM;

/// Node layout for guard graphs.
pub const GUARD_NODE_DIM: usize = 5 + PROP_FEATURE_DIM + 1;
pub const GUARD_OR: usize = 0;
pub const GUARD_AND: usize = 1;
pub const GUARD_LIT: usize = 2;
pub const GUARD_TRUE: usize = 3;
pub const GUARD_FALSE: usize = 4;
pub const GUARD_PROP: usize = 5;
pub const GUARD_NEG: usize = GUARD_PROP + PROP_FEATURE_DIM;

/// What the embedder scatters into a node's content region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContentSlot {
    /// The embedding of `guards[idx]`, [`CONTENT_DIM`] wide.
    Guard(usize),
    /// The feature of one proposition, [`PROP_FEATURE_DIM`] wide,
    /// left-aligned in the content region.
    Prop(u32),
}

/// Debugging label for a node; the features are authoritative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeTag {
    State,
    EdgeNode,
    Operator,
    Literal,
}

/// A graph with per-node feature rows, ready for convolution.
///
/// `base` holds the structural feature bits with every content region
/// zeroed; `slots` says per node what belongs in that region. Arcs are
/// directed as the random walk should move; convolution symmetrizes them.
#[derive(Clone, Debug)]
pub struct FeatureGraph {
    pub dim: usize,
    /// Row-major `n_nodes x dim`.
    pub base: Vec<f32>,
    pub slots: Vec<Option<ContentSlot>>,
    pub tags: Vec<NodeTag>,
    pub arcs: Vec<(usize, usize)>,
    /// Random walks start here.
    pub start: usize,
    /// Guard formulas referenced by [`ContentSlot::Guard`]. For trace
    /// graphs there is exactly one per step, in step order.
    pub guards: Vec<Formula>,
    pub alphabet: Alphabet,
    /// First column of the content region (layout dependent).
    pub content_offset: usize,
}

impl FeatureGraph {
    fn new(dim: usize, content_offset: usize, alphabet: Alphabet) -> Self {
        FeatureGraph {
            dim,
            base: Vec::new(),
            slots: Vec::new(),
            tags: Vec::new(),
            arcs: Vec::new(),
            start: 0,
            guards: Vec::new(),
            alphabet,
            content_offset,
        }
    }

    fn push_node(&mut self, tag: NodeTag, slot: Option<ContentSlot>) -> usize {
        let id = self.slots.len();
        self.base.extend(std::iter::repeat(0.0).take(self.dim));
        self.slots.push(slot);
        self.tags.push(tag);
        id
    }

    fn set(&mut self, node: usize, col: usize, value: f32) {
        self.base[node * self.dim + col] = value;
    }

    pub fn n_nodes(&self) -> usize {
        self.slots.len()
    }

    pub fn row(&self, node: usize) -> &[f32] {
        &self.base[node * self.dim..(node + 1) * self.dim]
    }

    /// Out-neighbor lists in arc order, for walking.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_nodes()];
        for &(a, b) in &self.arcs {
            adj[a].push(b);
        }
        adj
    }

    /// Stable fingerprint of structure and constant features, independent
    /// of anything learned. Used to derive evaluation-time walk seeds.
    pub fn topology_hash(&self) -> u64 {
        let mut h = crate::util::Fnv64::new();
        h.write_usize(self.dim);
        h.write_usize(self.n_nodes());
        h.write_usize(self.start);
        for &(a, b) in &self.arcs {
            h.write_usize(a);
            h.write_usize(b);
        }
        for v in &self.base {
            h.write_u64(v.to_bits() as u64);
        }
        for slot in &self.slots {
            match slot {
                None => {
                    h.write_u64(0);
                }
                Some(ContentSlot::Guard(i)) => {
                    h.write_u64(1);
                    h.write_usize(*i);
                }
                Some(ContentSlot::Prop(p)) => {
                    h.write_u64(2);
                    h.write_u64(*p as u64);
                }
            }
        }
        h.finish()
    }
}

fn kind_index(f: &Formula) -> usize {
    match f {
        Formula::True => 0,
        Formula::False => 1,
        Formula::Atom(_) => 2,
        Formula::Not(_) => 3,
        Formula::And(_) => 4,
        Formula::Or(_) => 5,
        Formula::Next(_) => 6,
        Formula::Until(..) => 7,
    }
}

/// Automaton graph: one node per state, one node per compacted edge. Arcs
/// run state -> edge node -> state, so walks follow the transition flow.
pub fn dfa_to_feature_graph(g: &LabeledDfaGraph) -> FeatureGraph {
    let mut fg = FeatureGraph::new(META_NODE_DIM, META_CONTENT, g.alphabet.clone());
    for info in &g.nodes {
        let v = fg.push_node(None);
        fg.set(v, ROLE_STATE, 1.0);
        if info.initial {
            fg.set(v, ROLE_INITIAL, 1.0);
            fg.start = v;
        }
        if info.accepting {
            fg.set(v, ROLE_ACCEPTING, 1.0);
        }
    }
    for (j, edge) in g.edges.iter().enumerate() {
        let e = fg.push_node(Some(ContentSlot::Guard(j)));
        fg.set(e, ROLE_EDGE, 1.0);
        fg.arcs.push((edge.src, e));
        fg.arcs.push((e, edge.dst));
        fg.guards.push(edge.guard.clone());
    }
    fg
}

/// Trace graph: a chain of position nodes joined by step edge nodes, the
/// degenerate automaton accepting exactly this trace. Step content is the
/// closed-world cube of the step's symbol, so absence is as visible as
/// presence.
pub fn trace_to_feature_graph(w: &Trace) -> FeatureGraph {
    let n_props = w.alphabet().len();
    let mut fg = FeatureGraph::new(META_NODE_DIM, META_CONTENT, w.alphabet().clone());
    let n = w.len();
    let mut prev = fg.push_node(None);
    fg.set(prev, ROLE_STATE, 1.0);
    fg.set(prev, ROLE_INITIAL, 1.0);
    fg.start = prev;
    for (k, &sym) in w.steps().iter().enumerate() {
        let e = fg.push_node(Some(ContentSlot::Guard(k)));
        fg.set(e, ROLE_EDGE, 1.0);
        fg.guards.push(Cube::from_symbol(sym, n_props).to_formula());
        let v = fg.push_node(None);
        fg.set(v, ROLE_STATE, 1.0);
        if k + 1 == n {
            fg.set(v, ROLE_ACCEPTING, 1.0);
        }
        fg.arcs.push((prev, e));
        fg.arcs.push((e, v));
        prev = v;
    }
    fg
}

/// Syntax-tree graph of a formula. Variadic conjunction and disjunction
/// are binarized by a left fold so node arity is bounded; arcs run both
/// ways so walks can reach the whole tree from the root. The direction
/// flag marks the continuation operand of each `Until`, the one binary
/// operator where operand order matters.
pub fn syntax_tree_graph(f: &Formula, alphabet: &Alphabet) -> FeatureGraph {
    let mut fg = FeatureGraph::new(META_NODE_DIM, META_CONTENT, alphabet.clone());
    let root = build_tree(&mut fg, f, false);
    fg.start = root;
    fg
}

fn build_tree(fg: &mut FeatureGraph, f: &Formula, until_rhs: bool) -> usize {
    let slot = match f {
        Formula::Atom(p) => Some(ContentSlot::Prop(*p)),
        _ => None,
    };
    let v = fg.push_node(slot);
    fg.set(v, KIND_BASE + kind_index(f), 1.0);
    if until_rhs {
        fg.set(v, META_DIR, 1.0);
    }
    let link = |fg: &mut FeatureGraph, child: usize| {
        fg.arcs.push((v, child));
        fg.arcs.push((child, v));
    };
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => {}
        Formula::Not(x) | Formula::Next(x) => {
            let c = build_tree(fg, x, false);
            link(fg, c);
        }
        Formula::And(xs) | Formula::Or(xs) => match xs.len() {
            0 | 1 => unreachable!("canonical n-ary operators have >= 2 children"),
            2 => {
                for x in xs {
                    let c = build_tree(fg, x, false);
                    link(fg, c);
                }
            }
            _ => {
                // Left fold: op(a, b, c) becomes op(op(a, b), c).
                let (last, rest) = xs.split_last().unwrap();
                let folded = match f {
                    Formula::And(_) => Formula::And(rest.to_vec()),
                    _ => Formula::Or(rest.to_vec()),
                };
                let left = build_tree(fg, &folded, false);
                link(fg, left);
                let right = build_tree(fg, last, false);
                link(fg, right);
            }
        },
        Formula::Until(a, b) => {
            let left = build_tree(fg, a, false);
            link(fg, left);
            let right = build_tree(fg, b, true);
            link(fg, right);
        }
    }
    v
}

/// Guard graph: the small two-level formula graph fed to the edge-content
/// network. Negations are pushed to the leaves first, so nodes are only
/// disjunctions, conjunctions, literals, and constants; arcs run both ways.
pub fn guard_graph(f: &Formula, alphabet: &Alphabet) -> Result<FeatureGraph> {
    if !f.is_propositional() {
        return Err(Error::TemporalInGuard(crate::ltl::print(f, alphabet)));
    }
    let nnf = push_negations(f, false);
    let mut fg = FeatureGraph::new(GUARD_NODE_DIM, GUARD_PROP, alphabet.clone());
    let root = build_guard(&mut fg, &nnf);
    fg.start = root;
    Ok(fg)
}

/// Negation normal form of a propositional formula.
fn push_negations(f: &Formula, neg: bool) -> Formula {
    match f {
        Formula::True => {
            if neg {
                Formula::False
            } else {
                Formula::True
            }
        }
        Formula::False => {
            if neg {
                Formula::True
            } else {
                Formula::False
            }
        }
        Formula::Atom(p) => {
            if neg {
                Formula::not(Formula::atom(*p))
            } else {
                Formula::atom(*p)
            }
        }
        Formula::Not(x) => push_negations(x, !neg),
        Formula::And(xs) => {
            let kids = xs.iter().map(|x| push_negations(x, neg)).collect();
            if neg {
                Formula::Or(kids)
            } else {
                Formula::And(kids)
            }
        }
        Formula::Or(xs) => {
            let kids = xs.iter().map(|x| push_negations(x, neg)).collect();
            if neg {
                Formula::And(kids)
            } else {
                Formula::Or(kids)
            }
        }
        Formula::Next(_) | Formula::Until(..) => {
            unreachable!("guards are validated propositional")
        }
    }
}

fn build_guard(fg: &mut FeatureGraph, f: &Formula) -> usize {
    match f {
        Formula::True => {
            let v = fg.push_node(None);
            fg.set(v, GUARD_TRUE, 1.0);
            v
        }
        Formula::False => {
            let v = fg.push_node(None);
            fg.set(v, GUARD_FALSE, 1.0);
            v
        }
        Formula::Atom(p) => {
            let v = fg.push_node(Some(ContentSlot::Prop(*p)));
            fg.set(v, GUARD_LIT, 1.0);
            v
        }
        Formula::Not(x) => match x.as_ref() {
            Formula::Atom(p) => {
                let v = fg.push_node(Some(ContentSlot::Prop(*p)));
                fg.set(v, GUARD_LIT, 1.0);
                fg.set(v, GUARD_NEG, 1.0);
                v
            }
            _ => unreachable!("negation normal form has literal negations only"),
        },
        Formula::And(xs) | Formula::Or(xs) => {
            let v = fg.push_node(None);
            let col = if matches!(f, Formula::And(_)) { GUARD_AND } else { GUARD_OR };
            fg.set(v, col, 1.0);
            for x in xs {
                let c = build_guard(fg, x);
                fg.arcs.push((v, c));
                fg.arcs.push((c, v));
            }
            v
        }
        Formula::Next(_) | Formula::Until(..) => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compact_edges, compile};
    use crate::ltl::parse;

    fn labeled(text: &str, names: &[&str]) -> LabeledDfaGraph {
        let mut ab = Alphabet::with_names(names.iter().copied()).unwrap();
        let f = parse(text, &mut ab).unwrap().canonical();
        compact_edges(&compile(&f, &ab).unwrap().minimized())
    }

    #[test]
    fn dfa_graph_size_and_roles() {
        let g = labeled("p", &["p"]);
        let fg = dfa_to_feature_graph(&g);
        assert_eq!(fg.n_nodes(), g.nodes.len() + g.edges.len());
        assert_eq!(fg.arcs.len(), 2 * g.edges.len());
        assert_eq!(fg.guards.len(), g.edges.len());
        let initials: Vec<usize> = (0..fg.n_nodes())
            .filter(|&v| fg.row(v)[ROLE_INITIAL] == 1.0)
            .collect();
        assert_eq!(initials, vec![fg.start]);
        // Arcs alternate between state nodes and edge nodes.
        for &(a, b) in &fg.arcs {
            let state_a = fg.row(a)[ROLE_STATE] == 1.0;
            let state_b = fg.row(b)[ROLE_STATE] == 1.0;
            assert_ne!(state_a, state_b);
        }
    }

    #[test]
    fn trace_graph_is_a_chain() {
        let mut ab = Alphabet::new();
        let w = Trace::parse("p; p,q; q", &mut ab).unwrap();
        let fg = trace_to_feature_graph(&w);
        assert_eq!(fg.n_nodes(), 2 * w.len() + 1);
        assert_eq!(fg.arcs.len(), 2 * w.len());
        assert_eq!(fg.start, 0);
        assert_eq!(fg.row(0)[ROLE_INITIAL], 1.0);
        let last = fg.n_nodes() - 1;
        assert_eq!(fg.row(last)[ROLE_ACCEPTING], 1.0);
        // Step guards are closed-world: each admits exactly its own symbol.
        let all = crate::ltl::full_symbol_set(ab.len()).unwrap();
        for (k, guard) in fg.guards.iter().enumerate() {
            for &s in &all {
                assert_eq!(guard.eval_prop(s), s == w.steps()[k], "step {k}");
            }
        }
    }

    #[test]
    fn syntax_tree_binarizes_and_marks_direction() {
        let mut ab = Alphabet::new();
        let f = parse("p U (q & r & p)", &mut ab).unwrap().canonical();
        let fg = syntax_tree_graph(&f, &ab);
        // until + left atom + two nested ands + three atoms = 7 nodes.
        assert_eq!(fg.n_nodes(), 7);
        assert_eq!(fg.arcs.len(), 2 * (fg.n_nodes() - 1));
        let dirs: Vec<usize> =
            (0..fg.n_nodes()).filter(|&v| fg.row(v)[META_DIR] == 1.0).collect();
        assert_eq!(dirs.len(), 1);
        assert_eq!(fg.row(dirs[0])[KIND_BASE + 4], 1.0, "continuation is the conjunction");
        assert_eq!(fg.row(fg.start)[KIND_BASE + 7], 1.0, "root is the until node");
    }

    #[test]
    fn syntax_tree_distinguishes_until_order() {
        let mut ab = Alphabet::new();
        let f1 = parse("p U q", &mut ab).unwrap();
        let f2 = parse("q U p", &mut ab).unwrap();
        let g1 = syntax_tree_graph(&f1, &ab);
        let g2 = syntax_tree_graph(&f2, &ab);
        assert_ne!(g1.topology_hash(), g2.topology_hash());
    }

    #[test]
    fn guard_graph_two_level_shape() {
        let mut ab = Alphabet::with_names(["p", "q", "r"]).unwrap();
        let f = parse("(p & !q) | r", &mut ab).unwrap();
        let fg = guard_graph(&f, &ab).unwrap();
        assert_eq!(fg.dim, GUARD_NODE_DIM);
        assert_eq!(fg.n_nodes(), 5);
        assert_eq!(fg.arcs.len(), 8);
        assert_eq!(fg.row(fg.start)[GUARD_OR], 1.0);
        let negs: Vec<usize> =
            (0..fg.n_nodes()).filter(|&v| fg.row(v)[GUARD_NEG] == 1.0).collect();
        assert_eq!(negs.len(), 1);
        assert_eq!(fg.slots[negs[0]], Some(ContentSlot::Prop(1)));
    }

    #[test]
    fn guard_graph_degenerate_forms() {
        let mut ab = Alphabet::with_names(["p", "q"]).unwrap();
        for (text, n_nodes) in [("p", 1), ("true", 1), ("!p", 1), ("p & q", 3)] {
            let f = parse(text, &mut ab).unwrap();
            let fg = guard_graph(&f, &ab).unwrap();
            assert_eq!(fg.n_nodes(), n_nodes, "{text}");
        }
    }

    #[test]
    fn guard_graph_pushes_negations_in() {
        let mut ab = Alphabet::with_names(["p", "q"]).unwrap();
        let f = Formula::not(parse("p & q", &mut ab).unwrap());
        let fg = guard_graph(&f, &ab).unwrap();
        assert_eq!(fg.row(fg.start)[GUARD_OR], 1.0);
        let negs = (0..fg.n_nodes()).filter(|&v| fg.row(v)[GUARD_NEG] == 1.0).count();
        assert_eq!(negs, 2);
    }

    #[test]
    fn guard_graph_rejects_temporal() {
        let mut ab = Alphabet::new();
        let f = parse("X p", &mut ab).unwrap();
        assert!(guard_graph(&f, &ab).is_err());
    }

    #[test]
    fn dfa_graph_walkable_from_start() {
        // Every kept node of a complete automaton has an outgoing arc,
        // so walks never stall on state nodes.
        let g = labeled("G (p -> X q)", &["p", "q"]);
        let fg = dfa_to_feature_graph(&g);
        let adj = fg.adjacency();
        for v in 0..fg.n_nodes() {
            if fg.row(v)[ROLE_STATE] == 1.0 {
                assert!(!adj[v].is_empty(), "state node {v} has no out arc");
            }
        }
    }
}
