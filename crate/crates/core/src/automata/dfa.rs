//! Compilation by progression, partition-refinement minimization, and runs.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::ltl::{accepts_empty, full_symbol_set, progress, Alphabet, Formula, Symbol, Trace};

/// Knobs for [`compile_with`].
#[derive(Clone, Debug)]
pub struct CompileOptions {
    /// Abort when the residual exploration discovers more states than this.
    pub state_cap: usize,
    /// Symbol set to compile over; `None` means the full 2^n set of the
    /// alphabet. Restricted sets keep automata small for large alphabets
    /// whose traces only ever use a few symbol shapes.
    pub symbols: Option<Vec<Symbol>>,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { state_cap: 10_000, symbols: None }
    }
}

/// A complete, deterministic automaton over an explicit symbol set.
///
/// Invariants: `delta` is total over states × symbols; exactly one initial
/// state; every state is reachable from it.
#[derive(Clone, Debug)]
pub struct Dfa {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
    symbol_index: BTreeMap<Symbol, usize>,
    residuals: Vec<Formula>,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn state_count(&self) -> usize {
        self.residuals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn residual(&self, state: usize) -> &Formula {
        &self.residuals[state]
    }

    /// Transition on a symbol that must belong to the symbol set.
    pub fn step(&self, state: usize, sym: Symbol) -> Result<usize> {
        let k = self.symbol_index.get(&sym).ok_or_else(|| {
            Error::AlphabetMismatch(format!("symbol {sym:?} is not in the automaton's symbol set"))
        })?;
        Ok(self.delta[state][*k])
    }

    /// Transition by symbol index (bounds-checked by the vector).
    pub fn step_by_index(&self, state: usize, sym_idx: usize) -> usize {
        self.delta[state][sym_idx]
    }

    /// Execute the automaton on a trace; true iff the final state accepts.
    pub fn run(&self, w: &Trace) -> Result<bool> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch(
                "trace and automaton alphabets differ".into(),
            ));
        }
        let mut state = self.initial;
        for &sym in w.steps() {
            state = self.step(state, sym)?;
        }
        Ok(self.accepting[state])
    }

    /// Minimized copy; see [`minimize`].
    pub fn minimized(&self) -> Dfa {
        minimize(self)
    }

    /// States that are non-accepting and cannot reach an accepting state.
    pub fn trap_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, row) in self.delta.iter().enumerate() {
            for &t in row {
                rev[t].push(s);
            }
        }
        let mut alive = vec![false; n];
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&s| self.accepting[s]).inspect(|&s| alive[s] = true).collect();
        while let Some(s) = queue.pop_front() {
            for &p in &rev[s] {
                if !alive[p] {
                    alive[p] = true;
                    queue.push_back(p);
                }
            }
        }
        alive.iter().map(|a| !a).collect()
    }

    /// Renumber states in BFS discovery order (initial first, symbol order
    /// fixed). Two automata over the same symbol list are isomorphic iff
    /// their canonical keys are equal.
    fn canonical_key(&self) -> (Vec<Vec<usize>>, Vec<bool>) {
        let n = self.state_count();
        let mut order = vec![usize::MAX; n];
        let mut seq = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        order[self.initial] = 0;
        seq.push(self.initial);
        queue.push_back(self.initial);
        while let Some(s) = queue.pop_front() {
            for &t in &self.delta[s] {
                if order[t] == usize::MAX {
                    order[t] = seq.len();
                    seq.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta = seq
            .iter()
            .map(|&s| self.delta[s].iter().map(|&t| order[t]).collect())
            .collect();
        let acc = seq.iter().map(|&s| self.accepting[s]).collect();
        (delta, acc)
    }
}

/// Structural equivalence up to state renaming (same symbol set required).
pub fn isomorphic(a: &Dfa, b: &Dfa) -> bool {
    a.symbols == b.symbols && a.canonical_key() == b.canonical_key()
}

/// Compile with default options (full symbol set, 10k state cap).
pub fn compile(f: &Formula, alphabet: &Alphabet) -> Result<Dfa> {
    compile_with(f, alphabet, &CompileOptions::default())
}

/// Compile `f` into a DFA by worklist exploration of canonical residuals.
///
/// The input is canonicalized first; states are the distinct canonical
/// residuals discovered, the initial state is `f` itself, and a state
/// accepts iff its residual holds on the empty continuation. All discovered
/// states are reachable by construction.
pub fn compile_with(f: &Formula, alphabet: &Alphabet, opts: &CompileOptions) -> Result<Dfa> {
    if let Some(max) = f.max_prop() {
        if max as usize >= alphabet.len() {
            return Err(Error::AlphabetMismatch(format!(
                "formula uses proposition id {max}, alphabet has {} names",
                alphabet.len()
            )));
        }
    }
    let symbols = match &opts.symbols {
        Some(s) => {
            if s.is_empty() {
                return Err(Error::AlphabetMismatch("empty symbol set".into()));
            }
            let mut s = s.clone();
            s.sort();
            s.dedup();
            if let Some(bad) = s.iter().find(|sym| !sym.fits(alphabet)) {
                return Err(Error::AlphabetMismatch(format!(
                    "symbol {bad:?} outside the alphabet"
                )));
            }
            s
        }
        None => full_symbol_set(alphabet.len())?,
    };

    let start = f.canonical();
    let mut index: HashMap<Formula, usize> = HashMap::new();
    let mut residuals = vec![start.clone()];
    index.insert(start, 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut next_to_expand = 0;

    while next_to_expand < residuals.len() {
        let state = residuals[next_to_expand].clone();
        let mut row = Vec::with_capacity(symbols.len());
        for &sym in &symbols {
            let succ = progress(&state, sym);
            let id = match index.get(&succ) {
                Some(&id) => id,
                None => {
                    let id = residuals.len();
                    if id >= opts.state_cap {
                        return Err(Error::TooComplex { cap: opts.state_cap });
                    }
                    residuals.push(succ.clone());
                    index.insert(succ, id);
                    id
                }
            };
            row.push(id);
        }
        delta.push(row);
        next_to_expand += 1;
    }

    let accepting = residuals.iter().map(accepts_empty).collect();
    let symbol_index = symbols.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    Ok(Dfa {
        alphabet: alphabet.clone(),
        symbols,
        symbol_index,
        residuals,
        initial: 0,
        accepting,
        delta,
    })
}

/// Moore-style partition refinement.
///
/// Language-preserving, never increases the state count, idempotent. The
/// representative residual of a merged class is the structurally smallest
/// member, so minimized automata are deterministic values.
pub fn minimize(a: &Dfa) -> Dfa {
    let n = a.state_count();
    let mut class: Vec<usize> = a.accepting.iter().map(|&acc| usize::from(acc)).collect();
    // Refine by (class, successor classes) signatures until the labeling is
    // stable. Class ids are normalized to first-occurrence order each round,
    // so the fixpoint labeling is deterministic. Signatures include the
    // current class, so partitions only ever refine; the loop runs at most
    // n+1 rounds.
    loop {
        let mut sig_to_class: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next_class = vec![0usize; n];
        for s in 0..n {
            let sig = (class[s], a.delta[s].iter().map(|&t| class[t]).collect::<Vec<_>>());
            let fresh = sig_to_class.len();
            let id = *sig_to_class.entry(sig).or_insert(fresh);
            next_class[s] = id;
        }
        if next_class == class {
            break;
        }
        class = next_class;
    }

    let class_count = class.iter().max().map_or(0, |m| m + 1);
    // Representative = smallest residual in the class; delta taken from any
    // member (identical across the class at fixpoint).
    let mut rep: Vec<Option<usize>> = vec![None; class_count];
    let mut residuals: Vec<Option<Formula>> = vec![None; class_count];
    for s in 0..n {
        let c = class[s];
        if rep[c].is_none() {
            rep[c] = Some(s);
        }
        let better = match &residuals[c] {
            None => true,
            Some(cur) => a.residuals[s] < *cur,
        };
        if better {
            residuals[c] = Some(a.residuals[s].clone());
        }
    }
    let rep: Vec<usize> = rep.into_iter().map(|r| r.expect("class has a member")).collect();
    let delta: Vec<Vec<usize>> = rep
        .iter()
        .map(|&s| a.delta[s].iter().map(|&t| class[t]).collect())
        .collect();
    let accepting: Vec<bool> = rep.iter().map(|&s| a.accepting[s]).collect();
    let residuals: Vec<Formula> =
        residuals.into_iter().map(|r| r.expect("class has a member")).collect();

    Dfa {
        alphabet: a.alphabet.clone(),
        symbols: a.symbols.clone(),
        symbol_index: a.symbol_index.clone(),
        residuals,
        initial: class[a.initial],
        accepting,
        delta,
    }
}
