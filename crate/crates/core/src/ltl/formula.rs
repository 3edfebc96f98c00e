//! The LTL_f abstract syntax tree and its canonical form.

use std::collections::BTreeSet;

use super::alphabet::Symbol;

/// An LTL_f formula over proposition ids.
///
/// `And`/`Or` are stored n-ary. The derived `Ord` is the structural total
/// order used to sort And/Or children in canonical form. Sugar (`F`, `G`,
/// `->`) is desugared at parse time and never appears here.
///
/// Canonical form (the result of [`Formula::canonical`]):
/// - And/Or children are canonical, flattened (no And directly inside And),
///   sorted, deduplicated, with at least two children;
/// - no `True`/`False` absorbable children and no complementary sibling
///   pairs (`x` alongside `!x`);
/// - no double negation, no negated constants;
/// - no `Until` with a constant argument and no `Until(False, _)` (these
///   collapse to equivalents that agree with the original at every position
///   of a nonempty trace, the only places formulas are evaluated).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(u32),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(id: u32) -> Self {
        Formula::Atom(id)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(children: Vec<Formula>) -> Self {
        Formula::And(children)
    }

    pub fn or(children: Vec<Formula>) -> Self {
        Formula::Or(children)
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        Formula::Until(Box::new(a), Box::new(b))
    }

    /// `F f` as its core desugaring `true U f`.
    pub fn eventually(f: Formula) -> Self {
        Formula::until(Formula::True, f)
    }

    /// `G f` as its core desugaring `!(true U !f)`.
    pub fn always(f: Formula) -> Self {
        Formula::not(Formula::until(Formula::True, Formula::not(f)))
    }

    /// Node count of the stored tree (an n-ary node counts once).
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Next(f) => 1 + f.size(),
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::size).sum::<usize>(),
            Formula::Until(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Collect the ids of all propositions appearing in the formula.
    pub fn props(&self) -> BTreeSet<u32> {
        let mut set = BTreeSet::new();
        self.collect_props(&mut set);
        set
    }

    fn collect_props(&self, set: &mut BTreeSet<u32>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(p) => {
                set.insert(*p);
            }
            Formula::Not(f) | Formula::Next(f) => f.collect_props(set),
            Formula::And(cs) | Formula::Or(cs) => {
                for c in cs {
                    c.collect_props(set);
                }
            }
            Formula::Until(a, b) => {
                a.collect_props(set);
                b.collect_props(set);
            }
        }
    }

    /// Largest proposition id, if any.
    pub fn max_prop(&self) -> Option<u32> {
        self.props().into_iter().next_back()
    }

    /// True when the formula contains no temporal operator.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_propositional(),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().all(Formula::is_propositional),
            Formula::Next(_) | Formula::Until(_, _) => false,
        }
    }

    /// Evaluate a propositional formula on one symbol.
    ///
    /// Panics on temporal operators; callers guard with
    /// [`Formula::is_propositional`].
    pub fn eval_prop(&self, sym: Symbol) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(p) => sym.contains(*p),
            Formula::Not(f) => !f.eval_prop(sym),
            Formula::And(cs) => cs.iter().all(|c| c.eval_prop(sym)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval_prop(sym)),
            Formula::Next(_) | Formula::Until(_, _) => {
                panic!("eval_prop on temporal formula")
            }
        }
    }

    /// Rewrite into canonical form. Idempotent and semantics-preserving on
    /// every nonempty trace (see the type-level invariant list).
    pub fn canonical(&self) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(p) => Formula::Atom(*p),
            Formula::Not(f) => match f.canonical() {
                Formula::True => Formula::False,
                Formula::False => Formula::True,
                Formula::Not(inner) => *inner,
                other => Formula::not(other),
            },
            Formula::Next(f) => Formula::next(f.canonical()),
            Formula::Until(a, b) => {
                let ca = a.canonical();
                match b.canonical() {
                    // A nonempty trace always offers the current position as
                    // a witness, so a constant right argument decides Until.
                    Formula::True => Formula::True,
                    Formula::False => Formula::False,
                    // With a False left argument only the current position
                    // can witness.
                    cb if ca == Formula::False => cb,
                    cb => Formula::until(ca, cb),
                }
            }
            Formula::And(cs) => canonical_nary(cs, true),
            Formula::Or(cs) => canonical_nary(cs, false),
        }
    }
}

/// Shared canonicalization of And (`conj = true`) and Or (`conj = false`):
/// flatten, absorb constants, sort, dedup, annihilate complementary pairs,
/// collapse empty/singleton.
fn canonical_nary(children: &[Formula], conj: bool) -> Formula {
    let absorbing = if conj { Formula::False } else { Formula::True };
    let neutral = if conj { Formula::True } else { Formula::False };

    let mut flat: Vec<Formula> = Vec::with_capacity(children.len());
    for c in children {
        let cc = c.canonical();
        match cc {
            Formula::And(inner) if conj => flat.extend(inner),
            Formula::Or(inner) if !conj => flat.extend(inner),
            other => flat.push(other),
        }
    }

    if flat.iter().any(|c| *c == absorbing) {
        return absorbing;
    }
    flat.retain(|c| *c != neutral);
    flat.sort();
    flat.dedup();

    let set: BTreeSet<&Formula> = flat.iter().collect();
    for c in &flat {
        if let Formula::Not(inner) = c {
            if set.contains(inner.as_ref()) {
                return absorbing;
            }
        }
    }

    match flat.len() {
        0 => neutral,
        1 => flat.pop().expect("len checked"),
        _ => {
            if conj {
                Formula::And(flat)
            } else {
                Formula::Or(flat)
            }
        }
    }
}
