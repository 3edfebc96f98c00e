//! Formula progression: rewriting against one symbol.
//!
//! `progress(f, s)` is the residual obligation on the rest of the trace
//! after observing `s`; `accepts_empty` decides a residual once the trace is
//! exhausted. Together they realize the transition and acceptance structure
//! of the automaton construction, and they are tied to the semantic oracle
//! by the coherence property
//!
//! ```text
//! check(s :: rest, f)  =  check(rest, progress(f, s))        (rest nonempty)
//! check([s], f)        =  accepts_empty(progress(f, s))
//! ```
//!
//! which the test suite verifies by exhaustive enumeration.

use super::alphabet::Symbol;
use super::formula::Formula;

/// One progression step; the result is canonical.
///
/// Expects `f` canonical (as all stored formulas are); the rewrite itself
/// does not depend on it, but state identity downstream does.
pub fn progress(f: &Formula, s: Symbol) -> Formula {
    prog(f, s).canonical()
}

fn prog(f: &Formula, s: Symbol) -> Formula {
    match f {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Atom(p) => {
            if s.contains(*p) {
                Formula::True
            } else {
                Formula::False
            }
        }
        Formula::Not(g) => Formula::not(prog(g, s)),
        Formula::And(cs) => Formula::and(cs.iter().map(|c| prog(c, s)).collect()),
        Formula::Or(cs) => Formula::or(cs.iter().map(|c| prog(c, s)).collect()),
        Formula::Next(g) => (**g).clone(),
        Formula::Until(a, b) => {
            // a U b  ≡  b ∨ (a ∧ X(a U b)), unrolled one step.
            let keep = Formula::and(vec![prog(a, s), f.clone()]);
            Formula::or(vec![prog(b, s), keep])
        }
    }
}

/// Does the residual hold on the empty continuation?
///
/// Atoms and `X` need a position and fail; `U` needs a witness position and
/// fails; negation flips; booleans are pointwise.
pub fn accepts_empty(f: &Formula) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(_) => false,
        Formula::Not(g) => !accepts_empty(g),
        Formula::And(cs) => cs.iter().all(accepts_empty),
        Formula::Or(cs) => cs.iter().any(accepts_empty),
        Formula::Next(_) => false,
        Formula::Until(_, _) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> Formula {
        Formula::atom(i)
    }

    fn sym(ids: &[u32]) -> Symbol {
        Symbol::from_ids(ids.iter().copied())
    }

    #[test]
    fn progression_rules() {
        assert_eq!(progress(&p(0), sym(&[0])), Formula::True);
        assert_eq!(progress(&p(0), sym(&[1])), Formula::False);
        assert_eq!(progress(&Formula::next(p(0)), sym(&[1])), p(0));
        // p U q on a p-step stays p U q: false ∨ (true ∧ (p U q)).
        let f = Formula::until(p(0), p(1));
        assert_eq!(progress(&f, sym(&[0])), f);
        // ... on a q-step it discharges.
        assert_eq!(progress(&f, sym(&[1])), Formula::True);
        // ... on an empty step both disjuncts die.
        assert_eq!(progress(&f, sym(&[])), Formula::False);
    }

    #[test]
    fn negation_and_booleans_distribute() {
        let f = Formula::not(Formula::next(p(0)));
        assert_eq!(progress(&f, sym(&[])), Formula::not(p(0)));
        let g = Formula::and(vec![p(0), Formula::next(p(1))]);
        assert_eq!(progress(&g, sym(&[0])), p(1));
        assert_eq!(progress(&g, sym(&[1])), Formula::False);
    }

    #[test]
    fn accepts_empty_rules() {
        assert!(accepts_empty(&Formula::True));
        assert!(!accepts_empty(&Formula::False));
        assert!(!accepts_empty(&p(0)));
        assert!(!accepts_empty(&Formula::until(p(0), p(1))));
        // G p = !(true U !p) accepts the empty continuation.
        assert!(accepts_empty(&Formula::always(p(0))));
        assert!(!accepts_empty(&Formula::next(Formula::True)));
        assert!(accepts_empty(&Formula::not(Formula::next(p(0)))));
    }

    #[test]
    fn always_progresses_to_itself_or_dies() {
        let g = Formula::always(p(0)).canonical();
        assert_eq!(progress(&g, sym(&[0])), g);
        assert_eq!(progress(&g, sym(&[])), Formula::False);
    }
}
