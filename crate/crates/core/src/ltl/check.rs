//! The model-checking oracle: direct recursive finite-trace satisfaction.
//!
//! This is the ground truth of the crate. The automaton pipeline is tested
//! against it exhaustively; it is itself tested only against hand-computed
//! vectors, so it stays free of any machinery it is meant to arbitrate.

use super::alphabet::{Symbol, Trace};
use super::formula::Formula;
use crate::error::{Error, Result};

/// Does `w, 0 ⊨ f`?
///
/// Semantics over the positions `0..=n` of a nonempty trace:
/// - `true` holds everywhere; `false` nowhere;
/// - an atom holds at `i` iff it is in the step symbol;
/// - boolean connectives are pointwise;
/// - `X f` holds at `i` iff `i+1 ≤ n` and `f` holds at `i+1`;
/// - `a U b` holds at `i` iff some `k` with `i ≤ k ≤ n` satisfies `b` and
///   every `j` with `i ≤ j < k` satisfies `a`. The last position may be the
///   witness.
pub fn check(w: &Trace, f: &Formula) -> Result<bool> {
    if let Some(max) = f.max_prop() {
        if max as usize >= w.alphabet().len() {
            return Err(Error::AlphabetMismatch(format!(
                "formula uses proposition id {max}, trace alphabet has {}",
                w.alphabet().len()
            )));
        }
    }
    Ok(holds(w.steps(), 0, f))
}

fn holds(steps: &[Symbol], i: usize, f: &Formula) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(p) => steps[i].contains(*p),
        Formula::Not(g) => !holds(steps, i, g),
        Formula::And(cs) => cs.iter().all(|c| holds(steps, i, c)),
        Formula::Or(cs) => cs.iter().any(|c| holds(steps, i, c)),
        Formula::Next(g) => i + 1 < steps.len() && holds(steps, i + 1, g),
        Formula::Until(a, b) => (i..steps.len())
            .any(|k| holds(steps, k, b) && (i..k).all(|j| holds(steps, j, a))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::alphabet::Alphabet;

    fn p(i: u32) -> Formula {
        Formula::atom(i)
    }

    /// Trace over {p,q,r}: each entry lists the ids true at that step.
    fn w(steps: &[&[u32]]) -> Trace {
        let ab = Alphabet::with_names(["p", "q", "r"]).unwrap();
        let syms = steps.iter().map(|ids| Symbol::from_ids(ids.iter().copied())).collect();
        Trace::new(ab, syms).unwrap()
    }

    fn sat(steps: &[&[u32]], f: &Formula) -> bool {
        check(&w(steps), f).unwrap()
    }

    #[test]
    fn constants_and_atoms() {
        assert!(sat(&[&[]], &Formula::True));
        assert!(!sat(&[&[]], &Formula::False));
        assert!(sat(&[&[0]], &p(0)));
        assert!(!sat(&[&[]], &p(0)));
        // Only position 0 matters for a bare atom.
        assert!(!sat(&[&[], &[0]], &p(0)));
    }

    #[test]
    fn boolean_connectives() {
        let f = Formula::and(vec![p(0), Formula::not(p(1))]);
        assert!(sat(&[&[0]], &f));
        assert!(!sat(&[&[0, 1]], &f));
        let g = Formula::or(vec![p(0), p(1)]);
        assert!(sat(&[&[1]], &g));
        assert!(!sat(&[&[2]], &g));
    }

    #[test]
    fn next_requires_a_successor() {
        let f = Formula::next(p(0));
        assert!(!sat(&[&[0]], &f));
        assert!(sat(&[&[], &[0]], &f));
        assert!(!sat(&[&[0], &[]], &f));
        // X X p needs position 2.
        let g = Formula::next(Formula::next(p(0)));
        assert!(sat(&[&[], &[], &[0]], &g));
        assert!(!sat(&[&[], &[0]], &g));
        // X true asserts the existence of a next position.
        let h = Formula::next(Formula::True);
        assert!(!sat(&[&[]], &h));
        assert!(sat(&[&[], &[]], &h));
    }

    #[test]
    fn until_witness_positions() {
        let f = Formula::until(p(0), p(1));
        // Witness at position 1 with p holding at 0.
        assert!(sat(&[&[0], &[1]], &f));
        // Witness immediately.
        assert!(sat(&[&[1]], &f));
        // No witness at all.
        assert!(!sat(&[&[0], &[0]], &f));
        // The final position may be the witness.
        assert!(sat(&[&[0], &[0], &[1]], &f));
        // The left argument must hold strictly before the witness.
        assert!(!sat(&[&[0], &[], &[1]], &f));
        // ... but not at the witness itself.
        assert!(sat(&[&[0], &[0], &[1]], &Formula::until(p(0), Formula::and(vec![p(1), Formula::not(p(0))]))));
    }

    #[test]
    fn eventually_and_always_desugarings() {
        let fp = Formula::eventually(p(0));
        assert!(sat(&[&[], &[], &[0]], &fp));
        assert!(!sat(&[&[], &[]], &fp));

        let gp = Formula::always(p(0));
        assert!(sat(&[&[0], &[0], &[0]], &gp));
        assert!(!sat(&[&[0], &[], &[0]], &gp));
        assert!(sat(&[&[0]], &gp));
    }

    #[test]
    fn implication_via_desugared_or() {
        // a -> b is stored as !a | b.
        let f = Formula::or(vec![Formula::not(p(0)), p(1)]);
        assert!(!sat(&[&[0]], &f));
        assert!(sat(&[&[0, 1]], &f));
        assert!(sat(&[&[]], &f));
    }

    #[test]
    fn nested_until() {
        // (p U q) U r: r must eventually hold, with p U q true at every
        // earlier position.
        let f = Formula::until(Formula::until(p(0), p(1)), p(2));
        assert!(sat(&[&[2]], &f));
        assert!(sat(&[&[0], &[1], &[2]], &f));
        assert!(!sat(&[&[0], &[0], &[2]], &f));
        assert!(!sat(&[&[0], &[1], &[1]], &f));
    }

    #[test]
    fn canonicalization_preserves_satisfaction() {
        let cases: Vec<Formula> = vec![
            Formula::and(vec![p(0), Formula::and(vec![p(1), p(0)])]),
            Formula::or(vec![p(0), Formula::not(p(0))]),
            Formula::until(p(0), Formula::True),
            Formula::until(Formula::False, Formula::not(p(1))),
            Formula::not(Formula::not(Formula::until(p(0), p(1)))),
        ];
        let traces: Vec<Vec<&[u32]>> = vec![
            vec![&[]],
            vec![&[0]],
            vec![&[0, 1], &[2]],
            vec![&[1], &[0], &[0, 1, 2]],
        ];
        for f in &cases {
            let c = f.canonical();
            for t in &traces {
                assert_eq!(sat(t, f), sat(t, &c), "formula {f:?} on {t:?}");
            }
        }
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let ab = Alphabet::with_names(["p"]).unwrap();
        let t = Trace::new(ab, vec![Symbol::EMPTY]).unwrap();
        assert!(check(&t, &p(3)).is_err());
    }
}
