//! Random formula generation at controlled complexity.

use rand::Rng;

use super::alphabet::Alphabet;
use super::formula::Formula;
use crate::automata::{compile_with, CompileOptions};
use crate::error::{Error, Result};

/// Complexity knobs of the synthetic corpora: `n_v` propositions and a
/// syntax-tree node budget `w_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ComplexityParams {
    pub n_v: usize,
    pub w_t: usize,
}

impl ComplexityParams {
    pub fn new(n_v: usize, w_t: usize) -> Self {
        ComplexityParams { n_v, w_t }
    }

    /// The three benchmark regimes: low (3,10), moderate (3,20), high (6,20).
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "low" => Some(Self::new(3, 10)),
            "moderate" => Some(Self::new(3, 20)),
            "high" => Some(Self::new(6, 20)),
            _ => None,
        }
    }
}

const MAX_ATTEMPTS: usize = 10_000;

/// Sample a canonical formula that
/// - mentions exactly `params.n_v` distinct propositions,
/// - has a canonical syntax-tree node count within ±20% of `params.w_t`,
/// - is neither a tautology nor a contradiction (its minimized automaton
///   has more than one state).
///
/// Proposition ids are `0..n_v`; pair with [`Alphabet::canonical`].
pub fn random_formula<R: Rng>(params: ComplexityParams, rng: &mut R) -> Result<Formula> {
    if params.n_v == 0 || params.w_t == 0 {
        return Err(Error::Generation("n_v and w_t must be at least 1".into()));
    }
    let alphabet = Alphabet::canonical(params.n_v);
    let tolerance = (0.2 * params.w_t as f64).max(0.0);
    let opts = CompileOptions::default();

    for _ in 0..MAX_ATTEMPTS {
        let raw = sample_tree(params.w_t, params.n_v as u32, rng);
        let f = raw.canonical();
        let size = f.size() as f64;
        if (size - params.w_t as f64).abs() > tolerance {
            continue;
        }
        if f.props().len() != params.n_v {
            continue;
        }
        let dfa = match compile_with(&f, &alphabet, &opts) {
            Ok(d) => d.minimized(),
            Err(Error::TooComplex { .. }) => continue,
            Err(e) => return Err(e),
        };
        if dfa.state_count() <= 1 {
            continue;
        }
        return Ok(f);
    }
    Err(Error::Generation(format!(
        "no acceptable formula at n_v={}, w_t={} after {MAX_ATTEMPTS} attempts",
        params.n_v, params.w_t
    )))
}

/// Build a tree with exactly `budget` nodes.
fn sample_tree<R: Rng>(budget: usize, n_props: u32, rng: &mut R) -> Formula {
    debug_assert!(budget >= 1);
    if budget == 1 {
        let roll: f64 = rng.random();
        return if roll < 0.90 {
            Formula::atom(rng.random_range(0..n_props))
        } else if roll < 0.95 {
            Formula::True
        } else {
            Formula::False
        };
    }
    if budget == 2 {
        let inner = sample_tree(1, n_props, rng);
        return if rng.random::<f64>() < 0.5 {
            Formula::not(inner)
        } else {
            Formula::next(inner)
        };
    }
    let roll: f64 = rng.random();
    if roll < 0.13 {
        Formula::not(sample_tree(budget - 1, n_props, rng))
    } else if roll < 0.26 {
        Formula::next(sample_tree(budget - 1, n_props, rng))
    } else {
        let left = rng.random_range(1..=budget - 2);
        let right = budget - 1 - left;
        let a = sample_tree(left, n_props, rng);
        let b = sample_tree(right, n_props, rng);
        if roll < 0.56 {
            Formula::until(a, b)
        } else if roll < 0.78 {
            Formula::and(vec![a, b])
        } else {
            Formula::or(vec![a, b])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_complexity_envelope() {
        let params = ComplexityParams::new(3, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_formula(params, &mut rng).unwrap();
            assert_eq!(f.props().len(), 3);
            let size = f.size() as f64;
            assert!((size - 10.0).abs() <= 2.0, "size {size} out of envelope");
            assert_eq!(f, f.canonical(), "generator returns canonical formulas");
        }
    }

    #[test]
    fn unit_budget_forces_single_atom() {
        let params = ComplexityParams::new(1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = random_formula(params, &mut rng).unwrap();
        assert_eq!(f, Formula::atom(0));
    }

    #[test]
    fn high_regime_uses_six_props() {
        let params = ComplexityParams::preset("high").unwrap();
        assert_eq!(params, ComplexityParams::new(6, 20));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = random_formula(params, &mut rng).unwrap();
        assert_eq!(f.props().len(), 6);
    }

    #[test]
    fn deterministic_per_seed() {
        let params = ComplexityParams::new(3, 10);
        let a = random_formula(params, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = random_formula(params, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
    }
}
