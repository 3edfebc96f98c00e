//! Two-level minimization of symbol sets: assignment cubes and greedy
//! adjacent-cube merging.

use crate::ltl::{Formula, Symbol};

/// A partial assignment over propositions `0..n`: `care` marks constrained
/// bits, `values` their required polarity. Invariant: `values ⊆ care`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cube {
    pub care: u64,
    pub values: u64,
}

impl Cube {
    /// The full-care cube of one symbol over an n-proposition alphabet.
    pub fn from_symbol(sym: Symbol, n: usize) -> Cube {
        let care = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        Cube { care, values: sym.0 & care }
    }

    /// Does the cube admit this symbol?
    pub fn admits(&self, sym: Symbol) -> bool {
        sym.0 & self.care == self.values
    }

    /// Does `self` cover every assignment `other` covers?
    fn subsumes(&self, other: &Cube) -> bool {
        self.care & !other.care == 0 && other.values & self.care == self.values
    }

    /// Conjunction of literals; `True` when nothing is constrained.
    pub fn to_formula(&self) -> Formula {
        let mut lits = Vec::new();
        for p in 0..64u32 {
            if self.care & (1u64 << p) != 0 {
                if self.values & (1u64 << p) != 0 {
                    lits.push(Formula::atom(p));
                } else {
                    lits.push(Formula::not(Formula::atom(p)));
                }
            }
        }
        Formula::and(lits).canonical()
    }
}

/// Merge a set of full-care cubes to a small cover of the same assignment
/// set: combine pairs that differ in exactly one cared bit (eliminating that
/// bit) until fixpoint, then drop subsumed cubes.
///
/// The result covers exactly the union of the inputs: a combined cube is the
/// union of its two parents, and parents that took part in any combination
/// are covered by the result.
pub fn merge_cubes(cubes: Vec<Cube>) -> Vec<Cube> {
    let mut current = cubes;
    loop {
        current.sort();
        current.dedup();
        let len = current.len();
        let mut used = vec![false; len];
        let mut next: Vec<Cube> = Vec::with_capacity(len);
        let mut combined_any = false;
        for i in 0..len {
            for j in i + 1..len {
                if current[i].care != current[j].care {
                    continue;
                }
                let diff = current[i].values ^ current[j].values;
                if diff.count_ones() == 1 {
                    next.push(Cube {
                        care: current[i].care & !diff,
                        values: current[i].values & !diff,
                    });
                    used[i] = true;
                    used[j] = true;
                    combined_any = true;
                }
            }
        }
        for i in 0..len {
            if !used[i] {
                next.push(current[i]);
            }
        }
        current = next;
        if !combined_any {
            break;
        }
    }

    // Subsumption pass: drop any cube covered by another. After dedup,
    // mutual subsumption (equality) is impossible, so this keeps exactly
    // the maximal cubes.
    current.sort();
    current.dedup();
    current
        .iter()
        .filter(|c| !current.iter().any(|d| d != *c && d.subsumes(c)))
        .copied()
        .collect()
}

/// OR of the cubes' conjunctions, canonicalized.
pub fn cubes_to_formula(cubes: &[Cube]) -> Formula {
    Formula::or(cubes.iter().map(Cube::to_formula).collect()).canonical()
}

/// AND of clauses, one per cube, each the negation of the cube (the cubes
/// describe the OFF-set). Canonicalized.
pub fn negated_cubes_to_formula(cubes: &[Cube]) -> Formula {
    let clauses = cubes
        .iter()
        .map(|c| {
            let mut lits = Vec::new();
            for p in 0..64u32 {
                if c.care & (1u64 << p) != 0 {
                    if c.values & (1u64 << p) != 0 {
                        lits.push(Formula::not(Formula::atom(p)));
                    } else {
                        lits.push(Formula::atom(p));
                    }
                }
            }
            Formula::or(lits)
        })
        .collect();
    Formula::and(clauses).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::full_symbol_set;

    fn covered(cubes: &[Cube], n: usize) -> Vec<Symbol> {
        full_symbol_set(n)
            .unwrap()
            .into_iter()
            .filter(|&s| cubes.iter().any(|c| c.admits(s)))
            .collect()
    }

    #[test]
    fn adjacent_merge_eliminates_free_variable() {
        // {p,q} and {p} over (p,q): q is free, guard is just p.
        let n = 2;
        let cubes = vec![
            Cube::from_symbol(Symbol::from_ids([0, 1]), n),
            Cube::from_symbol(Symbol::from_ids([0]), n),
        ];
        let merged = merge_cubes(cubes);
        assert_eq!(merged, vec![Cube { care: 0b01, values: 0b01 }]);
        assert_eq!(cubes_to_formula(&merged), Formula::atom(0));
    }

    #[test]
    fn full_set_merges_to_true() {
        let n = 3;
        let cubes = full_symbol_set(n)
            .unwrap()
            .into_iter()
            .map(|s| Cube::from_symbol(s, n))
            .collect();
        let merged = merge_cubes(cubes);
        assert_eq!(merged, vec![Cube { care: 0, values: 0 }]);
        assert_eq!(cubes_to_formula(&merged), Formula::True);
    }

    #[test]
    fn merge_preserves_covered_set_exactly() {
        // Exhaustive over all subsets of the 2^3 symbol space.
        let n = 3;
        let symbols = full_symbol_set(n).unwrap();
        for mask in 1u32..(1 << symbols.len()) {
            let subset: Vec<Symbol> =
                symbols.iter().copied().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s).collect();
            let cubes: Vec<Cube> = subset.iter().map(|&s| Cube::from_symbol(s, n)).collect();
            let merged = merge_cubes(cubes);
            assert_eq!(covered(&merged, n), subset, "mask {mask:#b}");
        }
    }

    #[test]
    fn cnf_rendering_matches_dnf_semantics() {
        let n = 2;
        let symbols = full_symbol_set(n).unwrap();
        for mask in 1u32..(1 << symbols.len()) - 1 {
            let on: Vec<Symbol> =
                symbols.iter().copied().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s).collect();
            let off: Vec<Symbol> =
                symbols.iter().copied().filter(|s| !on.contains(s)).collect();
            let dnf = cubes_to_formula(&merge_cubes(
                on.iter().map(|&s| Cube::from_symbol(s, n)).collect(),
            ));
            let cnf = negated_cubes_to_formula(&merge_cubes(
                off.iter().map(|&s| Cube::from_symbol(s, n)).collect(),
            ));
            for &s in &symbols {
                assert_eq!(dnf.eval_prop(s), cnf.eval_prop(s), "mask {mask:#b} sym {s:?}");
            }
        }
    }

    #[test]
    fn cube_formula_literal_polarity() {
        let c = Cube { care: 0b11, values: 0b01 };
        let f = c.to_formula();
        assert_eq!(
            f,
            Formula::and(vec![Formula::atom(0), Formula::not(Formula::atom(1))]).canonical()
        );
    }
}
