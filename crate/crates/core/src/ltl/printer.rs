//! Concrete-syntax printing with minimal parentheses.
//!
//! The printer emits only core operators (sugar never survives parsing).
//! For canonical formulas, `parse(print(f)) == f` structurally; the test
//! suite holds this as a property.

use super::alphabet::Alphabet;
use super::formula::Formula;

/// Binding strength, loosest to tightest. `->` (level 0) is never printed
/// because implication is desugared on parse.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Or(_) => 1,
        Formula::And(_) => 2,
        Formula::Until(_, _) => 3,
        Formula::Not(_) | Formula::Next(_) => 4,
        Formula::True | Formula::False | Formula::Atom(_) => 5,
    }
}

/// Render `f` using the names of `ab`.
pub fn print(f: &Formula, ab: &Alphabet) -> String {
    let mut out = String::new();
    write(f, ab, &mut out);
    out
}

fn write(f: &Formula, ab: &Alphabet, out: &mut String) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom(p) => out.push_str(ab.name(*p)),
        Formula::Not(g) => {
            out.push('!');
            child(g, ab, out, 4);
        }
        Formula::Next(g) => {
            out.push_str("X ");
            child(g, ab, out, 4);
        }
        Formula::And(cs) => infix_nary(cs, " & ", ab, out, 2),
        Formula::Or(cs) => infix_nary(cs, " | ", ab, out, 1),
        Formula::Until(a, b) => {
            // Right-associative: the left operand needs parens when it is
            // itself an Until; the right operand does not.
            child(a, ab, out, 4);
            out.push_str(" U ");
            child(b, ab, out, 3);
        }
    }
}

/// Parenthesize children that bind no tighter than required.
fn child(f: &Formula, ab: &Alphabet, out: &mut String, min_level: u8) {
    if level(f) < min_level {
        out.push('(');
        write(f, ab, out);
        out.push(')');
    } else {
        write(f, ab, out);
    }
}

fn infix_nary(cs: &[Formula], sep: &str, ab: &Alphabet, out: &mut String, own: u8) {
    debug_assert!(!cs.is_empty(), "n-ary node with no children");
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        // Same-level children get parens so the structure survives
        // reparsing even for non-canonical (nested same-op) trees.
        child(c, ab, out, own + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::with_names(["p", "q", "r"]).unwrap()
    }

    fn p(i: u32) -> Formula {
        Formula::atom(i)
    }

    #[test]
    fn precedence_layout() {
        let a = ab();
        assert_eq!(print(&Formula::until(p(0), p(1)), &a), "p U q");
        assert_eq!(
            print(&Formula::and(vec![Formula::until(p(0), p(1)), p(2)]), &a),
            "p U q & r"
        );
        assert_eq!(
            print(&Formula::or(vec![Formula::and(vec![p(0), p(1)]), p(2)]), &a),
            "p & q | r"
        );
        assert_eq!(
            print(&Formula::and(vec![Formula::or(vec![p(0), p(1)]), p(2)]), &a),
            "(p | q) & r"
        );
    }

    #[test]
    fn until_associativity() {
        let a = ab();
        let right = Formula::until(p(0), Formula::until(p(1), p(2)));
        assert_eq!(print(&right, &a), "p U q U r");
        let left = Formula::until(Formula::until(p(0), p(1)), p(2));
        assert_eq!(print(&left, &a), "(p U q) U r");
    }

    #[test]
    fn unary_chains() {
        let a = ab();
        assert_eq!(print(&Formula::not(p(0)), &a), "!p");
        assert_eq!(print(&Formula::not(Formula::next(p(0))), &a), "!X p");
        assert_eq!(print(&Formula::not(Formula::and(vec![p(0), p(1)])), &a), "!(p & q)");
        assert_eq!(print(&Formula::next(Formula::until(p(0), p(1))), &a), "X (p U q)");
    }

    #[test]
    fn constants() {
        let a = ab();
        assert_eq!(print(&Formula::True, &a), "true");
        assert_eq!(print(&Formula::always(p(0)), &a), "!(true U !p)");
    }
}
