//! Proposition alphabets, symbols (one trace step), and traces.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::util::Fnv64;

/// Upper bound on alphabet size when the full 2^n symbol set must be
/// enumerated (DFA compilation over an unrestricted alphabet).
pub const MAX_ENUM_PROPS: usize = 16;

/// Hard cap on proposition ids: symbols are 64-bit sets.
const MAX_PROPS: usize = 64;

/// Words that the grammar reserves; they can never name a proposition.
const RESERVED: &[&str] = &["true", "false"];

/// A named proposition: an index into an [`Alphabet`] plus its identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition {
    pub id: u32,
    pub name: String,
}

/// An interning table from proposition names to dense ids.
///
/// Cloning is cheap (shared storage, copy-on-write on intern), so traces and
/// corpora can carry their alphabet by value.
#[derive(Clone, Debug)]
pub struct Alphabet {
    inner: Arc<Inner>,
}

#[derive(Clone, Debug, Default)]
struct Inner {
    names: Vec<String>,
    index: BTreeMap<String, u32>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.names == other.inner.names
    }
}

impl Eq for Alphabet {}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new() -> Self {
        Alphabet { inner: Arc::new(Inner::default()) }
    }

    /// Alphabet with the fixed names `p0`, `p1`, …, `p{n-1}`.
    ///
    /// This is the naming convention of generated corpora: trace symbols in
    /// corpus files store ids relative to this ordering.
    pub fn canonical(n: usize) -> Self {
        let mut ab = Alphabet::new();
        for i in 0..n {
            ab.intern(&format!("p{i}")).expect("canonical names are valid");
        }
        ab
    }

    /// Build from an explicit name list, preserving order.
    pub fn with_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut ab = Alphabet::new();
        for n in names {
            ab.intern(n.as_ref())?;
        }
        Ok(ab)
    }

    /// Intern a name, returning its id; existing names return their old id.
    pub fn intern(&mut self, name: &str) -> Result<u32> {
        if let Some(&id) = self.inner.index.get(name) {
            return Ok(id);
        }
        if RESERVED.contains(&name) {
            return Err(Error::ReservedWord(name.to_string()));
        }
        if !valid_name(name) {
            return Err(Error::InvalidName(name.to_string()));
        }
        if self.inner.names.len() >= MAX_PROPS {
            return Err(Error::AlphabetMismatch(format!(
                "alphabet is limited to {MAX_PROPS} propositions"
            )));
        }
        let inner = Arc::make_mut(&mut self.inner);
        let id = inner.names.len() as u32;
        inner.names.push(name.to_string());
        inner.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.inner.index.get(name).copied()
    }

    pub fn name(&self, id: u32) -> &str {
        &self.inner.names[id as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn proposition(&self, id: u32) -> Proposition {
        Proposition { id, name: self.name(id).to_string() }
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    /// Stable hash of the name list, used to detect model/corpus mismatches.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv64::new();
        for n in &self.inner.names {
            h.write_str(n);
        }
        h.finish()
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::new()
    }
}

/// One trace step: the set of propositions true at that position, as a
/// 64-bit set of alphabet ids.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Symbol(pub u64);

impl Symbol {
    pub const EMPTY: Symbol = Symbol(0);

    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        let mut s = 0u64;
        for id in ids {
            debug_assert!((id as usize) < MAX_PROPS);
            s |= 1u64 << id;
        }
        Symbol(s)
    }

    pub fn contains(self, id: u32) -> bool {
        (id as usize) < MAX_PROPS && self.0 & (1u64 << id) != 0
    }

    pub fn with(self, id: u32) -> Self {
        Symbol(self.0 | (1u64 << id))
    }

    pub fn ids(self) -> impl Iterator<Item = u32> {
        (0..MAX_PROPS as u32).filter(move |&i| self.0 & (1u64 << i) != 0)
    }

    pub fn count(self) -> usize {
        self.0.count_ones() as usize
    }

    /// True when every set bit refers to a proposition of `ab`.
    pub fn fits(self, ab: &Alphabet) -> bool {
        let n = ab.len();
        n >= MAX_PROPS || self.0 >> n == 0
    }
}

impl std::fmt::Debug for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for id in self.ids() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// All 2^n symbols over an n-proposition alphabet, in numeric order.
pub fn full_symbol_set(n: usize) -> Result<Vec<Symbol>> {
    if n > MAX_ENUM_PROPS {
        return Err(Error::AlphabetTooLarge(n));
    }
    Ok((0..(1u64 << n)).map(Symbol).collect())
}

/// A finite, nonempty run of symbols over a fixed alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    alphabet: Alphabet,
    steps: Vec<Symbol>,
}

impl Trace {
    pub fn new(alphabet: Alphabet, steps: Vec<Symbol>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::AlphabetMismatch("trace must be nonempty".into()));
        }
        if let Some(bad) = steps.iter().find(|s| !s.fits(&alphabet)) {
            return Err(Error::AlphabetMismatch(format!(
                "symbol {bad:?} references propositions outside the {}-proposition alphabet",
                alphabet.len()
            )));
        }
        Ok(Trace { alphabet, steps })
    }

    /// Parse the compact text form: steps separated by `;`, propositions in
    /// a step separated by `,`. An empty segment is the empty symbol.
    /// Example: `"p,q; q; "` is a 3-step trace whose last step is empty.
    /// New names are interned into `alphabet`.
    pub fn parse(text: &str, alphabet: &mut Alphabet) -> Result<Self> {
        let mut steps = Vec::new();
        for seg in text.split(';') {
            let mut sym = Symbol::EMPTY;
            for name in seg.split(',') {
                let name = name.trim();
                if name.is_empty() {
                    continue;
                }
                sym = sym.with(alphabet.intern(name)?);
            }
            steps.push(sym);
        }
        Trace::new(alphabet.clone(), steps)
    }

    pub fn steps(&self) -> &[Symbol] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intern_is_idempotent_and_dense() {
        let mut ab = Alphabet::new();
        let p = ab.intern("p").unwrap();
        let q = ab.intern("q").unwrap();
        assert_eq!(p, 0);
        assert_eq!(q, 1);
        assert_eq!(ab.intern("p").unwrap(), 0);
        assert_eq!(ab.len(), 2);
        assert_eq!(ab.name(1), "q");
    }

    #[test]
    fn reserved_and_malformed_names_rejected() {
        let mut ab = Alphabet::new();
        assert!(matches!(ab.intern("true"), Err(Error::ReservedWord(_))));
        assert!(matches!(ab.intern("false"), Err(Error::ReservedWord(_))));
        assert!(matches!(ab.intern("P"), Err(Error::InvalidName(_))));
        assert!(matches!(ab.intern("9x"), Err(Error::InvalidName(_))));
        assert!(matches!(ab.intern(""), Err(Error::InvalidName(_))));
        assert!(ab.intern("_ok_9A").is_ok());
    }

    #[test]
    fn clones_share_until_interned() {
        let mut a = Alphabet::new();
        a.intern("p").unwrap();
        let b = a.clone();
        a.intern("q").unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(b.len(), 1);
        assert_ne!(a, b);
    }

    #[test]
    fn symbol_set_operations() {
        let s = Symbol::from_ids([0, 2]);
        assert!(s.contains(0));
        assert!(!s.contains(1));
        assert_eq!(s.ids().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s.count(), 2);
        assert_eq!(format!("{s:?}"), "{0,2}");
    }

    #[test]
    fn full_symbol_set_counts() {
        assert_eq!(full_symbol_set(0).unwrap(), vec![Symbol::EMPTY]);
        assert_eq!(full_symbol_set(3).unwrap().len(), 8);
        assert!(full_symbol_set(40).is_err());
    }

    #[test]
    fn trace_parse_and_validation() {
        let mut ab = Alphabet::new();
        let t = Trace::parse("p,q; q; ", &mut ab).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.steps()[0], Symbol::from_ids([0, 1]));
        assert_eq!(t.steps()[2], Symbol::EMPTY);

        assert!(Trace::new(ab.clone(), vec![]).is_err());
        let foreign = Symbol::from_ids([7]);
        assert!(Trace::new(ab, vec![foreign]).is_err());
    }

    #[test]
    fn fingerprint_tracks_names() {
        let a = Alphabet::canonical(3);
        let b = Alphabet::with_names(["p0", "p1", "p2"]).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = Alphabet::with_names(["p0", "p1", "p3"]).unwrap();
        assert_ne!(a.fingerprint(), c.fingerprint());
    }
}
