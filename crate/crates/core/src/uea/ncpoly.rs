use std::cmp::Reverse;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::rational::{fmt_q, Q};
use crate::supercore::{ensure_same, same_algebra, Algebra, AlgebraRef, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum SymbolKind {
    M,
    H,
}

/// `m_g` or `h_g` for a generator index `g`. The derived order (all `M`
/// before all `H`, then by generator) is the PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub gen: usize,
}

impl Symbol {
    pub fn m(gen: usize) -> Self {
        Symbol { kind: SymbolKind::M, gen }
    }

    pub fn h(gen: usize) -> Self {
        Symbol { kind: SymbolKind::H, gen }
    }

    pub fn parity(self, alg: &Algebra) -> Parity {
        alg.parity(self.gen)
    }
}

pub type Word = Vec<Symbol>;

pub(crate) fn word_parity(w: &[Symbol], alg: &Algebra) -> Parity {
    w.iter().fold(Parity::Even, |p, s| p + s.parity(alg))
}

/// Linear combination of words in the free algebra on `m_g, h_g`.
#[derive(Clone, Debug)]
pub struct NCPolynomial {
    alg: AlgebraRef,
    terms: BTreeMap<Word, Q>,
}

impl PartialEq for NCPolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for NCPolynomial {}

impl NCPolynomial {
    pub fn zero(alg: &AlgebraRef) -> Self {
        NCPolynomial { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &AlgebraRef) -> Self {
        Self::word(alg, Vec::new(), Q::one())
    }

    pub fn constant(alg: &AlgebraRef, c: Q) -> Self {
        Self::word(alg, Vec::new(), c)
    }

    pub fn word(alg: &AlgebraRef, w: Word, c: Q) -> Self {
        let mut p = Self::zero(alg);
        p.add_term(w, c);
        p
    }

    pub fn symbol(alg: &AlgebraRef, s: Symbol) -> Self {
        Self::word(alg, vec![s], Q::one())
    }

    pub fn m(alg: &AlgebraRef, gen: usize) -> Self {
        Self::symbol(alg, Symbol::m(gen))
    }

    pub fn h(alg: &AlgebraRef, gen: usize) -> Self {
        Self::symbol(alg, Symbol::h(gen))
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Symbol]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(&self.alg);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.alg, &other.alg)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-Q::one()))
    }

    /// Concatenation product in the free algebra.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.alg, &other.alg)?;
        let mut out = Self::zero(&self.alg);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        Ok(out)
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba` of homogeneous elements.
    pub fn supercommutator(&self, other: &Self) -> Result<Self> {
        let s = self.homogeneous_parity()?.swap_negates(other.homogeneous_parity()?);
        let ab = self.checked_mul(other)?;
        let ba = other.checked_mul(self)?;
        if s {
            ab.checked_add(&ba)
        } else {
            ab.checked_sub(&ba)
        }
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|w| word_parity(w, &self.alg));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Parity if homogeneous; zero counts as even.
    pub fn homogeneous_parity(&self) -> Result<Parity> {
        if self.is_zero() {
            return Ok(Parity::Even);
        }
        self.parity().ok_or(crate::error::Error::MixedParity)
    }

    /// Maximal word length, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    /// Rebuilds every word symbol by symbol through `f`, multiplying the
    /// images in word order.
    pub fn substitute(
        &self,
        target: &AlgebraRef,
        mut f: impl FnMut(Symbol) -> Result<NCPolynomial>,
    ) -> Result<NCPolynomial> {
        let mut cache: BTreeMap<Symbol, NCPolynomial> = BTreeMap::new();
        let mut out = NCPolynomial::zero(target);
        for (w, c) in &self.terms {
            let mut acc = NCPolynomial::constant(target, c.clone());
            for s in w {
                if !cache.contains_key(s) {
                    cache.insert(*s, f(*s)?);
                }
                acc = acc.checked_mul(&cache[s])?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    /// Terms in printing order: degree descending, then lexicographic.
    pub fn display_terms(&self) -> Vec<(&Word, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (Reverse(a.0.len()), a.0).cmp(&(Reverse(b.0.len()), b.0)));
        v
    }

    /// Renders with a custom symbol printer, e.g. `-1 m(y1)h(x1) + 1`.
    pub fn render_with(&self, sym: impl Fn(Symbol) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .display_terms()
            .into_iter()
            .map(|(w, c)| if w.is_empty() { fmt_q(c) } else { format!("{} {}", fmt_q(c), render_word(w, &sym)) })
            .collect();
        terms.join(" + ")
    }
}

/// Consecutive repeats collapse to powers: `m(x)^2h(y)`.
pub fn render_word(w: &[Symbol], sym: &impl Fn(Symbol) -> String) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i + 1;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        out.push_str(&sym(w[i]));
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

pub(crate) fn default_symbol(alg: &Algebra, s: Symbol) -> String {
    match s.kind {
        SymbolKind::M => format!("m({})", alg.name(s.gen)),
        SymbolKind::H => format!("h({})", alg.name(s.gen)),
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|s| default_symbol(&self.alg, s)))
    }
}

impl serde::Serialize for NCPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
