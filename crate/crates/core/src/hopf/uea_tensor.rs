use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::Result;
use crate::rational::{fmt_q, sign, Q};
use crate::supercore::Algebra;
use crate::uea::{default_symbol, render_word, word_parity, NCPolynomial, Symbol, Uea, Word};

/// Element of `U(A)^{(x) k}`: sums of `k`-tuples of PBW normal words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeaTensor {
    arity: usize,
    terms: BTreeMap<Vec<Word>, Q>,
}

impl UeaTensor {
    pub fn zero(arity: usize) -> Self {
        UeaTensor { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        let mut t = Self::zero(arity);
        t.add_term(vec![Vec::new(); arity], Q::one());
        t
    }

    /// `p_1 (x) ... (x) p_k` for normalized `p_i`.
    pub fn pure(parts: &[NCPolynomial]) -> Self {
        let mut acc: Vec<(Vec<Word>, Q)> = vec![(Vec::new(), Q::one())];
        for p in parts {
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, d) in p.terms() {
                    let mut ws = ws.clone();
                    ws.push(w.clone());
                    next.push((ws, c * d));
                }
            }
            acc = next;
        }
        let mut t = Self::zero(parts.len());
        for (ws, c) in acc {
            t.add_term(ws, c);
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, ws: Vec<Word>, c: Q) {
        debug_assert_eq!(ws.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ws) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ws, c) in &other.terms {
            out.add_term(ws.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.arity);
        for (ws, v) in &self.terms {
            out.add_term(ws.clone(), v * c);
        }
        out
    }

    /// `(a_1 (x) .. (x) a_k)(b_1 (x) .. (x) b_k) = (-1)^{sum_{i>j} |a_i||b_j|} a_1b_1 (x) .. (x) a_kb_k`,
    /// each component product normalized in `uea`.
    pub fn mul(&self, other: &Self, uea: &Uea) -> Result<Self> {
        let alg = uea.algebra();
        let mut out = Self::zero(self.arity);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut negative = false;
                for i in 0..self.arity {
                    for j in 0..i {
                        negative ^= word_parity(&a[i], alg).swap_negates(word_parity(&b[j], alg));
                    }
                }
                let parts = (0..self.arity)
                    .map(|i| {
                        let mut w = a[i].clone();
                        w.extend_from_slice(&b[i]);
                        uea.normalize(&NCPolynomial::word(alg, w, Q::one()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                out = out.add(&Self::pure(&parts).scale(&(x * y * sign(negative))));
            }
        }
        Ok(out)
    }

    pub fn render(&self, alg: &Algebra) -> String {
        self.render_with(|s| default_symbol(alg, s))
    }

    pub fn render_with(&self, sym: impl Fn(Symbol) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(ws, c)| {
                let parts: Vec<String> =
                    ws.iter().map(|w| if w.is_empty() { "1".into() } else { render_word(w, &sym) }).collect();
                format!("{} {}", fmt_q(c), parts.join(" @ "))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
