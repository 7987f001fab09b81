use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::OreData;
use crate::error::Result;
use crate::rational::{fmt_q, Q};
use crate::supercore::SuperPolynomial;
use crate::uea::{default_symbol, render_word, NCPolynomial, Symbol, SymbolKind, Uea, Word};

/// Element of `R^e[m_x; sigma_1, eta_1][h_x; sigma_2, eta_2]` in left-normal
/// form `sum c * w * m_x^i * h_x^j` with `w` a PBW word of `R^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPolynomial {
    terms: BTreeMap<(Word, u32, u32), Q>,
}

impl SkewPolynomial {
    pub fn zero() -> Self {
        SkewPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::term(Vec::new(), 0, 0, Q::one())
    }

    pub fn term(w: Word, i: u32, j: u32, c: Q) -> Self {
        let mut s = Self::zero();
        s.add_term(w, i, j, c);
        s
    }

    /// A normalized `R^e` element placed in degree `m_x^i h_x^j`.
    pub fn from_base(p: &NCPolynomial, i: u32, j: u32) -> Self {
        let mut s = Self::zero();
        for (w, c) in p.terms() {
            s.add_term(w.clone(), i, j, c.clone());
        }
        s
    }

    pub fn m_x() -> Self {
        Self::term(Vec::new(), 1, 0, Q::one())
    }

    pub fn h_x() -> Self {
        Self::term(Vec::new(), 0, 1, Q::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, i: u32, j: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((w, i, j)) {
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
        for ((w, i, j), c) in &other.terms {
            out.add_term(w.clone(), *i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for ((w, i, j), v) in &self.terms {
            out.add_term(w.clone(), *i, *j, v * c);
        }
        out
    }

    /// Highest `h_x` exponent, 0 for the zero element.
    pub fn h_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.2).max().unwrap_or(0)
    }

    pub fn render(&self, o: &OreData) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let alg = o.algebra();
        let sym = |s: Symbol| default_symbol(alg, s);
        let x = o.var();
        self.terms
            .iter()
            .map(|((w, i, j), c)| {
                let mut s = render_word(w, &sym);
                if w.is_empty() {
                    s.clear();
                }
                for (k, kind) in [(*i, "m"), (*j, "h")] {
                    match k {
                        0 => {}
                        1 => s.push_str(&format!("{kind}({x})")),
                        _ => s.push_str(&format!("{kind}({x})^{k}")),
                    }
                }
                if s.is_empty() {
                    fmt_q(c)
                } else {
                    format!("{} {}", fmt_q(c), s)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OreMap {
    Sigma1,
    Eta1,
    Sigma2,
    Eta2,
}

/// Multiplication and the twisting maps of the iterated Ore extension.
pub(crate) struct Skew<'a> {
    o: &'a OreData,
    uea: Uea,
}

impl<'a> Skew<'a> {
    pub(crate) fn new(o: &'a OreData) -> Self {
        Skew { o, uea: Uea::new(o.base()) }
    }

    pub(crate) fn uea(&self) -> &Uea {
        &self.uea
    }

    fn alpha(&self, g: usize) -> Result<SuperPolynomial> {
        Ok(self.o.alpha().image(g)?.clone())
    }

    fn delta(&self, g: usize) -> Result<SuperPolynomial> {
        Ok(self.o.delta().image(g)?.clone())
    }

    fn m(&self, p: &SuperPolynomial) -> Result<NCPolynomial> {
        self.uea.embed_m(p)
    }

    fn h(&self, p: &SuperPolynomial) -> Result<NCPolynomial> {
        self.uea.normalize(&self.uea.embed_h(p)?)
    }

    /// `sigma_1` on a symbol of `R^e`.
    fn sigma1_symbol(&self, s: Symbol) -> Result<NCPolynomial> {
        let alg = self.o.algebra();
        let base = NCPolynomial::symbol(alg, s);
        match s.kind {
            SymbolKind::M => Ok(base),
            SymbolKind::H => base.checked_add(&self.m(&self.alpha(s.gen)?)?),
        }
    }

    /// `sigma_1` on a word, as an algebra homomorphism.
    pub(crate) fn sigma1(&self, w: &[Symbol]) -> Result<NCPolynomial> {
        let mut acc = NCPolynomial::one(self.o.algebra());
        for &s in w {
            acc = self.uea.mul(&acc, &self.sigma1_symbol(s)?)?;
        }
        Ok(acc)
    }

    /// `eta_1` on a word: `eta_1(s z) = sigma_1(s) eta_1(z) + eta_1(s) z`.
    pub(crate) fn eta1(&self, w: &[Symbol]) -> Result<NCPolynomial> {
        let alg = self.o.algebra();
        let Some((&s, z)) = w.split_first() else {
            return Ok(NCPolynomial::zero(alg));
        };
        let eta_s = match s.kind {
            SymbolKind::M => NCPolynomial::zero(alg),
            SymbolKind::H => self.m(&self.delta(s.gen)?)?,
        };
        let zp = NCPolynomial::word(alg, z.to_vec(), Q::one());
        let left = self.uea.mul(&self.sigma1_symbol(s)?, &self.eta1(z)?)?;
        let right = self.uea.mul(&eta_s, &zp)?;
        left.checked_add(&right)
    }

    /// `eta_2` on a symbol of `R^e`, in `R^e[m_x]`.
    fn eta2_symbol(&self, s: Symbol) -> Result<SkewPolynomial> {
        let a = self.alpha(s.gen)?;
        let d = self.delta(s.gen)?;
        Ok(match s.kind {
            SymbolKind::M => {
                SkewPolynomial::from_base(&self.m(&a)?, 1, 0).add(&SkewPolynomial::from_base(&self.m(&d)?, 0, 0))
            }
            SymbolKind::H => {
                let aa = self.o.alpha().apply(&a)?;
                let da = self.o.delta().apply(&a)?;
                let coeff = self.h(&a)?.checked_add(&self.m(&aa)?)?;
                let rest = self.m(&da)?.checked_add(&self.h(&d)?)?;
                SkewPolynomial::from_base(&coeff, 1, 0).add(&SkewPolynomial::from_base(&rest, 0, 0))
            }
        })
    }

    /// `eta_2` on a word of `R^e`: `eta_2(s z) = sigma_2(s) eta_2(z) + eta_2(s) z`.
    pub(crate) fn eta2(&self, w: &[Symbol]) -> Result<SkewPolynomial> {
        let Some((&s, z)) = w.split_first() else {
            return Ok(SkewPolynomial::zero());
        };
        let sig = SkewPolynomial::from_base(&self.sigma1_symbol(s)?, 0, 0);
        let zp = SkewPolynomial::term(z.to_vec(), 0, 0, Q::one());
        let left = self.mul(&sig, &self.eta2(z)?)?;
        let right = self.mul(&self.eta2_symbol(s)?, &zp)?;
        Ok(left.add(&right))
    }

    /// `m_x * p`.
    fn left_mx(&self, p: &SkewPolynomial) -> Result<SkewPolynomial> {
        let mut out = SkewPolynomial::zero();
        for ((w, i, j), c) in p.terms() {
            let s = self.sigma1(w)?;
            let e = self.eta1(w)?;
            out = out
                .add(&SkewPolynomial::from_base(&s, i + 1, *j).scale(c))
                .add(&SkewPolynomial::from_base(&e, *i, *j).scale(c));
        }
        Ok(out)
    }

    /// `h_x * p`, using `h_x m_x = m_x h_x`.
    fn left_hx(&self, p: &SkewPolynomial) -> Result<SkewPolynomial> {
        let mut out = SkewPolynomial::zero();
        for ((w, i, j), c) in p.terms() {
            let s = self.sigma1(w)?;
            out = out.add(&SkewPolynomial::from_base(&s, *i, j + 1).scale(c));
            for ((w2, i2, j2), c2) in self.eta2(w)?.terms() {
                debug_assert_eq!(*j2, 0);
                out.add_term(w2.clone(), i2 + i, *j, c * c2);
            }
        }
        Ok(out)
    }

    /// `u * p` for `u` a normalized `R^e` word.
    fn left_base(&self, u: &[Symbol], p: &SkewPolynomial) -> Result<SkewPolynomial> {
        let alg = self.o.algebra();
        let mut out = SkewPolynomial::zero();
        for ((w, i, j), c) in p.terms() {
            let mut uw = u.to_vec();
            uw.extend_from_slice(w);
            let prod = self.uea.normalize(&NCPolynomial::word(alg, uw, c.clone()))?;
            out = out.add(&SkewPolynomial::from_base(&prod, *i, *j));
        }
        Ok(out)
    }

    pub(crate) fn mul(&self, u: &SkewPolynomial, v: &SkewPolynomial) -> Result<SkewPolynomial> {
        let mut out = SkewPolynomial::zero();
        for ((w1, i1, j1), c1) in u.terms() {
            for ((w2, i2, j2), c2) in v.terms() {
                let mut p = SkewPolynomial::term(w2.clone(), *i2, 0, c1 * c2);
                for _ in 0..*j1 {
                    p = self.left_hx(&p)?;
                }
                for _ in 0..*i1 {
                    p = self.left_mx(&p)?;
                }
                p = self.left_base(w1, &p)?;
                for ((w, i, j), c) in p.terms() {
                    out.add_term(w.clone(), *i, j + j2, c.clone());
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn apply_map(&self, which: OreMap, p: &NCPolynomial) -> Result<SkewPolynomial> {
        let mut out = SkewPolynomial::zero();
        for (w, c) in p.terms() {
            let img = match which {
                OreMap::Sigma1 | OreMap::Sigma2 => SkewPolynomial::from_base(&self.sigma1(w)?, 0, 0),
                OreMap::Eta1 => SkewPolynomial::from_base(&self.eta1(w)?, 0, 0),
                OreMap::Eta2 => self.eta2(w)?,
            };
            out = out.add(&img.scale(c));
        }
        Ok(out)
    }
}

/// Applies `sigma_1`, `eta_1`, `sigma_2` or `eta_2` to an element of `R^e`.
/// `sigma_2` agrees with `sigma_1` on `R^e` and fixes `m_x`; `eta_2(m_x) = 0`.
pub fn sigma_eta(o: &OreData, which: OreMap, p: &NCPolynomial) -> Result<SkewPolynomial> {
    o.require_validated()?;
    let sk = Skew::new(o);
    let p = sk.uea().normalize(p)?;
    sk.apply_map(which, &p)
}

/// Product in the iterated Ore extension.
pub fn skew_mul(o: &OreData, u: &SkewPolynomial, v: &SkewPolynomial) -> Result<SkewPolynomial> {
    o.require_validated()?;
    Skew::new(o).mul(u, v)
}
