use std::cmp::Reverse;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::algebra::{ensure_same, same_algebra};
use super::{AlgebraRef, Monomial, Parity};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_one, Q};

/// Exact-rational linear combination of supercommutative monomials.
#[derive(Clone, Debug)]
pub struct SuperPolynomial {
    alg: AlgebraRef,
    terms: BTreeMap<Monomial, Q>,
}

impl PartialEq for SuperPolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for SuperPolynomial {}

impl SuperPolynomial {
    pub fn zero(alg: &AlgebraRef) -> Self {
        SuperPolynomial { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &AlgebraRef) -> Self {
        Self::constant(alg, Q::one())
    }

    pub fn constant(alg: &AlgebraRef, c: Q) -> Self {
        Self::monomial(alg, Monomial::one(alg.len()), c)
    }

    pub fn generator(alg: &AlgebraRef, i: usize) -> Self {
        Self::monomial(alg, Monomial::generator(alg.len(), i), Q::one())
    }

    pub fn monomial(alg: &AlgebraRef, m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(alg);
        p.add_term(m, c);
        p
    }

    /// Generator by name; panics if absent. Meant for tests and fixtures.
    pub fn var(alg: &AlgebraRef, name: &str) -> Self {
        let i = alg.index_of(name).unwrap_or_else(|| panic!("no generator `{name}`"));
        Self::generator(alg, i)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.alg.len()))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        SuperPolynomial { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.alg, &other.alg)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-Q::one()))
    }

    /// Product in canonical form, with Koszul signs from reordering odd generators.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.alg, &other.alg)?;
        let mut out = Self::zero(&self.alg);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, neg)) = a.mul(b, &self.alg) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `Some(parity)` when every monomial shares one parity; `None` for zero or mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(&self.alg));
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.parity().is_some()
    }

    /// Parity for sign computations; zero counts as even.
    pub fn homogeneous_parity(&self) -> Result<Parity> {
        if self.is_zero() {
            return Ok(Parity::Even);
        }
        self.parity().ok_or(Error::MixedParity)
    }

    /// Split into homogeneous components `(even, odd)`.
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Self::zero(&self.alg);
        let mut odd = Self::zero(&self.alg);
        for (m, c) in &self.terms {
            match m.parity(&self.alg) {
                Parity::Even => even.add_term(m.clone(), c.clone()),
                Parity::Odd => odd.add_term(m.clone(), c.clone()),
            }
        }
        (even, odd)
    }

    /// The same element viewed in `target`, matching generators by name.
    pub fn reindex(&self, target: &AlgebraRef) -> Result<Self> {
        if same_algebra(&self.alg, target) {
            return Ok(Self { alg: target.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.alg.len());
        for g in self.alg.generators() {
            let j = target.index_of(&g.name).ok_or_else(|| Error::UnknownSymbol(g.name.clone()))?;
            if target.parity(j) != g.parity {
                return Err(Error::Parity(format!("generator `{}` changes parity", g.name)));
            }
            map.push(j);
        }
        let mut out = Self::zero(target);
        // Reindexing can permute odd generators, so rebuild products to get signs.
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for i in m.word() {
                acc = acc.checked_mul(&Self::generator(target, map[i]))?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    /// Image under the algebra map sending generator `i` to `images[i]`.
    /// Images should preserve parity for the map to be a superalgebra map.
    pub fn substitute(&self, target: &AlgebraRef, images: &[SuperPolynomial]) -> Result<Self> {
        if images.len() != self.alg.len() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.alg.len(),
                images.len()
            )));
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for i in m.word() {
                acc = acc.checked_mul(&images[i])?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    /// Terms in display order: descending degree, then lexicographic.
    pub fn display_terms(&self) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (Reverse(a.0.degree()), a.0).cmp(&(Reverse(b.0.degree()), b.0)));
        v
    }
}

impl fmt::Display for SuperPolynomial {
    /// Expression syntax accepted by the spec parser, e.g. `2*x1^2*y1 - 1/2*x2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.display_terms().into_iter().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            let body = if m.is_one() {
                fmt_q(&abs)
            } else if is_one(&abs) {
                m.render(&self.alg)
            } else {
                format!("{}*{}", fmt_q(&abs), m.render(&self.alg))
            };
            match (k, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        f.write_str(&out)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a SuperPolynomial> for &'a SuperPolynomial {
            type Output = SuperPolynomial;

            /// Panics when the operands live in different algebras; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: &'a SuperPolynomial) -> SuperPolynomial {
                self.$checked(rhs).expect("operands belong to different algebras")
            }
        }

        impl $trait<SuperPolynomial> for SuperPolynomial {
            type Output = SuperPolynomial;

            fn $method(self, rhs: SuperPolynomial) -> SuperPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;

    fn neg(self) -> SuperPolynomial {
        self.scale(&-Q::one())
    }
}

impl Neg for SuperPolynomial {
    type Output = SuperPolynomial;

    fn neg(self) -> SuperPolynomial {
        -&self
    }
}

impl serde::Serialize for SuperPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};
    use crate::supercore::{Algebra, Generator};

    fn alg() -> AlgebraRef {
        Algebra::new(vec![Generator::even("x1"), Generator::odd("y1"), Generator::odd("y2")]).unwrap()
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = alg();
        let y1 = SuperPolynomial::var(&a, "y1");
        let y2 = SuperPolynomial::var(&a, "y2");
        assert_eq!(&y2 * &y1, -(&y1 * &y2));
        assert!((&y1 * &y1).is_zero());
    }

    #[test]
    fn mixed_product_matches_transposition_count() {
        // (x1 y1)(x1 y2): y1 never passes y2, so the sign is +.
        let a = alg();
        let x1 = SuperPolynomial::var(&a, "x1");
        let y1 = SuperPolynomial::var(&a, "y1");
        let y2 = SuperPolynomial::var(&a, "y2");
        let lhs = &(&x1 * &y1) * &(&x1 * &y2);
        let expected = &(&x1 * &x1) * &(&y1 * &y2);
        assert_eq!(lhs, expected);
        assert_eq!(lhs.to_string(), "x1^2*y1*y2");
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = alg();
        let b = Algebra::new(vec![Generator::even("z")]).unwrap();
        let err = SuperPolynomial::one(&a).checked_mul(&SuperPolynomial::one(&b)).unwrap_err();
        assert_eq!(err, Error::AlgebraMismatch);
    }

    #[test]
    fn parity_queries() {
        let a = alg();
        let x1 = SuperPolynomial::var(&a, "x1");
        let y1 = SuperPolynomial::var(&a, "y1");
        assert_eq!(y1.parity(), Some(Parity::Odd));
        assert_eq!((&x1 + &y1).parity(), None);
        assert_eq!((&x1 + &y1).homogeneous_parity(), Err(Error::MixedParity));
        assert_eq!(SuperPolynomial::zero(&a).homogeneous_parity(), Ok(Parity::Even));
    }

    #[test]
    fn display_is_descending_degree() {
        let a = alg();
        let x1 = SuperPolynomial::var(&a, "x1");
        let y1 = SuperPolynomial::var(&a, "y1");
        let p = &(&SuperPolynomial::constant(&a, q(3)) - &x1.scale(&qf(1, 2))) + &(&x1 * &y1).scale(&q(-2));
        assert_eq!(p.to_string(), "-2*x1*y1 - 1/2*x1 + 3");
    }

    #[test]
    fn reindex_tracks_odd_order() {
        let a = alg();
        let b = Algebra::new(vec![Generator::odd("y2"), Generator::odd("y1"), Generator::even("x1")]).unwrap();
        let p = &SuperPolynomial::var(&a, "y1") * &SuperPolynomial::var(&a, "y2");
        let r = p.reindex(&b).unwrap();
        let expected = -(&SuperPolynomial::var(&b, "y2") * &SuperPolynomial::var(&b, "y1"));
        assert_eq!(r, expected);
    }
}
