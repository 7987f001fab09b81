use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::algebra::{ensure_same, same_algebra};
use super::{Algebra, AlgebraRef, Generator, Monomial, Parity, SuperPolynomial};
use crate::error::Result;
use crate::rational::{fmt_q, is_one, Q};

/// Element of the super tensor product `A (x) B` of two supercommutative algebras.
#[derive(Clone, Debug)]
pub struct TensorElement {
    left: AlgebraRef,
    right: AlgebraRef,
    terms: BTreeMap<(Monomial, Monomial), Q>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.left, &other.left) && same_algebra(&self.right, &other.right) && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(left: &AlgebraRef, right: &AlgebraRef) -> Self {
        TensorElement { left: left.clone(), right: right.clone(), terms: BTreeMap::new() }
    }

    pub fn one(left: &AlgebraRef, right: &AlgebraRef) -> Self {
        Self::pure(&SuperPolynomial::one(left), &SuperPolynomial::one(right))
    }

    /// `a (x) b`, expanded bilinearly.
    pub fn pure(a: &SuperPolynomial, b: &SuperPolynomial) -> Self {
        let mut t = Self::zero(a.algebra(), b.algebra());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term(ma.clone(), mb.clone(), ca * cb);
            }
        }
        t
    }

    pub fn left_algebra(&self) -> &AlgebraRef {
        &self.left
    }

    pub fn right_algebra(&self) -> &AlgebraRef {
        &self.right
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
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

    fn ensure_compatible(&self, other: &Self) -> Result<()> {
        ensure_same(&self.left, &other.left)?;
        ensure_same(&self.right, &other.right)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(&self.left, &self.right);
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v * c);
        }
        out
    }

    /// `(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd`, extended bilinearly.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let mut out = Self::zero(&self.left, &self.right);
        for ((a, b), x) in &self.terms {
            let pb = b.parity(&self.right);
            for ((c, d), y) in &other.terms {
                let Some((ac, s1)) = a.mul(c, &self.left) else { continue };
                let Some((bd, s2)) = b.mul(d, &self.right) else { continue };
                let s3 = pb.swap_negates(c.parity(&self.left));
                let coeff = x * y;
                out.add_term(ac, bd, if s1 ^ s2 ^ s3 { -coeff } else { coeff });
            }
        }
        Ok(out)
    }

    /// Total parity when homogeneous; `None` for zero or mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|(a, b)| a.parity(&self.left) + b.parity(&self.right));
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    /// The factors as polynomials: `sum c * a (x) b` gives pairs `(c a, b)`.
    pub fn pairs(&self) -> Vec<(SuperPolynomial, SuperPolynomial)> {
        self.terms
            .iter()
            .map(|((a, b), c)| {
                (
                    SuperPolynomial::monomial(&self.left, a.clone(), c.clone()),
                    SuperPolynomial::monomial(&self.right, b.clone(), Q::one()),
                )
            })
            .collect()
    }

    /// Image in the doubled algebra `A (x) B = k[gens(A) ++ gens(B)]`, via
    /// `a (x) b -> a' b''`.
    pub fn to_doubled(&self, doubled: &AlgebraRef) -> Result<SuperPolynomial> {
        if doubled.len() != self.left.len() + self.right.len() {
            return Err(crate::error::Error::AlgebraMismatch);
        }
        let mut out = SuperPolynomial::zero(doubled);
        for ((a, b), c) in &self.terms {
            let mut e = a.exponents().to_vec();
            e.extend_from_slice(b.exponents());
            let m = Monomial::from_exponents(doubled, e).expect("factors respect odd caps");
            // Left generators precede right ones, so concatenation is already canonical.
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    /// Inverse of [`TensorElement::to_doubled`].
    pub fn from_doubled(p: &SuperPolynomial, left: &AlgebraRef, right: &AlgebraRef) -> Result<Self> {
        let n = left.len();
        if p.algebra().len() != n + right.len() {
            return Err(crate::error::Error::AlgebraMismatch);
        }
        let mut out = Self::zero(left, right);
        for (m, c) in p.terms() {
            let e = m.exponents();
            let a = Monomial::from_exponents(left, e[..n].to_vec()).expect("odd caps");
            let b = Monomial::from_exponents(right, e[n..].to_vec()).expect("odd caps");
            out.add_term(a, b, c.clone());
        }
        Ok(out)
    }
}

/// Generators of `A (x) B`: copies `name.1` of `A` followed by `name.2` of `B`.
pub fn doubled_algebra(left: &Algebra, right: &Algebra) -> Result<AlgebraRef> {
    let mut gens: Vec<Generator> =
        left.generators().iter().map(|g| Generator::new(format!("{}.1", g.name), g.parity)).collect();
    gens.extend(right.generators().iter().map(|g| Generator::new(format!("{}.2", g.name), g.parity)));
    Algebra::new(gens)
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            let left = if a.is_one() {
                fmt_q(&abs)
            } else if is_one(&abs) {
                a.render(&self.left)
            } else {
                format!("{}*{}", fmt_q(&abs), a.render(&self.left))
            };
            let body = format!("{left} @ {}", b.render(&self.right));
            let sep = match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for TensorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercore::Generator;

    fn alg() -> AlgebraRef {
        Algebra::new(vec![Generator::odd("y1"), Generator::odd("y2")]).unwrap()
    }

    #[test]
    fn koszul_sign_between_factors() {
        let a = alg();
        let one = SuperPolynomial::one(&a);
        let y1 = SuperPolynomial::var(&a, "y1");
        let y2 = SuperPolynomial::var(&a, "y2");
        let lhs = TensorElement::pure(&one, &y1).checked_mul(&TensorElement::pure(&y2, &one)).unwrap();
        assert_eq!(lhs, TensorElement::pure(&y2, &y1).scale(&-Q::one()));
    }

    #[test]
    fn unit_and_annihilation() {
        let a = alg();
        let y1 = SuperPolynomial::var(&a, "y1");
        let y2 = SuperPolynomial::var(&a, "y2");
        let t = TensorElement::pure(&y1, &y2);
        assert_eq!(TensorElement::one(&a, &a).checked_mul(&t).unwrap(), t);
        let z = TensorElement::pure(&y1, &y1).checked_mul(&TensorElement::pure(&y1, &y2)).unwrap();
        assert!(z.is_zero());
    }
}
