use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Algebra, Parity};

/// Exponent vector over the generators of an algebra, in index order.
///
/// Odd exponents are always 0 or 1; products that would square an odd
/// generator are annihilated before a `Monomial` is ever built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    /// Builds from raw exponents; `None` if an odd generator has exponent > 1.
    pub fn from_exponents(alg: &Algebra, exps: Vec<u32>) -> Option<Self> {
        debug_assert_eq!(exps.len(), alg.len());
        for (i, &e) in exps.iter().enumerate() {
            if alg.parity(i).is_odd() && e > 1 {
                return None;
            }
        }
        Some(Monomial(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn parity(&self, alg: &Algebra) -> Parity {
        let odd = self.0.iter().enumerate().filter(|&(i, &e)| alg.parity(i).is_odd() && e == 1).count();
        Parity::from_count(odd)
    }

    /// Generator indices with multiplicity, ascending.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(i, e as usize));
        }
        w
    }

    /// Product `self * other` in the supercommutative algebra.
    ///
    /// Returns the canonical monomial and whether the Koszul sign is negative,
    /// or `None` when an odd generator would be squared.
    pub fn mul(&self, other: &Monomial, alg: &Algebra) -> Option<(Monomial, bool)> {
        debug_assert_eq!(self.len(), other.len());
        let mut exps = Vec::with_capacity(self.len());
        // Odd generators of `other` with index below the current one; each
        // odd generator of `self` must pass all of them.
        let mut odd_other_below = 0usize;
        let mut inversions = 0usize;
        for i in 0..self.len() {
            let (a, b) = (self.0[i], other.0[i]);
            if alg.parity(i).is_odd() {
                if a == 1 && b == 1 {
                    return None;
                }
                if a == 1 {
                    inversions += odd_other_below;
                }
                if b == 1 {
                    odd_other_below += 1;
                }
            }
            exps.push(a + b);
        }
        Some((Monomial(exps), inversions % 2 == 1))
    }

    pub fn render(&self, alg: &Algebra) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(alg.name(i).to_string()),
                _ => parts.push(format!("{}^{}", alg.name(i), e)),
            }
        }
        parts.join("*")
    }
}

/// Monomials whose exponents are each at most `cap` (odd generators at most 1),
/// in monomial order.
pub fn monomials_in_box(alg: &Algebra, cap: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for g in alg.generators() {
        let top = if g.parity.is_odd() { cap.min(1) } else { cap };
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                (0..=top).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    let mut v: Vec<Monomial> = out.into_iter().map(Monomial).collect();
    v.sort();
    v
}

/// Monomials of total degree at most `d`, in monomial order.
pub fn monomials_up_to(alg: &Algebra, d: u32) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = monomials_in_box(alg, d).into_iter().filter(|m| m.degree() <= d).collect();
    v.sort();
    v
}

impl Ord for Monomial {
    /// Degree first, then lexicographic on the sorted generator word
    /// (`x1^2 < x1*x2 < x2^2`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                match b.cmp(a) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercore::Generator;

    fn alg() -> std::sync::Arc<Algebra> {
        Algebra::new(vec![Generator::even("x1"), Generator::odd("y1"), Generator::odd("y2")]).unwrap()
    }

    #[test]
    fn odd_reordering_flips_sign() {
        let a = alg();
        let y1 = Monomial::generator(3, 1);
        let y2 = Monomial::generator(3, 2);
        let (m, neg) = y2.mul(&y1, &a).unwrap();
        assert_eq!(m.exponents(), &[0, 1, 1]);
        assert!(neg);
        let (_, neg) = y1.mul(&y2, &a).unwrap();
        assert!(!neg);
        assert!(y1.mul(&y1, &a).is_none());
    }

    #[test]
    fn ordering_is_degree_then_word() {
        let a = Algebra::new(vec![Generator::even("a"), Generator::even("b")]).unwrap();
        let m = |e: Vec<u32>| Monomial::from_exponents(&a, e).unwrap();
        let mut v = [m(vec![0, 2]), m(vec![1, 1]), m(vec![2, 0]), m(vec![0, 1]), m(vec![1, 0])];
        v.sort();
        let shown: Vec<String> = v.iter().map(|x| x.render(&a)).collect();
        assert_eq!(shown, ["a", "b", "a^2", "a*b", "b^2"]);
    }
}
