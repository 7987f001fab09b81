use std::cmp::Ordering;

use super::{NCPolynomial, Symbol, Word};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::supercore::{monomials_in_box, monomials_up_to, Algebra, AlgebraRef, Monomial};

/// Ordered PBW monomial `m_{g_1}^{r_1} ... m_{g_n}^{r_n} h_{g_1}^{s_1} ... h_{g_n}^{s_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PBWMonomial {
    pub m: Monomial,
    pub h: Monomial,
}

impl PBWMonomial {
    pub fn one(n: usize) -> Self {
        PBWMonomial { m: Monomial::one(n), h: Monomial::one(n) }
    }

    pub fn m_degree(&self) -> u32 {
        self.m.degree()
    }

    pub fn h_degree(&self) -> u32 {
        self.h.degree()
    }

    pub fn degree(&self) -> u32 {
        self.m.degree() + self.h.degree()
    }

    pub fn word(&self) -> Word {
        let mut w: Word = self.m.word().into_iter().map(Symbol::m).collect();
        w.extend(self.h.word().into_iter().map(Symbol::h));
        w
    }

    /// Reads a word already in PBW order; `None` otherwise.
    pub fn from_word(alg: &Algebra, w: &[Symbol]) -> Option<Self> {
        if w.windows(2).any(|p| p[0] > p[1] || (p[0] == p[1] && alg.parity(p[0].gen).is_odd())) {
            return None;
        }
        let mut m = vec![0u32; alg.len()];
        let mut h = vec![0u32; alg.len()];
        for s in w {
            match s.kind {
                super::SymbolKind::M => m[s.gen] += 1,
                super::SymbolKind::H => h[s.gen] += 1,
            }
        }
        Some(PBWMonomial { m: Monomial::from_exponents(alg, m)?, h: Monomial::from_exponents(alg, h)? })
    }

    pub fn to_poly(&self, alg: &AlgebraRef) -> NCPolynomial {
        NCPolynomial::word(alg, self.word(), Q::from_integer(1.into()))
    }
}

impl Ord for PBWMonomial {
    /// Total degree, then the symbol word lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.word().cmp(&other.word()))
    }
}

impl PartialOrd for PBWMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// PBW monomials whose `m`-exponents are each at most `dm` and `h`-exponents
/// each at most `dh` (odd generators capped at 1).
pub fn pbw_basis(alg: &Algebra, dm: u32, dh: u32) -> Vec<PBWMonomial> {
    let ms = monomials_in_box(alg, dm);
    let hs = monomials_in_box(alg, dh);
    let mut out: Vec<_> =
        ms.iter().flat_map(|m| hs.iter().map(move |h| PBWMonomial { m: m.clone(), h: h.clone() })).collect();
    out.sort();
    out
}

/// PBW monomials of total degree at most `d`.
pub fn pbw_basis_total(alg: &Algebra, d: u32) -> Vec<PBWMonomial> {
    let ms = monomials_up_to(alg, d);
    let mut out: Vec<_> = ms
        .iter()
        .flat_map(|m| monomials_up_to(alg, d - m.degree()).into_iter().map(move |h| PBWMonomial { m: m.clone(), h }))
        .collect();
    out.sort();
    out
}

/// Coordinates of a normalized element on the PBW basis.
pub fn pbw_terms(p: &NCPolynomial) -> Result<Vec<(PBWMonomial, Q)>> {
    let alg = p.algebra();
    let mut out: Vec<_> = p
        .terms()
        .map(|(w, c)| {
            PBWMonomial::from_word(alg, w)
                .map(|m| (m, c.clone()))
                .ok_or_else(|| Error::InvalidArgument("element is not in PBW normal form".into()))
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercore::Generator;

    #[test]
    fn basis_counts() {
        let p1 = Algebra::new(vec![Generator::odd("x1"), Generator::odd("y1")]).unwrap();
        assert_eq!(pbw_basis(&p1, 5, 5).len(), 16);
        let kx = Algebra::new(vec![Generator::even("x")]).unwrap();
        let b = pbw_basis(&kx, 1, 1);
        let shown: Vec<_> =
            b.iter().map(|m| NCPolynomial::word(&kx, m.word(), Q::from_integer(1.into())).to_string()).collect();
        assert_eq!(shown, ["1", "1 m(x)", "1 h(x)", "1 m(x)h(x)"]);
        let kxy = Algebra::new(vec![Generator::even("x"), Generator::odd("y")]).unwrap();
        assert_eq!(pbw_basis(&kxy, 2, 2).len(), 36);
        assert_eq!(pbw_basis_total(&kxy, 2).len(), 1 + 4 + 8);
    }
}
