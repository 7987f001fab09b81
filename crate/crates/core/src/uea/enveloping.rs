use super::{NCPolynomial, Symbol, SymbolKind};
use crate::error::Result;
use crate::poisson::BracketTable;
use crate::rational::{qf, sign, Q};
use crate::rewrite::{self, RewriteRules, Strategy};
use crate::supercore::{ensure_same, AlgebraRef, Monomial, Parity, SuperPolynomial};

/// The Poisson enveloping algebra `U(A)` of a bracket table, presented as a
/// rewriting system on the symbols `m_g, h_g`.
#[derive(Clone, Debug)]
pub struct Uea {
    table: BracketTable,
}

impl Uea {
    pub fn new(table: &BracketTable) -> Self {
        Uea { table: table.clone() }
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.table.algebra()
    }

    /// `m(p)`: each monomial becomes its sorted word of `M` symbols.
    pub fn embed_m(&self, p: &SuperPolynomial) -> Result<NCPolynomial> {
        embed_m(self.algebra(), p)
    }

    /// `h(p)`, expanded to generator-level `h` via
    /// `h(xy) = m(x) h(y) + (-1)^{|x||y|} m(y) h(x)`.
    pub fn embed_h(&self, p: &SuperPolynomial) -> Result<NCPolynomial> {
        embed_h(self.algebra(), p)
    }

    pub fn normalize(&self, p: &NCPolynomial) -> Result<NCPolynomial> {
        rewrite::normalize(self, p, Strategy::Leftmost)
    }

    pub fn normalize_with(&self, p: &NCPolynomial, strategy: Strategy) -> Result<NCPolynomial> {
        rewrite::normalize(self, p, strategy)
    }

    /// Normal form of the product `a b`.
    pub fn mul(&self, a: &NCPolynomial, b: &NCPolynomial) -> Result<NCPolynomial> {
        self.normalize(&a.checked_mul(b)?)
    }

    fn gen_bracket(&self, a: usize, b: usize) -> SuperPolynomial {
        self.table.entry(a, b)
    }
}

pub(crate) fn embed_m(alg: &AlgebraRef, p: &SuperPolynomial) -> Result<NCPolynomial> {
    ensure_same(alg, p.algebra())?;
    let mut out = NCPolynomial::zero(alg);
    for (m, c) in p.terms() {
        out.add_term(m.word().into_iter().map(Symbol::m).collect(), c.clone());
    }
    Ok(out)
}

pub(crate) fn embed_h(alg: &AlgebraRef, p: &SuperPolynomial) -> Result<NCPolynomial> {
    ensure_same(alg, p.algebra())?;
    let mut out = NCPolynomial::zero(alg);
    for (m, c) in p.terms() {
        for (w, s) in h_monomial(alg, m) {
            out.add_term(w, c * &s);
        }
    }
    Ok(out)
}

/// `h(g_1 ... g_k) = sum_i (-1)^{|g_i|(|g_{i+1}| + ... + |g_k|)} m(g_1..^g_i..g_k) h(g_i)`.
///
/// The constant monomial gives nothing: `h(1) = h(1*1) = 2 m(1) h(1)` forces `h(1) = 0`.
fn h_monomial(alg: &AlgebraRef, m: &Monomial) -> Vec<(Vec<Symbol>, Q)> {
    let word = m.word();
    let mut out = Vec::new();
    for i in 0..word.len() {
        let after = word[i + 1..].iter().fold(Parity::Even, |p, &g| p + alg.parity(g));
        let s = sign(alg.parity(word[i]).swap_negates(after));
        let mut w: Vec<Symbol> = word.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &g)| Symbol::m(g)).collect();
        w.push(Symbol::h(word[i]));
        out.push((w, s));
    }
    out
}

impl RewriteRules for Uea {
    fn algebra(&self) -> &AlgebraRef {
        self.table.algebra()
    }

    fn rewrite(&self, a: Symbol, b: Symbol) -> Result<Option<NCPolynomial>> {
        let alg = self.algebra();
        let s = sign(alg.parity(a.gen).swap_negates(alg.parity(b.gen)));
        let swapped = || NCPolynomial::word(alg, vec![b, a], s.clone());
        let odd_square = a.gen == b.gen && alg.parity(a.gen).is_odd();
        Ok(match (a.kind, b.kind) {
            (SymbolKind::H, SymbolKind::M) => {
                Some(swapped().checked_add(&embed_m(alg, &self.gen_bracket(a.gen, b.gen))?)?)
            }
            (SymbolKind::M, SymbolKind::M) if odd_square => Some(NCPolynomial::zero(alg)),
            (SymbolKind::M, SymbolKind::M) if a.gen > b.gen => Some(swapped()),
            (SymbolKind::H, SymbolKind::H) if odd_square => {
                Some(embed_h(alg, &self.gen_bracket(a.gen, a.gen))?.scale(&qf(1, 2)))
            }
            (SymbolKind::H, SymbolKind::H) if a.gen > b.gen => {
                Some(swapped().checked_add(&embed_h(alg, &self.gen_bracket(a.gen, b.gen))?)?)
            }
            _ => None,
        })
    }
}

/// The five defining relation families of `U(A)` on generators `a, b`:
/// `m_a m_b - (-1)^{|a||b|} m_b m_a`, `h_a m_b - (-1)^{|a||b|} m_b h_a - m_{a,b}`,
/// `h_a h_b - (-1)^{|a||b|} h_b h_a - h_{a,b}`, and the two linearity families
/// `m_{ab} - m_a m_b`, `h_{ab} - m_a h_b - (-1)^{|a||b|} m_b h_a`.
pub fn defining_relations(uea: &Uea, a: usize, b: usize) -> Result<Vec<(String, NCPolynomial)>> {
    let alg = uea.algebra();
    let s = sign(alg.parity(a).swap_negates(alg.parity(b)));
    let ga = SuperPolynomial::generator(alg, a);
    let gb = SuperPolynomial::generator(alg, b);
    let br = uea.table.bracket(&ga, &gb)?;
    let ma = NCPolynomial::m(alg, a);
    let mb = NCPolynomial::m(alg, b);
    let ha = NCPolynomial::h(alg, a);
    let hb = NCPolynomial::h(alg, b);
    let ab = ga.checked_mul(&gb)?;
    let (na, nb) = (alg.name(a), alg.name(b));
    Ok(vec![
        (format!("m_{na} m_{nb}"), ma.checked_mul(&mb)?.checked_sub(&mb.checked_mul(&ma)?.scale(&s))?),
        (
            format!("h_{na} m_{nb}"),
            ha.checked_mul(&mb)?.checked_sub(&mb.checked_mul(&ha)?.scale(&s))?.checked_sub(&embed_m(alg, &br)?)?,
        ),
        (
            format!("h_{na} h_{nb}"),
            ha.checked_mul(&hb)?.checked_sub(&hb.checked_mul(&ha)?.scale(&s))?.checked_sub(&embed_h(alg, &br)?)?,
        ),
        (format!("m_({na}{nb})"), embed_m(alg, &ab)?.checked_sub(&ma.checked_mul(&mb)?)?),
        (
            format!("h_({na}{nb})"),
            embed_h(alg, &ab)?.checked_sub(&ma.checked_mul(&hb)?)?.checked_sub(&mb.checked_mul(&ha)?.scale(&s))?,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::symplectic_super;
    use crate::supercore::{Algebra, Generator};

    fn p1() -> Uea {
        Uea::new(&symplectic_super(1).unwrap())
    }

    #[test]
    fn embed_examples() {
        let alg = Algebra::new(vec![Generator::even("x"), Generator::even("y")]).unwrap();
        let u = Uea::new(&BracketTable::trivial(&alg));
        let xy = SuperPolynomial::var(&alg, "x") * SuperPolynomial::var(&alg, "y");
        assert_eq!(u.embed_m(&xy).unwrap().to_string(), "1 m(x)m(y)");
        assert!(u.embed_h(&SuperPolynomial::one(&alg)).unwrap().is_zero());
        assert_eq!(u.embed_h(&xy).unwrap().to_string(), "1 m(x)h(y) + 1 m(y)h(x)");
    }

    #[test]
    fn p1_normal_forms() {
        let u = p1();
        let a = u.algebra().clone();
        let hx_my = NCPolynomial::h(&a, 0).checked_mul(&NCPolynomial::m(&a, 1)).unwrap();
        assert_eq!(u.normalize(&hx_my).unwrap().to_string(), "-1 m(y1)h(x1) + 1");
        let hx_hx = NCPolynomial::h(&a, 0).checked_mul(&NCPolynomial::h(&a, 0)).unwrap();
        assert!(u.normalize(&hx_hx).unwrap().is_zero());
    }

    #[test]
    fn trivial_even_commutes() {
        let alg = Algebra::new(vec![Generator::even("x")]).unwrap();
        let u = Uea::new(&BracketTable::trivial(&alg));
        let w = NCPolynomial::h(&alg, 0).checked_mul(&NCPolynomial::m(&alg, 0)).unwrap();
        assert_eq!(u.normalize(&w).unwrap().to_string(), "1 m(x)h(x)");
    }

    #[test]
    fn relations_vanish_p2() {
        let u = Uea::new(&symplectic_super(2).unwrap());
        for a in 0..4 {
            for b in 0..4 {
                for (name, r) in defining_relations(&u, a, b).unwrap() {
                    assert!(u.normalize(&r).unwrap().is_zero(), "{name}");
                }
            }
        }
    }
}
