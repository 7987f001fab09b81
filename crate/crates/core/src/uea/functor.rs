use super::{embed_h, embed_m, NCPolynomial, SymbolKind};
use crate::error::{Error, Result};
use crate::poisson::BracketTable;
use crate::rational::sign;
use crate::supercore::{ensure_same, SuperPolynomial};

/// The anti-automorphism `m_x -> m_x, h_x -> -h_x`, reversing each word with
/// its Koszul sign.
pub fn opposite_uea(p: &NCPolynomial) -> NCPolynomial {
    let alg = p.algebra();
    let mut out = NCPolynomial::zero(alg);
    for (w, c) in p.terms() {
        let mut negative = w.iter().filter(|s| s.kind == SymbolKind::H).count() % 2 == 1;
        let odd: Vec<bool> = w.iter().map(|s| alg.parity(s.gen).is_odd()).collect();
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                negative ^= odd[i] && odd[j];
            }
        }
        let rev = w.iter().rev().copied().collect();
        out.add_term(rev, c * sign(negative));
    }
    out
}

/// A super Poisson homomorphism between bracket tables, given on generators.
#[derive(Clone, Debug)]
pub struct PoissonMap {
    source: BracketTable,
    target: BracketTable,
    images: Vec<SuperPolynomial>,
}

impl PoissonMap {
    /// Validates parity preservation and `phi({a, b}) = {phi(a), phi(b)}` on
    /// generator pairs.
    pub fn new(source: &BracketTable, target: &BracketTable, images: Vec<SuperPolynomial>) -> Result<Self> {
        let (sa, ta) = (source.algebra(), target.algebra());
        if images.len() != sa.len() {
            return Err(Error::InvalidArgument(format!("need {} generator images", sa.len())));
        }
        for (i, img) in images.iter().enumerate() {
            ensure_same(ta, img.algebra())?;
            if !img.is_zero() && img.parity() != Some(sa.parity(i)) {
                return Err(Error::Parity(format!("image of {} must be {}", sa.name(i), sa.parity(i))));
            }
        }
        let map = PoissonMap { source: source.clone(), target: target.clone(), images };
        for i in 0..sa.len() {
            for j in i..sa.len() {
                let lhs = map.apply(&source.entry(i, j))?;
                let rhs = target.bracket(&map.images[i], &map.images[j])?;
                if lhs != rhs {
                    return Err(Error::NotPoisson(format!(
                        "phi({{{a}, {b}}}) = {lhs} but {{phi({a}), phi({b})}} = {rhs}",
                        a = sa.name(i),
                        b = sa.name(j)
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(t: &BracketTable) -> Self {
        let images = (0..t.algebra().len()).map(|i| SuperPolynomial::generator(t.algebra(), i)).collect();
        PoissonMap { source: t.clone(), target: t.clone(), images }
    }

    pub fn source(&self) -> &BracketTable {
        &self.source
    }

    pub fn target(&self) -> &BracketTable {
        &self.target
    }

    pub fn apply(&self, p: &SuperPolynomial) -> Result<SuperPolynomial> {
        p.substitute(self.target.algebra(), &self.images)
    }

    /// `U(phi)`: `m_a -> m(phi(a))`, `h_a -> h(phi(a))`, not normalized.
    pub fn uea_functor(&self, p: &NCPolynomial) -> Result<NCPolynomial> {
        ensure_same(self.source.algebra(), p.algebra())?;
        let ta = self.target.algebra();
        p.substitute(ta, |s| match s.kind {
            SymbolKind::M => embed_m(ta, &self.images[s.gen]),
            SymbolKind::H => embed_h(ta, &self.images[s.gen]),
        })
    }
}

/// Free-function form of [`PoissonMap::uea_functor`].
pub fn uea_functor(phi: &PoissonMap, p: &NCPolynomial) -> Result<NCPolynomial> {
    phi.uea_functor(p)
}
