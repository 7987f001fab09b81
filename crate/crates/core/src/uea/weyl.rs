use serde::Serialize;

use super::pbw::pbw_basis_total;
use super::{NCPolynomial, Symbol, SymbolKind, Uea};
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseVec};
use crate::poisson::{symplectic_super, BracketTable};
use crate::rational::sign;
use crate::rewrite::{self, RewriteRules, Strategy};
use crate::supercore::{Algebra, AlgebraRef, Generator, Parity};

/// Weyl superalgebra `C_{p|q}` on `X_1..X_{p+q}, Y_1..Y_{p+q}` with
/// `[X_i, Y_j]_gr = delta_ij` and all other supercommutators zero;
/// `X_i, Y_i` are even for `i <= p` and odd above.
///
/// Words reuse the enveloping-algebra symbols: `X_i` is `M` and `Y_i` is `H`
/// on an auxiliary generator `Z_i` carrying the parity.
#[derive(Clone, Debug)]
pub struct WeylAlgebra {
    p: usize,
    q: usize,
    alg: AlgebraRef,
}

impl WeylAlgebra {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::InvalidArgument("Weyl superalgebra needs p + q >= 1".into()));
        }
        let gens = (1..=p + q)
            .map(|i| Generator::new(format!("Z{i}"), if i <= p { Parity::Even } else { Parity::Odd }))
            .collect();
        Ok(WeylAlgebra { p, q, alg: Algebra::new(gens)? })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn rank(&self) -> usize {
        self.p + self.q
    }

    pub fn symbol_algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    fn check(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.rank() {
            return Err(Error::UnknownSymbol(format!("index {i} (valid: 1..={})", self.rank())));
        }
        Ok(i - 1)
    }

    /// `X_i`, one-based.
    pub fn x(&self, i: usize) -> Result<NCPolynomial> {
        Ok(NCPolynomial::m(&self.alg, self.check(i)?))
    }

    /// `Y_i`, one-based.
    pub fn y(&self, i: usize) -> Result<NCPolynomial> {
        Ok(NCPolynomial::h(&self.alg, self.check(i)?))
    }

    pub fn normalize(&self, w: &NCPolynomial) -> Result<NCPolynomial> {
        rewrite::normalize(self, w, Strategy::Leftmost)
    }

    pub fn symbol_name(s: Symbol) -> String {
        match s.kind {
            SymbolKind::M => format!("X{}", s.gen + 1),
            SymbolKind::H => format!("Y{}", s.gen + 1),
        }
    }

    pub fn render(&self, w: &NCPolynomial) -> String {
        w.render_with(Self::symbol_name)
    }

    /// Defining relations `[X_i, Y_j]_gr - delta_ij` (all `i, j`) and
    /// `[X_i, X_j]_gr`, `[Y_i, Y_j]_gr` (`i < j`).
    pub fn relations(&self) -> Result<Vec<(String, NCPolynomial)>> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let mut r = self.x(i)?.supercommutator(&self.y(j)?)?;
                if i == j {
                    r = r.checked_sub(&NCPolynomial::one(&self.alg))?;
                }
                out.push((format!("[X{i}, Y{j}]"), r));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                out.push((format!("[X{i}, X{j}]"), self.x(i)?.supercommutator(&self.x(j)?)?));
                out.push((format!("[Y{i}, Y{j}]"), self.y(i)?.supercommutator(&self.y(j)?)?));
            }
        }
        Ok(out)
    }

    /// `[X_i, X_i]_gr` and `[Y_i, Y_i]_gr` for odd indices.
    pub fn square_relations(&self) -> Result<Vec<(String, NCPolynomial)>> {
        let mut out = Vec::new();
        for i in self.p + 1..=self.rank() {
            out.push((format!("[X{i}, X{i}]"), self.x(i)?.supercommutator(&self.x(i)?)?));
            out.push((format!("[Y{i}, Y{i}]"), self.y(i)?.supercommutator(&self.y(i)?)?));
        }
        Ok(out)
    }
}

impl RewriteRules for WeylAlgebra {
    fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    fn rewrite(&self, a: Symbol, b: Symbol) -> Result<Option<NCPolynomial>> {
        let alg = &self.alg;
        let s = sign(alg.parity(a.gen).swap_negates(alg.parity(b.gen)));
        let swapped = NCPolynomial::word(alg, vec![b, a], s.clone());
        let odd_square = a.gen == b.gen && alg.parity(a.gen).is_odd();
        Ok(match (a.kind, b.kind) {
            // Y_j X_i = s X_i Y_j - s delta_ij
            (SymbolKind::H, SymbolKind::M) if a.gen == b.gen => {
                Some(swapped.checked_sub(&NCPolynomial::constant(alg, s))?)
            }
            (SymbolKind::H, SymbolKind::M) => Some(swapped),
            (ka, kb) if ka == kb && odd_square => Some(NCPolynomial::zero(alg)),
            (ka, kb) if ka == kb && a.gen > b.gen => Some(swapped),
            _ => None,
        })
    }
}

/// Result of comparing `C_{2n}` with `U(P_n)` through
/// `X_i -> m_{x_i}, X_{i+n} -> m_{y_i}, Y_i -> h_{y_i}, Y_{i+n} -> h_{x_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticIsoReport {
    pub n: usize,
    pub degree: u32,
    pub relations_checked: usize,
    pub square_relations_checked: usize,
    pub failed_relation: Option<String>,
    pub weyl_basis_size: usize,
    pub uea_basis_size: usize,
    pub image_rank: usize,
    pub passed: bool,
}

/// The isomorphism check against the standard symplectic table.
pub fn symplectic_iso_check(n: usize, d: u32) -> Result<SymplecticIsoReport> {
    symplectic_iso_check_with(&symplectic_super(n)?, n, d)
}

/// Same check against any table on `x1..xn, y1..yn` (in that order), so that
/// corrupted brackets can be exercised.
pub fn symplectic_iso_check_with(table: &BracketTable, n: usize, d: u32) -> Result<SymplecticIsoReport> {
    if n == 0 || table.algebra().len() != 2 * n {
        return Err(Error::InvalidArgument(format!("expected a table on 2n = {} generators", 2 * n)));
    }
    let weyl = WeylAlgebra::new(0, 2 * n)?;
    let uea = Uea::new(table);
    let target = uea.algebra().clone();
    let phi = |s: Symbol| -> Result<NCPolynomial> {
        Ok(match s.kind {
            SymbolKind::M => NCPolynomial::m(&target, s.gen),
            SymbolKind::H if s.gen < n => NCPolynomial::h(&target, s.gen + n),
            SymbolKind::H => NCPolynomial::h(&target, s.gen - n),
        })
    };
    let mut failed = None;
    let relations = weyl.relations()?;
    let squares = weyl.square_relations()?;
    for (name, r) in relations.iter().chain(&squares) {
        if !uea.normalize(&r.substitute(&target, phi)?)?.is_zero() {
            failed = Some(name.clone());
            break;
        }
    }
    let weyl_basis = pbw_basis_total(weyl.symbol_algebra(), d);
    let uea_basis = pbw_basis_total(&target, d);
    let mut rows: Vec<SparseVec<Vec<Symbol>>> = Vec::with_capacity(weyl_basis.len());
    for b in &weyl_basis {
        let image = uea.normalize(&b.to_poly(weyl.symbol_algebra()).substitute(&target, phi)?)?;
        rows.push(image.terms().map(|(w, c)| (w.clone(), c.clone())).collect());
    }
    let image_rank = rank(&rows);
    let passed = failed.is_none() && weyl_basis.len() == uea_basis.len() && image_rank == uea_basis.len();
    Ok(SymplecticIsoReport {
        n,
        degree: d,
        relations_checked: relations.len(),
        square_relations_checked: squares.len(),
        failed_relation: failed,
        weyl_basis_size: weyl_basis.len(),
        uea_basis_size: uea_basis.len(),
        image_rank,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_examples() {
        let w = WeylAlgebra::new(0, 2).unwrap();
        let y1x1 = w.y(1).unwrap().checked_mul(&w.x(1).unwrap()).unwrap();
        assert_eq!(w.render(&w.normalize(&y1x1).unwrap()), "-1 X1Y1 + 1");
        let x1x1 = w.x(1).unwrap().checked_mul(&w.x(1).unwrap()).unwrap();
        assert!(w.normalize(&x1x1).unwrap().is_zero());
        let y2x1 = w.y(2).unwrap().checked_mul(&w.x(1).unwrap()).unwrap();
        assert_eq!(w.render(&w.normalize(&y2x1).unwrap()), "-1 X1Y2");
    }

    #[test]
    fn even_weyl_commutator() {
        let w = WeylAlgebra::new(1, 0).unwrap();
        let yx = w.y(1).unwrap().checked_mul(&w.x(1).unwrap()).unwrap();
        assert_eq!(w.render(&w.normalize(&yx).unwrap()), "1 X1Y1 + -1");
        assert!(w.x(2).is_err());
    }

    #[test]
    fn p1_is_c2() {
        let r = symplectic_iso_check(1, 4).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!((r.weyl_basis_size, r.uea_basis_size, r.image_rank), (16, 16, 16));
        assert_eq!(r.relations_checked, 6);
    }

    #[test]
    fn corrupted_bracket_breaks_relation() {
        let t = symplectic_super(1).unwrap();
        let a = t.algebra().clone();
        let mut b = BracketTable::builder(&a);
        b.set(0, 0, crate::supercore::SuperPolynomial::zero(&a)).unwrap();
        b.set(1, 1, crate::supercore::SuperPolynomial::zero(&a)).unwrap();
        let r = symplectic_iso_check_with(&b.build(), 1, 2).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failed_relation.as_deref(), Some("[X1, Y1]"));
    }
}
