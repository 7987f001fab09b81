use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::HopfData;
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseVec};
use crate::poisson::BracketTable;
use crate::rational::{qf, sign, Q};
use crate::rewrite::{is_normal, normalize, RewriteRules, Strategy};
use crate::supercore::{Algebra, AlgebraRef, Generator, SuperPolynomial};
use crate::uea::{pbw_terms, NCPolynomial, Symbol, SymbolKind, Uea, Word};

pub const DELTA_TYPO_NOTE: &str =
    "Delta(a) = a@1 + a@a as printed is not counital for epsilon(a) = 0; using the primitive Delta(a) = a@1 + 1@a";

/// `PS(L)`: the symmetric superalgebra of a Lie superalgebra `L` with the
/// linear Poisson bracket and every generator primitive.
///
/// `table` must have linear (or zero) entries; they are read as the Lie bracket.
pub fn poisson_symmetric(table: &BracketTable) -> Result<HopfData> {
    let alg = table.algebra();
    for i in 0..alg.len() {
        for j in 0..alg.len() {
            let v = table.entry(i, j);
            if v.terms().any(|(m, _)| m.degree() != 1) {
                return Err(Error::InvalidArgument(format!(
                    "{{{}, {}}} = {v} is not linear, so this is not a Lie bracket",
                    alg.name(i),
                    alg.name(j)
                )));
            }
        }
    }
    Ok(HopfData::primitive(table)?.with_note(DELTA_TYPO_NOTE))
}

/// `PS(L)` for `L` one-dimensional odd and abelian.
pub fn ps_odd_line() -> Result<HopfData> {
    let alg = Algebra::new(vec![Generator::odd("y")])?;
    poisson_symmetric(&BracketTable::trivial(&alg))
}

/// `PS(L)` for `L` one-dimensional even.
pub fn ps_even_line() -> Result<HopfData> {
    let alg = Algebra::new(vec![Generator::even("x")])?;
    poisson_symmetric(&BracketTable::trivial(&alg))
}

/// `PS(L)` for `L = <x | y>` with `x` even, `y` odd and `[y, y] = x`.
pub fn ps_odd_square() -> Result<HopfData> {
    let alg = Algebra::new(vec![Generator::even("x"), Generator::odd("y")])?;
    let mut b = BracketTable::builder(&alg);
    b.set_named("y", "y", SuperPolynomial::var(&alg, "x"))?;
    poisson_symmetric(&b.build())
}

/// `U(V x| L)` for `V` the abelian copy of `L` with the adjoint action.
/// `M_i` stands for `v_i in V`, `H_i` for `x_i in L`; PBW order puts `V` first.
pub struct LieUea {
    table: BracketTable,
}

impl LieUea {
    pub fn new(table: &BracketTable) -> Self {
        LieUea { table: table.clone() }
    }

    fn linear(&self, kind: SymbolKind, p: &SuperPolynomial) -> NCPolynomial {
        let alg = self.table.algebra();
        let mut out = NCPolynomial::zero(alg);
        for (m, c) in p.terms() {
            let g = m.word()[0];
            out.add_term(vec![Symbol { kind, gen: g }], c.clone());
        }
        out
    }

    /// The semidirect bracket `[a, b]` on basis symbols.
    pub fn lie_bracket(&self, a: Symbol, b: Symbol) -> NCPolynomial {
        let v = self.table.entry(a.gen, b.gen);
        match (a.kind, b.kind) {
            (SymbolKind::M, SymbolKind::M) => NCPolynomial::zero(self.table.algebra()),
            (SymbolKind::H, SymbolKind::H) => self.linear(SymbolKind::H, &v),
            _ => self.linear(SymbolKind::M, &v),
        }
    }

    pub fn normalize(&self, p: &NCPolynomial) -> Result<NCPolynomial> {
        normalize(self, p, Strategy::Leftmost)
    }
}

impl RewriteRules for LieUea {
    fn algebra(&self) -> &AlgebraRef {
        self.table.algebra()
    }

    fn rewrite(&self, a: Symbol, b: Symbol) -> Result<Option<NCPolynomial>> {
        let alg = self.table.algebra();
        let (pa, pb) = (a.parity(alg), b.parity(alg));
        if a == b && pa.is_odd() {
            return Ok(Some(self.lie_bracket(a, a).scale(&qf(1, 2))));
        }
        if a <= b {
            return Ok(None);
        }
        let s = sign(pa.swap_negates(pb));
        let swapped = NCPolynomial::word(alg, vec![b, a], s);
        Ok(Some(swapped.checked_add(&self.lie_bracket(a, b))?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub degree: u32,
    pub lie_hom: bool,
    pub failed_pair: Option<(String, String)>,
    pub source_basis_size: usize,
    pub target_basis_size: usize,
    pub distinct_images: bool,
    pub image_rank: usize,
    pub passed: bool,
}

fn words_up_to(symbols: &[Symbol], d: u32) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..d {
        layer = layer
            .iter()
            .flat_map(|w| {
                symbols.iter().map(move |&s| {
                    let mut w = w.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Compares `Phi: U(V x| L) -> U(PS(L))`, `v -> m_v`, `x -> h_x`, on bases up
/// to degree `d`: `Phi` respects the Lie relations, both sides have the same
/// number of normal words, and the images are distinct PBW monomials.
pub fn phi_check(h: &HopfData, d: u32) -> Result<PhiReport> {
    let table = h.table();
    let alg = table.algebra();
    let lie = LieUea::new(table);
    let uea = Uea::new(table);
    let n = alg.len();
    let symbols: Vec<Symbol> = (0..n).flat_map(|g| [Symbol::m(g), Symbol::h(g)]).collect();

    let mut failed_pair = None;
    'pairs: for &a in &symbols {
        for &b in &symbols {
            let s = sign(a.parity(alg).swap_negates(b.parity(alg)));
            let rel = NCPolynomial::word(alg, vec![a, b], Q::one())
                .checked_sub(&NCPolynomial::word(alg, vec![b, a], s))?
                .checked_sub(&lie.lie_bracket(a, b))?;
            if !uea.normalize(&rel)?.is_zero() {
                let name = |x: Symbol| crate::uea::render_word(&[x], &|s| crate::uea::default_symbol(alg, s));
                failed_pair = Some((name(a), name(b)));
                break 'pairs;
            }
        }
    }

    let mut source = Vec::new();
    for w in words_up_to(&symbols, d) {
        if is_normal(&lie, &w)? {
            source.push(w);
        }
    }
    let mut target = 0;
    for w in words_up_to(&symbols, d) {
        if is_normal(&uea, &w)? {
            target += 1;
        }
    }

    let mut rows: Vec<SparseVec<Word>> = Vec::new();
    let mut leading = BTreeSet::new();
    let mut distinct = true;
    for w in &source {
        let img = uea.normalize(&NCPolynomial::word(alg, w.clone(), Q::one()))?;
        let terms = pbw_terms(&img)?;
        if terms.len() != 1 || !leading.insert(terms[0].0.word()) {
            distinct = false;
        }
        rows.push(terms.into_iter().map(|(m, c)| (m.word(), c)).filter(|(_, c)| !c.is_zero()).collect());
    }
    let image_rank = rank(&rows);
    let passed = failed_pair.is_none() && distinct && source.len() == target && image_rank == source.len();
    Ok(PhiReport {
        degree: d,
        lie_hom: failed_pair.is_none(),
        failed_pair,
        source_basis_size: source.len(),
        target_basis_size: target,
        distinct_images: distinct,
        image_rank,
        passed,
    })
}
