use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use super::skew::{Skew, SkewPolynomial};
use super::{extend_ore, x_coefficients, OreData};
use crate::error::Result;
use crate::linalg::{rank, SparseVec};
use crate::rational::Q;
use crate::supercore::{AlgebraRef, SuperPolynomial};
use crate::uea::{defining_relations, pbw_basis_total, NCPolynomial, Symbol, SymbolKind, Uea, Word};

/// `phi: A^e -> R^e[m_x; sigma_1, eta_1][h_x; sigma_2, eta_2]` on symbols of
/// `A^e`, where `A = R[x]` has `x` as its last generator.
pub struct OrePhi<'a> {
    skew: Skew<'a>,
    ext: AlgebraRef,
    n: usize,
}

impl<'a> OrePhi<'a> {
    pub fn new(o: &'a OreData) -> Result<Self> {
        let ext = extend_ore(o)?.algebra().clone();
        Ok(OrePhi { skew: Skew::new(o), ext, n: o.algebra().len() })
    }

    pub fn extended_algebra(&self) -> &AlgebraRef {
        &self.ext
    }

    fn symbol(&self, s: Symbol) -> SkewPolynomial {
        if s.gen == self.n {
            return match s.kind {
                SymbolKind::M => SkewPolynomial::m_x(),
                SymbolKind::H => SkewPolynomial::h_x(),
            };
        }
        SkewPolynomial::term(vec![s], 0, 0, Q::one())
    }

    pub fn word(&self, w: &[Symbol]) -> Result<SkewPolynomial> {
        let mut acc = SkewPolynomial::one();
        for &s in w {
            acc = self.skew.mul(&acc, &self.symbol(s))?;
        }
        Ok(acc)
    }

    /// `phi` on an element of the free algebra on the symbols of `A^e`.
    pub fn apply(&self, p: &NCPolynomial) -> Result<SkewPolynomial> {
        let mut out = SkewPolynomial::zero();
        for (w, c) in p.terms() {
            out = out.add(&self.word(w)?.scale(c));
        }
        Ok(out)
    }

    /// `phi(m_a)` for `a` in `A`.
    pub fn m_of(&self, a: &SuperPolynomial) -> Result<SkewPolynomial> {
        self.apply(&Uea::new(&crate::poisson::BracketTable::trivial(&self.ext)).embed_m(a)?)
    }

    /// `phi(h_a)` for `a` in `A`.
    pub fn h_of(&self, a: &SuperPolynomial) -> Result<SkewPolynomial> {
        self.apply(&Uea::new(&crate::poisson::BracketTable::trivial(&self.ext)).embed_h(a)?)
    }

    pub(crate) fn skew(&self) -> &Skew<'a> {
        &self.skew
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OreIsoReport {
    pub degree: u32,
    pub relations_checked: usize,
    pub failed_relation: Option<String>,
    pub source_basis_size: usize,
    pub target_basis_size: usize,
    pub image_rank: usize,
    pub passed: bool,
}

/// Checks that `phi` kills every defining relation of `A^e` (also multiplied
/// on either side by PBW words, up to total length `d`), that `A^e` and the
/// left module basis `R^e-basis x m_x^i h_x^j` have the same size in degree
/// `<= d`, and that `phi` maps the PBW basis of `A^e` to independent elements.
pub fn phi_iso_check(o: &OreData, d: u32) -> Result<OreIsoReport> {
    let table = extend_ore(o)?;
    let phi = OrePhi::new(o)?;
    let ext = table.algebra().clone();
    let uea = Uea::new(&table);
    let basis = pbw_basis_total(&ext, d);

    let mut report = OreIsoReport {
        degree: d,
        relations_checked: 0,
        failed_relation: None,
        source_basis_size: basis.len(),
        target_basis_size: 0,
        image_rank: 0,
        passed: false,
    };

    for a in 0..ext.len() {
        for b in 0..ext.len() {
            for (name, rel) in defining_relations(&uea, a, b)? {
                let rel_deg = rel.degree().unwrap_or(0) as u32;
                for u in basis.iter().filter(|u| u.degree() + rel_deg <= d.max(rel_deg)) {
                    let up = u.to_poly(&ext);
                    for (side, p) in [("left", up.checked_mul(&rel)?), ("right", rel.checked_mul(&up)?)] {
                        if !phi.apply(&p)?.is_zero() {
                            let at =
                                if u.degree() == 0 { String::new() } else { format!(" times {} on the {side}", up) };
                            report.failed_relation = Some(format!("{name}{at}"));
                            return Ok(report);
                        }
                        report.relations_checked += 1;
                        if u.degree() == 0 {
                            break;
                        }
                    }
                }
            }
        }
    }

    let base_basis = pbw_basis_total(o.algebra(), d);
    for b in &base_basis {
        let rest = d - b.degree();
        report.target_basis_size += ((rest + 1) * (rest + 2) / 2) as usize;
    }

    let mut rows: Vec<SparseVec<(Word, u32, u32)>> = Vec::new();
    for b in &basis {
        let img = phi.word(&b.word())?;
        rows.push(img.terms().map(|(k, c)| (k.clone(), c.clone())).collect::<BTreeMap<_, _>>());
    }
    report.image_rank = rank(&rows);
    report.passed = report.failed_relation.is_none()
        && report.source_basis_size == report.target_basis_size
        && report.image_rank == basis.len();
    Ok(report)
}

/// `sum_i (i m_{c_i} m_x^{i-1} h_x + m_x^i h_{c_i})` for `a = sum c_i x^i`,
/// the closed form of `phi(h_a)`.
pub fn phi_h_closed(o: &OreData, a: &SuperPolynomial) -> Result<SkewPolynomial> {
    let phi = OrePhi::new(o)?;
    let sk = phi.skew();
    let uea = sk.uea();
    let mut out = SkewPolynomial::zero();
    for (i, c) in x_coefficients(a, o.algebra())?.iter().enumerate() {
        let i = i as u32;
        if i > 0 {
            let mc = SkewPolynomial::from_base(&uea.embed_m(c)?, i - 1, 1);
            out = out.add(&mc.scale(&Q::from_integer(i.into())));
        }
        let hc = SkewPolynomial::from_base(&uea.normalize(&uea.embed_h(c)?)?, 0, 0);
        out = out.add(&sk.mul(&SkewPolynomial::term(Vec::new(), i, 0, Q::one()), &hc)?);
    }
    Ok(out)
}
