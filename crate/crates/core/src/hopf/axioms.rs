use num_traits::{One, Zero};
use serde::Serialize;

use super::{HopfData, UeaTensor};
use crate::error::Result;
use crate::rational::{sign, Q};
use crate::supercore::Parity;
use crate::uea::{pbw_basis_total, NCPolynomial, PBWMonomial, Symbol, SymbolKind, Uea, Word};

/// Image of a single symbol under `U(Delta)`.
fn symbol_coproduct(h: &HopfData, uea: &Uea, s: Symbol) -> Result<UeaTensor> {
    let mut out = UeaTensor::zero(2);
    for (a, b) in h.delta_gen(s.gen).pairs() {
        let (ma, mb) = (uea.embed_m(&a)?, uea.embed_m(&b)?);
        let t = match s.kind {
            SymbolKind::M => UeaTensor::pure(&[ma, mb]),
            SymbolKind::H => {
                let (ha, hb) = (uea.normalize(&uea.embed_h(&a)?)?, uea.normalize(&uea.embed_h(&b)?)?);
                UeaTensor::pure(&[ma, hb]).add(&UeaTensor::pure(&[ha, mb]))
            }
        };
        out = out.add(&t);
    }
    Ok(out)
}

fn word_coproduct(h: &HopfData, uea: &Uea, w: &[Symbol]) -> Result<UeaTensor> {
    let mut acc = UeaTensor::one(2);
    for &s in w {
        acc = acc.mul(&symbol_coproduct(h, uea, s)?, uea)?;
    }
    Ok(acc)
}

/// `U(Delta)`: `M_a -> (m (x) m) Delta(a)`, `H_a -> (m (x) h + h (x) m) Delta(a)`.
pub fn uea_coproduct(h: &HopfData, p: &NCPolynomial) -> Result<UeaTensor> {
    let uea = Uea::new(h.table());
    let mut out = UeaTensor::zero(2);
    for (w, c) in p.terms() {
        out = out.add(&word_coproduct(h, &uea, w)?.scale(c));
    }
    Ok(out)
}

/// `U(epsilon)`: kills `H`, evaluates `epsilon` on `M`.
pub fn uea_counit(h: &HopfData, p: &NCPolynomial) -> Q {
    p.terms()
        .map(|(w, c)| {
            w.iter().fold(c.clone(), |acc, s| match s.kind {
                SymbolKind::M => acc * h.epsilon_gen(s.gen),
                SymbolKind::H => Q::zero(),
            })
        })
        .sum()
}

/// Koszul sign of reversing a word: one factor per pair of odd symbols.
fn reversal_negates(w: &[Symbol], h: &HopfData) -> bool {
    let odd = w.iter().filter(|s| s.parity(h.algebra()) == Parity::Odd).count();
    (odd * odd.saturating_sub(1) / 2) % 2 == 1
}

/// `U(S)`: the anti-homomorphism `M_a -> m_{S(a)}`, `H_a -> h_{S(a)}`, normalized.
pub fn uea_antipode(h: &HopfData, p: &NCPolynomial) -> Result<NCPolynomial> {
    let uea = Uea::new(h.table());
    let alg = h.algebra();
    let mut out = NCPolynomial::zero(alg);
    for (w, c) in p.terms() {
        let mut acc = NCPolynomial::constant(alg, c * sign(reversal_negates(w, h)));
        for s in w.iter().rev() {
            let img = h.antipode_gen(s.gen);
            let e = match s.kind {
                SymbolKind::M => uea.embed_m(img)?,
                SymbolKind::H => uea.embed_h(img)?,
            };
            acc = acc.checked_mul(&e)?;
        }
        out = out.checked_add(&acc)?;
    }
    uea.normalize(&out)
}

/// Multiplication `U (x) U -> U`.
fn multiply(uea: &Uea, t: &UeaTensor) -> Result<NCPolynomial> {
    let alg = uea.algebra();
    let mut out = NCPolynomial::zero(alg);
    for (ws, c) in t.terms() {
        let mut w = ws[0].clone();
        w.extend_from_slice(&ws[1]);
        out.add_term(w, c.clone());
    }
    uea.normalize(&out)
}

/// Applies an even map to component `k` of every tensor term.
fn on_component(t: &UeaTensor, k: usize, mut f: impl FnMut(&Word) -> Result<UeaTensor>) -> Result<UeaTensor> {
    let mut out: Option<UeaTensor> = None;
    for (ws, c) in t.terms() {
        let img = f(&ws[k])?;
        let mut part = UeaTensor::zero(t.arity() - 1 + img.arity());
        for (iw, d) in img.terms() {
            let mut nw: Vec<Word> = ws[..k].to_vec();
            nw.extend(iw.iter().cloned());
            nw.extend(ws[k + 1..].iter().cloned());
            part.add_term(nw, c * d);
        }
        out = Some(match out {
            None => part,
            Some(o) => o.add(&part),
        });
    }
    Ok(out.unwrap_or_else(|| UeaTensor::zero(t.arity())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfFailure {
    pub axiom: String,
    pub monomial: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub degree: u32,
    pub monomials_checked: usize,
    pub pairs_checked: usize,
    pub failure: Option<HopfFailure>,
    pub notes: Vec<String>,
    pub passed: bool,
}

/// Checks coassociativity, both counit laws, both antipode laws and
/// multiplicativity of `U(Delta)` on PBW monomials of total degree `<= d`.
/// Stops at the first failure.
pub fn check_hopf_axioms(h: &HopfData, d: u32) -> Result<HopfReport> {
    let uea = Uea::new(h.table());
    let alg = h.algebra();
    let basis = pbw_basis_total(alg, d);
    let mut report = HopfReport {
        degree: d,
        monomials_checked: 0,
        pairs_checked: 0,
        failure: None,
        notes: h.notes().to_vec(),
        passed: false,
    };
    let fail = |report: &mut HopfReport, axiom: &str, b: &PBWMonomial, detail: String| {
        report.failure = Some(HopfFailure { axiom: axiom.into(), monomial: b.to_poly(alg).to_string(), detail });
    };
    let delta_of = |w: &Word| word_coproduct(h, &uea, w);
    for b in &basis {
        let w = b.word();
        let p = b.to_poly(alg);
        let dw = delta_of(&w)?;

        let left = on_component(&dw, 0, delta_of)?;
        let right = on_component(&dw, 1, delta_of)?;
        if left != right {
            fail(&mut report, "coassociativity", b, format!("{} vs {}", left.render(alg), right.render(alg)));
            return Ok(report);
        }

        let eps = |w: &Word| -> Result<UeaTensor> {
            let c = uea_counit(h, &NCPolynomial::word(alg, w.clone(), Q::one()));
            Ok(UeaTensor::one(0).scale(&c))
        };
        for k in 0..2 {
            let r = on_component(&dw, k, eps)?;
            let got = multiply_single(alg, &r);
            if got != p {
                let side = if k == 0 { "left" } else { "right" };
                fail(&mut report, &format!("counit ({side})"), b, format!("got {got}"));
                return Ok(report);
            }
        }

        let expected = NCPolynomial::constant(alg, uea_counit(h, &p));
        let s_of = |w: &Word| -> Result<UeaTensor> {
            let s = uea_antipode(h, &NCPolynomial::word(alg, w.clone(), Q::one()))?;
            Ok(UeaTensor::pure(&[s]))
        };
        for k in 0..2 {
            let got = multiply(&uea, &on_component(&dw, k, s_of)?)?;
            if got != expected {
                let side = if k == 0 { "S (x) id" } else { "id (x) S" };
                fail(&mut report, &format!("antipode ({side})"), b, format!("got {got}, expected {expected}"));
                return Ok(report);
            }
        }
        report.monomials_checked += 1;
    }

    for a in &basis {
        for b in &basis {
            if a.degree() + b.degree() > d {
                continue;
            }
            let prod = uea.mul(&a.to_poly(alg), &b.to_poly(alg))?;
            let lhs = uea_coproduct(h, &prod)?;
            let rhs = delta_of(&a.word())?.mul(&delta_of(&b.word())?, &uea)?;
            if lhs != rhs {
                let pair = format!("{} * {}", a.to_poly(alg), b.to_poly(alg));
                report.failure = Some(HopfFailure {
                    axiom: "multiplicativity".into(),
                    monomial: pair,
                    detail: format!("{} vs {}", lhs.render(alg), rhs.render(alg)),
                });
                return Ok(report);
            }
            report.pairs_checked += 1;
        }
    }
    report.passed = true;
    Ok(report)
}

/// Reads an arity-1 tensor back as a polynomial.
fn multiply_single(alg: &crate::supercore::AlgebraRef, t: &UeaTensor) -> NCPolynomial {
    let mut out = NCPolynomial::zero(alg);
    for (ws, c) in t.terms() {
        out.add_term(ws[0].clone(), c.clone());
    }
    out
}
