//! Even Kähler superdifferentials over a polynomial superalgebra, stored in
//! the free basis `{d g}` of generator differentials, with the Lie-Rinehart
//! bracket and anchor of a Poisson bracket.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::poisson::BracketTable;
use crate::rational::{fmt_q, is_one, sign, Q};
use crate::supercore::{ensure_same, same_algebra, AlgebraRef, Monomial, Parity, SuperPolynomial, Superderivation};

/// `sum c * m * d(g)` over coefficient monomials `m` and generators `g`.
#[derive(Clone, Debug)]
pub struct KahlerElement {
    alg: AlgebraRef,
    terms: BTreeMap<(Monomial, usize), Q>,
}

impl PartialEq for KahlerElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for KahlerElement {}

impl KahlerElement {
    pub fn zero(alg: &AlgebraRef) -> Self {
        KahlerElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    /// `d(g_i)`.
    pub fn basis(alg: &AlgebraRef, i: usize) -> Self {
        Self::term(&SuperPolynomial::one(alg), i)
    }

    /// `f * d(g_i)`.
    pub fn term(f: &SuperPolynomial, i: usize) -> Self {
        let mut out = Self::zero(f.algebra());
        for (m, c) in f.terms() {
            out.add_term(m.clone(), i, c.clone());
        }
        out
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, usize), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, g: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((m, g)) {
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

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.alg, &other.alg)?;
        let mut out = self.clone();
        for ((m, g), c) in &other.terms {
            out.add_term(m.clone(), *g, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(&self.alg);
        for ((m, g), v) in &self.terms {
            out.add_term(m.clone(), *g, v * c);
        }
        out
    }

    /// Module action `f * u`.
    pub fn left_mul(&self, f: &SuperPolynomial) -> Result<Self> {
        ensure_same(&self.alg, f.algebra())?;
        let mut out = Self::zero(&self.alg);
        for ((m, g), c) in &self.terms {
            let coeff = f.checked_mul(&SuperPolynomial::monomial(&self.alg, m.clone(), c.clone()))?;
            out = out.checked_add(&Self::term(&coeff, *g))?;
        }
        Ok(out)
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|(m, g)| m.parity(&self.alg) + self.alg.parity(*g));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    fn homogeneous_parity(&self) -> Result<Parity> {
        if self.is_zero() {
            return Ok(Parity::Even);
        }
        self.parity().ok_or(crate::error::Error::MixedParity)
    }

    /// Homogeneous pieces `(x, g)` with `x` a scaled monomial: `u = sum x d(g)`.
    fn pieces(&self) -> Vec<(SuperPolynomial, usize)> {
        self.terms.iter().map(|((m, g), c)| (SuperPolynomial::monomial(&self.alg, m.clone(), c.clone()), *g)).collect()
    }
}

/// `d_ev(p)`: on a monomial `g_1 ... g_k`,
/// `sum_i (-1)^{|g_i|(|g_{i+1}| + ... + |g_k|)} (g_1 ..^g_i.. g_k) d(g_i)`.
pub fn d_ev(p: &SuperPolynomial) -> KahlerElement {
    let alg = p.algebra();
    let mut out = KahlerElement::zero(alg);
    for (m, c) in p.terms() {
        let word = m.word();
        for i in 0..word.len() {
            let after = word[i + 1..].iter().fold(Parity::Even, |acc, &g| acc + alg.parity(g));
            let s = sign(alg.parity(word[i]).swap_negates(after));
            let mut e = m.exponents().to_vec();
            e[word[i]] -= 1;
            let rest = Monomial::from_exponents(alg, e).expect("dividing a monomial keeps odd caps");
            out.add_term(rest, word[i], c * s);
        }
    }
    out
}

/// Anchor `rho(x d f)(p) = x {f, p}`.
pub fn anchor_apply(t: &BracketTable, u: &KahlerElement, p: &SuperPolynomial) -> Result<SuperPolynomial> {
    ensure_same(t.algebra(), u.algebra())?;
    let alg = t.algebra();
    let mut out = SuperPolynomial::zero(alg);
    for (x, g) in u.pieces() {
        let fp = t.bracket(&SuperPolynomial::generator(alg, g), p)?;
        out = out.checked_add(&x.checked_mul(&fp)?)?;
    }
    Ok(out)
}

/// `rho(u)` as a superderivation of parity `|u|`.
pub fn anchor(t: &BracketTable, u: &KahlerElement) -> Result<Superderivation> {
    let alg = t.algebra();
    let pu = u.homogeneous_parity()?;
    let images = (0..alg.len())
        .map(|j| anchor_apply(t, u, &SuperPolynomial::generator(alg, j)).map(Some))
        .collect::<Result<Vec<_>>>()?;
    Superderivation::new(alg, pu, images)
}

/// Lie-Rinehart bracket
/// `[x df, y dg] = (-1)^{|y||f|} xy d{f,g} + x{f,y} dg - (-1)^{(|x|+|f|)(|y|+|g|)} y{g,x} df`,
/// extended bilinearly.
pub fn lr_bracket(t: &BracketTable, u: &KahlerElement, v: &KahlerElement) -> Result<KahlerElement> {
    ensure_same(t.algebra(), u.algebra())?;
    ensure_same(t.algebra(), v.algebra())?;
    let alg = t.algebra();
    let mut out = KahlerElement::zero(alg);
    for (x, f) in u.pieces() {
        let px = x.homogeneous_parity()?;
        let pf = alg.parity(f);
        let fpoly = SuperPolynomial::generator(alg, f);
        for (y, g) in v.pieces() {
            let py = y.homogeneous_parity()?;
            let pg = alg.parity(g);
            let gpoly = SuperPolynomial::generator(alg, g);
            let xy = x.checked_mul(&y)?;
            let first = d_ev(&t.bracket(&fpoly, &gpoly)?).left_mul(&xy)?.scale(&sign(py.swap_negates(pf)));
            let second = KahlerElement::term(&x.checked_mul(&t.bracket(&fpoly, &y)?)?, g);
            let third = KahlerElement::term(&y.checked_mul(&t.bracket(&gpoly, &x)?)?, f)
                .scale(&sign((px + pf).swap_negates(py + pg)));
            out = out.checked_add(&first)?.checked_add(&second)?.checked_sub(&third)?;
        }
    }
    Ok(out)
}

/// Element `a + x` of the semidirect product `A ⋊ Omega` (with `A` abelian).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectElement {
    pub a: SuperPolynomial,
    pub x: KahlerElement,
}

/// `[a + x, b + y] = (rho(x)(b) - (-1)^{|a||y|} rho(y)(a)) + [x, y]`.
pub fn semidirect_bracket(t: &BracketTable, u: &SemidirectElement, v: &SemidirectElement) -> Result<SemidirectElement> {
    let pa = u.a.homogeneous_parity()?;
    let py = v.x.homogeneous_parity()?;
    let a =
        anchor_apply(t, &u.x, &v.a)?.checked_sub(&anchor_apply(t, &v.x, &u.a)?.scale(&sign(pa.swap_negates(py))))?;
    Ok(SemidirectElement { a, x: lr_bracket(t, &u.x, &v.x)? })
}

/// The free basis `{d g}` of `Omega^ev` over a polynomial superalgebra.
pub fn kahler_basis(alg: &AlgebraRef) -> Vec<KahlerElement> {
    (0..alg.len()).map(|i| KahlerElement::basis(alg, i)).collect()
}

/// Derivations `D_i(g_j) = delta_ij g_i` witnessing linear independence of the basis.
pub fn independence_witnesses(alg: &AlgebraRef) -> Vec<Superderivation> {
    (0..alg.len()).map(|i| Superderivation::euler(alg, i)).collect()
}

/// The module map `Omega^ev -> A` induced by an even derivation: `x d g -> x D(g)`.
pub fn induced_functional(d: &Superderivation, u: &KahlerElement) -> Result<SuperPolynomial> {
    ensure_same(d.algebra(), u.algebra())?;
    let mut out = SuperPolynomial::zero(u.algebra());
    for (x, g) in u.pieces() {
        out = out.checked_add(&x.checked_mul(d.image(g)?)?)?;
    }
    Ok(out)
}

/// Monomial count of `S_A(Omega^ev)` truncated to coefficient exponents
/// at most `dm` and differential exponents at most `dh` (odd caps 1).
pub fn supersymmetric_count(alg: &AlgebraRef, dm: u32, dh: u32) -> u64 {
    let cap = |p: Parity, d: u32| if p.is_odd() { d.min(1) as u64 + 1 } else { d as u64 + 1 };
    let coeffs: u64 = alg.generators().iter().map(|g| cap(g.parity, dm)).product();
    let diffs: u64 =
        kahler_basis(alg).iter().map(|b| cap(b.parity().expect("basis differential is homogeneous"), dh)).product();
    coeffs * diffs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KahlerReport {
    pub basis: Vec<String>,
    pub witnesses_ok: bool,
    pub antisymmetry_ok: bool,
    pub jacobi_ok: bool,
    pub anchor_ok: bool,
    pub elements_checked: usize,
    pub failure: Option<String>,
    pub passed: bool,
}

/// Sample elements `m d(g)` with `m` of degree at most `coeff_degree`.
pub fn sample_elements(alg: &AlgebraRef, coeff_degree: u32) -> Vec<KahlerElement> {
    let mut out = Vec::new();
    for m in crate::supercore::monomials_up_to(alg, coeff_degree) {
        for g in 0..alg.len() {
            out.push(KahlerElement::term(&SuperPolynomial::monomial(alg, m.clone(), Q::one()), g));
        }
    }
    out
}

/// Checks the basis witnesses and the Lie-Rinehart axioms (antisymmetry,
/// Jacobi, anchor compatibility) on sampled elements.
pub fn kahler_check(t: &BracketTable, coeff_degree: u32) -> Result<KahlerReport> {
    let alg = t.algebra();
    let basis = kahler_basis(alg);
    let mut failure = None;
    let witnesses_ok = independence_witnesses(alg).iter().enumerate().all(|(i, d)| {
        basis.iter().enumerate().all(|(j, b)| {
            let want = if i == j { SuperPolynomial::generator(alg, i) } else { SuperPolynomial::zero(alg) };
            induced_functional(d, b).map(|v| v == want).unwrap_or(false)
        })
    });
    if !witnesses_ok {
        failure = Some("basis witness D_i(g_j) != delta_ij g_i".to_string());
    }
    let samples = sample_elements(alg, coeff_degree);
    let probes: Vec<SuperPolynomial> = crate::supercore::monomials_up_to(alg, 2)
        .into_iter()
        .map(|m| SuperPolynomial::monomial(alg, m, Q::one()))
        .collect();
    let parity = |u: &KahlerElement| u.parity().unwrap_or(Parity::Even);
    let mut antisymmetry_ok = true;
    let mut anchor_ok = true;
    for u in &samples {
        for v in &samples {
            let uv = lr_bracket(t, u, v)?;
            let vu = lr_bracket(t, v, u)?;
            let s = -sign(parity(u).swap_negates(parity(v)));
            if antisymmetry_ok && uv != vu.scale(&s) {
                antisymmetry_ok = false;
                failure.get_or_insert(format!("antisymmetry fails for [{u}, {v}]"));
            }
            if anchor_ok {
                for p in &probes {
                    let lhs = anchor_apply(t, &uv, p)?;
                    let a = anchor_apply(t, u, &anchor_apply(t, v, p)?)?;
                    let b = anchor_apply(t, v, &anchor_apply(t, u, p)?)?;
                    let rhs = a.checked_sub(&b.scale(&sign(parity(u).swap_negates(parity(v)))))?;
                    if lhs != rhs {
                        anchor_ok = false;
                        failure.get_or_insert(format!("anchor is not a bracket map on [{u}, {v}] at {p}"));
                        break;
                    }
                }
            }
        }
    }
    let mut jacobi_ok = true;
    'outer: for u in &samples {
        for v in &samples {
            let uv = lr_bracket(t, u, v)?;
            for w in &samples {
                let (pu, pv, pw) = (parity(u), parity(v), parity(w));
                let a = lr_bracket(t, u, &lr_bracket(t, v, w)?)?.scale(&sign(pu.swap_negates(pw)));
                let b = lr_bracket(t, v, &lr_bracket(t, w, u)?)?.scale(&sign(pu.swap_negates(pv)));
                let c = lr_bracket(t, w, &uv)?.scale(&sign(pv.swap_negates(pw)));
                if !a.checked_add(&b)?.checked_add(&c)?.is_zero() {
                    jacobi_ok = false;
                    failure.get_or_insert(format!("Jacobi fails on ({u}, {v}, {w})"));
                    break 'outer;
                }
            }
        }
    }
    let passed = witnesses_ok && antisymmetry_ok && jacobi_ok && anchor_ok;
    Ok(KahlerReport {
        basis: basis.iter().map(|b| b.to_string()).collect(),
        witnesses_ok,
        antisymmetry_ok,
        jacobi_ok,
        anchor_ok,
        elements_checked: samples.len(),
        failure,
        passed,
    })
}

impl fmt::Display for KahlerElement {
    /// `2*x*d(x) - y*d(x)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((m, g), c)) in self.terms.iter().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            let mut parts = Vec::new();
            if !is_one(&abs) {
                parts.push(fmt_q(&abs));
            }
            if !m.is_one() {
                parts.push(m.render(&self.alg));
            }
            parts.push(format!("d({})", self.alg.name(*g)));
            let sep = match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for KahlerElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::symplectic_super;
    use crate::rational::q;
    use crate::supercore::{Algebra, Generator};

    fn kxy() -> AlgebraRef {
        Algebra::new(vec![Generator::even("x"), Generator::odd("y")]).unwrap()
    }

    #[test]
    fn d_ev_examples() {
        let a = kxy();
        let x = SuperPolynomial::var(&a, "x");
        let y = SuperPolynomial::var(&a, "y");
        assert_eq!(d_ev(&(&x * &x)), KahlerElement::term(&x.scale(&q(2)), 0));
        assert!(d_ev(&SuperPolynomial::one(&a)).is_zero());
        assert_eq!(d_ev(&(&x * &y)).to_string(), "x*d(y) + y*d(x)");
    }

    #[test]
    fn basis_and_witnesses() {
        let a = kxy();
        assert_eq!(kahler_basis(&a).iter().map(|b| b.to_string()).collect::<Vec<_>>(), ["d(x)", "d(y)"]);
        assert!(kahler_basis(&Algebra::trivial()).is_empty());
        let w = independence_witnesses(&a);
        assert!(induced_functional(&w[0], &KahlerElement::basis(&a, 1)).unwrap().is_zero());
        assert_eq!(supersymmetric_count(&a, 2, 2), 36);
    }

    #[test]
    fn bracket_of_exact_forms() {
        let t = symplectic_super(1).unwrap();
        let a = t.algebra().clone();
        let dx = KahlerElement::basis(&a, 0);
        let dy = KahlerElement::basis(&a, 1);
        assert!(lr_bracket(&t, &dx, &dy).unwrap().is_zero());
        let trivial = BracketTable::trivial(&a);
        assert!(lr_bracket(&trivial, &dx, &dy).unwrap().is_zero());
    }

    #[test]
    fn rinehart_identity_p1() {
        let t = symplectic_super(1).unwrap();
        let a = t.algebra().clone();
        let x1 = SuperPolynomial::var(&a, "x1");
        let dx = KahlerElement::basis(&a, 0);
        let dy = KahlerElement::basis(&a, 1);
        let lhs = lr_bracket(&t, &dx, &dy.left_mul(&x1).unwrap()).unwrap();
        // [x, a y] = (-1)^{|a||x|} a [x, y] + rho(x)(a) y with |a| = |x| = 1.
        let rhs = lr_bracket(&t, &dx, &dy)
            .unwrap()
            .left_mul(&x1)
            .unwrap()
            .scale(&-Q::one())
            .checked_add(&dy.left_mul(&anchor_apply(&t, &dx, &x1).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn semidirect_collapses() {
        let t = symplectic_super(1).unwrap();
        let a = t.algebra().clone();
        let zero_form = KahlerElement::zero(&a);
        let x1 = SuperPolynomial::var(&a, "x1");
        let y1 = SuperPolynomial::var(&a, "y1");
        let u = SemidirectElement { a: x1.clone(), x: zero_form.clone() };
        let v = SemidirectElement { a: y1, x: zero_form.clone() };
        let r = semidirect_bracket(&t, &u, &v).unwrap();
        assert!(r.a.is_zero() && r.x.is_zero());
        let dx = KahlerElement::basis(&a, 0);
        let dy = KahlerElement::basis(&a, 1).left_mul(&x1).unwrap();
        let u = SemidirectElement { a: SuperPolynomial::zero(&a), x: dx.clone() };
        let v = SemidirectElement { a: SuperPolynomial::zero(&a), x: dy.clone() };
        assert_eq!(semidirect_bracket(&t, &u, &v).unwrap().x, lr_bracket(&t, &dx, &dy).unwrap());
    }

    #[test]
    fn p1_axioms() {
        let r = kahler_check(&symplectic_super(1).unwrap(), 1).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
