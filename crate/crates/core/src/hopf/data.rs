use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poisson::BracketTable;
use crate::rational::Q;
use crate::supercore::{doubled_algebra, ensure_same, AlgebraRef, SuperPolynomial, TensorElement};

/// Bracket on `A (x) A`, realized on the doubled generators `g.1, g.2`:
/// each copy carries the bracket of `A` and the copies Poisson-commute, which
/// reproduces `{a (x) a', b (x) b'} = (-1)^{|a'||b|}({a,b} (x) a'b' + ab (x) {a',b'})`.
pub fn bracket_tensor_square(t: &BracketTable) -> Result<BracketTable> {
    let alg = t.algebra();
    let n = alg.len();
    let doubled = doubled_algebra(alg, alg)?;
    let left: Vec<_> = (0..n).map(|i| SuperPolynomial::generator(&doubled, i)).collect();
    let right: Vec<_> = (0..n).map(|i| SuperPolynomial::generator(&doubled, n + i)).collect();
    let mut b = BracketTable::builder(&doubled);
    for i in 0..n {
        for j in i..n {
            let v = t.entry(i, j);
            if v.is_zero() && !(i == j && alg.parity(i).is_odd()) {
                continue;
            }
            b.set(i, j, v.substitute(&doubled, &left)?)?;
            b.set(n + i, n + j, v.substitute(&doubled, &right)?)?;
        }
    }
    Ok(b.build())
}

/// `{u, v}` in `A (x) A`.
pub fn tensor_bracket(t: &BracketTable, u: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
    let alg = t.algebra();
    let sq = bracket_tensor_square(t)?;
    let d = sq.algebra();
    let r = sq.bracket(&u.to_doubled(d)?, &v.to_doubled(d)?)?;
    TensorElement::from_doubled(&r, alg, alg)
}

/// Coproduct, counit and antipode of a Poisson Hopf superalgebra, given on
/// generators and extended multiplicatively (`Delta`, `epsilon`) or
/// anti-multiplicatively (`S`, which coincides with multiplicative extension
/// on a supercommutative algebra).
#[derive(Clone, Debug)]
pub struct HopfData {
    table: BracketTable,
    delta: Vec<TensorElement>,
    epsilon: Vec<Q>,
    antipode: Vec<SuperPolynomial>,
    notes: Vec<String>,
}

impl HopfData {
    /// Checks parities and the Poisson compatibility of `Delta`, `epsilon` and `S`
    /// on generator pairs.
    pub fn new(
        table: &BracketTable,
        delta: Vec<TensorElement>,
        epsilon: Vec<Q>,
        antipode: Vec<SuperPolynomial>,
    ) -> Result<Self> {
        let alg = table.algebra();
        let n = alg.len();
        if delta.len() != n || epsilon.len() != n || antipode.len() != n {
            return Err(Error::InvalidArgument(format!("Hopf data needs {n} images for each map")));
        }
        for i in 0..n {
            let name = alg.name(i);
            let p = alg.parity(i);
            ensure_same(alg, delta[i].left_algebra())?;
            ensure_same(alg, delta[i].right_algebra())?;
            ensure_same(alg, antipode[i].algebra())?;
            if !delta[i].is_zero() && delta[i].parity() != Some(p) {
                return Err(Error::Parity(format!("delta {name} must be {p}")));
            }
            if p.is_odd() && !epsilon[i].is_zero() {
                return Err(Error::Parity(format!("epsilon vanishes on odd elements, but epsilon {name} != 0")));
            }
            if !antipode[i].is_zero() && antipode[i].parity() != Some(p) {
                return Err(Error::Parity(format!("antipode {name} must be {p}")));
            }
        }
        let h = HopfData { table: table.clone(), delta, epsilon, antipode, notes: Vec::new() };
        h.check_poisson()?;
        Ok(h)
    }

    /// `Delta(a) = a (x) 1 + 1 (x) a`, `epsilon(a) = 0`, `S(a) = -a` on every generator.
    pub fn primitive(table: &BracketTable) -> Result<Self> {
        let alg = table.algebra();
        let one = SuperPolynomial::one(alg);
        let n = alg.len();
        let delta = (0..n)
            .map(|i| {
                let g = SuperPolynomial::generator(alg, i);
                TensorElement::pure(&g, &one).checked_add(&TensorElement::pure(&one, &g))
            })
            .collect::<Result<_>>()?;
        let antipode = (0..n).map(|i| -SuperPolynomial::generator(alg, i)).collect();
        Self::new(table, delta, vec![Q::zero(); n], antipode)
    }

    /// Attaches a note that reports carry along (e.g. a documented deviation).
    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.table.algebra()
    }

    pub fn delta_gen(&self, i: usize) -> &TensorElement {
        &self.delta[i]
    }

    pub fn epsilon_gen(&self, i: usize) -> &Q {
        &self.epsilon[i]
    }

    pub fn antipode_gen(&self, i: usize) -> &SuperPolynomial {
        &self.antipode[i]
    }

    /// Returns a copy with `epsilon(g_i)` replaced, skipping validation, so
    /// that axiom checks can be exercised on broken data.
    pub fn with_epsilon_unchecked(&self, i: usize, value: Q) -> Self {
        let mut h = self.clone();
        h.epsilon[i] = value;
        h
    }

    pub fn delta(&self, p: &SuperPolynomial) -> Result<TensorElement> {
        let alg = self.algebra();
        let mut out = TensorElement::zero(alg, alg);
        for (m, c) in p.terms() {
            let mut acc = TensorElement::one(alg, alg).scale(c);
            for g in m.word() {
                acc = acc.checked_mul(&self.delta[g])?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    pub fn epsilon(&self, p: &SuperPolynomial) -> Q {
        p.terms().map(|(m, c)| m.word().into_iter().fold(c.clone(), |acc, g| acc * &self.epsilon[g])).sum()
    }

    pub fn antipode(&self, p: &SuperPolynomial) -> Result<SuperPolynomial> {
        p.substitute(self.algebra(), &self.antipode)
    }

    fn check_poisson(&self) -> Result<()> {
        let alg = self.algebra().clone();
        let n = alg.len();
        for i in 0..n {
            for j in i..n {
                let (a, b) = (alg.name(i), alg.name(j));
                let br = self.table.entry(i, j);
                let lhs = self.delta(&br)?;
                let rhs = tensor_bracket(&self.table, &self.delta[i], &self.delta[j])?;
                if lhs != rhs {
                    return Err(Error::NotPoissonHopf(format!(
                        "delta({{{a}, {b}}}) = {lhs} but {{delta {a}, delta {b}}} = {rhs}"
                    )));
                }
                if !self.epsilon(&br).is_zero() {
                    return Err(Error::NotPoissonHopf(format!("epsilon({{{a}, {b}}}) != 0")));
                }
                let s_lhs = self.antipode(&br)?;
                let s_rhs = -self.table.bracket(&self.antipode[i], &self.antipode[j])?;
                if s_lhs != s_rhs {
                    return Err(Error::NotPoissonHopf(format!(
                        "S({{{a}, {b}}}) = {s_lhs} but -{{S {a}, S {b}}} = {s_rhs}"
                    )));
                }
            }
        }
        Ok(())
    }
}
