use serde::Serialize;

use crate::error::{Error, Result};
use crate::poisson::BracketTable;
use crate::rational::Q;
use crate::supercore::{ensure_same, AlgebraRef, Generator, Monomial, Parity, SuperPolynomial, Superderivation};

/// Data of a Poisson-Ore extension `R[x; alpha, delta]_p` with `x` even and
/// `{x, r} = alpha(r) x + delta(r)`.
#[derive(Clone, Debug)]
pub struct OreData {
    base: BracketTable,
    var: String,
    alpha: Superderivation,
    delta: Superderivation,
    validated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OreFailure {
    /// `alpha` (Poisson superderivation law) or `delta` (the compatibility law).
    pub law: String,
    pub pair: (String, String),
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OreReport {
    pub pairs_checked: usize,
    pub failure: Option<OreFailure>,
    pub passed: bool,
}

impl OreData {
    pub fn new(
        base: &BracketTable,
        var: impl Into<String>,
        alpha: Superderivation,
        delta: Superderivation,
    ) -> Result<Self> {
        let var = var.into();
        ensure_same(base.algebra(), alpha.algebra())?;
        ensure_same(base.algebra(), delta.algebra())?;
        for (name, d) in [("alpha", &alpha), ("delta", &delta)] {
            if d.parity() != Parity::Even {
                return Err(Error::Parity(format!("{name} must be an even derivation")));
            }
        }
        if base.algebra().index_of(&var).is_some() {
            return Err(Error::DuplicateGenerator(var));
        }
        Ok(OreData { base: base.clone(), var, alpha, delta, validated: false })
    }

    pub fn base(&self) -> &BracketTable {
        &self.base
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.base.algebra()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn alpha(&self) -> &Superderivation {
        &self.alpha
    }

    pub fn delta(&self) -> &Superderivation {
        &self.delta
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub(crate) fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::Unvalidated)
        }
    }

    /// Checks, on generator pairs,
    /// `alpha({r,s}) = {alpha(r),s} + {r,alpha(s)}` and
    /// `delta({r,s}) = alpha(r)delta(s) - delta(r)alpha(s) + {r,delta(s)} + {delta(r),s}`.
    /// Marks the data validated on success.
    pub fn validate(&mut self) -> Result<OreReport> {
        let t = &self.base;
        let alg = t.algebra().clone();
        let n = alg.len();
        let mut report = OreReport { pairs_checked: 0, failure: None, passed: false };
        for i in 0..n {
            for j in 0..n {
                let (r, s) = (SuperPolynomial::generator(&alg, i), SuperPolynomial::generator(&alg, j));
                let rs = t.entry(i, j);
                let (ar, as_) = (self.alpha.apply(&r)?, self.alpha.apply(&s)?);
                let (dr, ds) = (self.delta.apply(&r)?, self.delta.apply(&s)?);
                let pair = (alg.name(i).to_string(), alg.name(j).to_string());

                let lhs = self.alpha.apply(&rs)?;
                let rhs = t.bracket(&ar, &s)? + t.bracket(&r, &as_)?;
                if lhs != rhs {
                    report.failure = Some(OreFailure { law: "alpha".into(), pair, residual: (lhs - rhs).to_string() });
                    return Ok(report);
                }

                let lhs = self.delta.apply(&rs)?;
                let rhs = &ar * &ds - &dr * &as_ + t.bracket(&r, &ds)? + t.bracket(&dr, &s)?;
                if lhs != rhs {
                    report.failure = Some(OreFailure { law: "delta".into(), pair, residual: (lhs - rhs).to_string() });
                    return Ok(report);
                }
                report.pairs_checked += 1;
            }
        }
        report.passed = true;
        self.validated = true;
        Ok(report)
    }

    /// The bracket table on `R[x]`, without checking validation.
    pub(crate) fn extension_table(&self) -> Result<BracketTable> {
        let alg = self.algebra();
        let n = alg.len();
        let ext = alg.extended(Generator::even(self.var.clone()))?;
        let x = SuperPolynomial::generator(&ext, n);
        let mut b = self.base.reindex(&ext)?.to_builder();
        for g in 0..n {
            let a = self.alpha.image(g)?.reindex(&ext)?;
            let d = self.delta.image(g)?.reindex(&ext)?;
            // {g, x} = -{x, g} since x is even.
            b.set(g, n, -(&a * &x + d))?;
        }
        Ok(b.build())
    }

    /// `{r x^i, s x^j}` by the closed formula
    /// `({r,s} - j alpha(r) s + i r alpha(s)) x^{i+j} + (i r delta(s) - j delta(r) s) x^{i+j-1}`,
    /// for `r, s` in `R`, as a polynomial on `R[x]`.
    pub fn closed_bracket(
        &self,
        ext: &AlgebraRef,
        r: &SuperPolynomial,
        i: u32,
        s: &SuperPolynomial,
        j: u32,
    ) -> Result<SuperPolynomial> {
        let t = &self.base;
        let x = SuperPolynomial::generator(ext, self.algebra().len());
        let (iq, jq) = (Q::from_integer(i.into()), Q::from_integer(j.into()));
        let top = t.bracket(r, s)? - (&self.alpha.apply(r)? * s).scale(&jq) + (r * &self.alpha.apply(s)?).scale(&iq);
        let low = (r * &self.delta.apply(s)?).scale(&iq) - (&self.delta.apply(r)? * s).scale(&jq);
        let mut out = top.reindex(ext)? * x.pow(i + j);
        if i + j > 0 {
            out = out + low.reindex(ext)? * x.pow(i + j - 1);
        }
        Ok(out)
    }
}

/// `extend_ore`: the bracket on `R[x]` with `{x, g} = alpha(g) x + delta(g)`.
pub fn extend_ore(o: &OreData) -> Result<BracketTable> {
    o.require_validated()?;
    o.extension_table()
}

/// Splits `p in R[x]` (over the extended algebra, `x` last) into `sum c_i x^i`
/// with `c_i` over `R`.
pub fn x_coefficients(p: &SuperPolynomial, base: &AlgebraRef) -> Result<Vec<SuperPolynomial>> {
    let n = base.len();
    let mut out: Vec<SuperPolynomial> = Vec::new();
    for (m, c) in p.terms() {
        let k = m.exponent(n) as usize;
        while out.len() <= k {
            out.push(SuperPolynomial::zero(base));
        }
        let mono = Monomial::from_exponents(base, m.exponents()[..n].to_vec())
            .ok_or_else(|| Error::InvalidArgument("odd exponent above 1".into()))?;
        out[k].add_term(mono, c.clone());
    }
    Ok(out)
}

/// Builds `k[x1..xn | y1..ym]` with `{x_i,x_j} = lambda_ij x_i x_j`,
/// `{y_i,y_j} = mu_ij y_i y_j`, `{x_i,y_j} = xi_ij x_i y_j` one even variable
/// at a time, starting from the odd part and validating each step with
/// `alpha_{r+1} = sum_k lambda_{r+1,k} x_k d/dx_k + sum_l xi_{r+1,l} y_l iota_l`.
pub fn iterated_skew_extension(lambda: &[Vec<Q>], mu: &[Vec<Q>], xi: &[Vec<Q>]) -> Result<BracketTable> {
    let (n, m) = (lambda.len(), mu.len());
    let odd = crate::supercore::Algebra::new((1..=m).map(|i| Generator::odd(format!("y{i}"))).collect())?;
    let mut b = BracketTable::builder(&odd);
    for i in 0..m {
        for j in i..m {
            let g = |k| SuperPolynomial::generator(&odd, k);
            b.set(i, j, (g(i) * g(j)).scale(&mu[i][j]))?;
        }
    }
    let mut table = b.build();
    for r in 0..n {
        let alg = table.algebra().clone();
        let mut alpha = Superderivation::zero(&alg, Parity::Even);
        for k in 0..r {
            let xk = alg.index_of(&format!("x{}", k + 1)).expect("appended earlier");
            alpha = alpha.checked_add(&Superderivation::euler(&alg, xk).scale(&lambda[r][k]))?;
        }
        for l in 0..m {
            let yl = alg.index_of(&format!("y{}", l + 1)).expect("odd part");
            let y_iota =
                Superderivation::contraction(&alg, yl)?.left_multiply(&SuperPolynomial::generator(&alg, yl))?;
            alpha = alpha.checked_add(&y_iota.scale(&xi[r][l]))?;
        }
        let mut o = OreData::new(&table, format!("x{}", r + 1), alpha, Superderivation::zero(&alg, Parity::Even))?;
        let report = o.validate()?;
        if !report.passed {
            return Err(Error::NotPoisson(format!("step {} failed: {:?}", r + 1, report.failure)));
        }
        table = extend_ore(&o)?;
    }
    Ok(table)
}
