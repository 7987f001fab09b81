use std::collections::BTreeMap;

use num_traits::Zero;

use super::BracketTable;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};
use crate::supercore::{Algebra, AlgebraRef, Generator, Monomial, Parity, SuperPolynomial};

/// The `n`-th symplectic Poisson superalgebra on odd `x1..xn, y1..yn` with
/// `{x_i, y_j} = delta_ij = {y_j, x_i}`.
pub fn symplectic_super(n: usize) -> Result<BracketTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("symplectic superalgebra needs n >= 1".into()));
    }
    let mut gens: Vec<_> = (1..=n).map(|i| Generator::odd(format!("x{i}"))).collect();
    gens.extend((1..=n).map(|i| Generator::odd(format!("y{i}"))));
    let alg = Algebra::new(gens)?;
    let mut b = BracketTable::builder(&alg);
    for i in 0..2 * n {
        b.set(i, i, SuperPolynomial::zero(&alg))?;
    }
    for i in 0..n {
        b.set(i, n + i, SuperPolynomial::one(&alg))?;
    }
    Ok(b.build())
}

/// Structure constants `C^{i,j}_{k,l}` of a quadratic Poisson bracket
/// `{x_i, x_j} = sum C^{i,j}_{k,l} x_k x_l`, with the symmetries
/// `C^{ij}_{kl} = C^{ij}_{lk} = -C^{ji}_{lk} = -C^{ji}_{kl}` enforced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    c: BTreeMap<(usize, usize, usize, usize), Q>,
}

impl StructureConstants {
    /// Entries are keyed `(i, j, k, l)` for `C^{i,j}_{k,l}`, zero-based.
    pub fn new(n: usize, entries: impl IntoIterator<Item = ((usize, usize, usize, usize), Q)>) -> Result<Self> {
        let mut c = BTreeMap::new();
        for (key, v) in entries {
            let (i, j, k, l) = key;
            if i >= n || j >= n || k >= n || l >= n {
                return Err(Error::InvalidConstants(format!("index out of range in C^{{{i},{j}}}_{{{k},{l}}}")));
            }
            if !v.is_zero() {
                c.insert(key, v);
            }
        }
        let sc = StructureConstants { n, c };
        sc.validate()?;
        Ok(sc)
    }

    pub fn zero(n: usize) -> Self {
        StructureConstants { n, c: BTreeMap::new() }
    }

    /// `{x_i, x_j} = lambda_ij x_i x_j` for a skew-symmetric `lambda`.
    pub fn from_skew(lambda: &[Vec<Q>]) -> Result<Self> {
        check_skew(lambda, "lambda")?;
        let n = lambda.len();
        let half = Q::new(1.into(), 2.into());
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let v = &lambda[i][j] * &half;
                    entries.push(((i, j, i, j), v.clone()));
                    entries.push(((i, j, j, i), v));
                }
            }
        }
        Self::new(n, entries)
    }

    /// Reads the constants back from a quadratic bracket on even generators.
    pub fn from_quadratic_table(t: &BracketTable) -> Result<Self> {
        let alg = t.algebra();
        let n = alg.len();
        if alg.generators().iter().any(|g| g.parity.is_odd()) {
            return Err(Error::InvalidConstants("quadratic brackets need even generators".into()));
        }
        let half = Q::new(1.into(), 2.into());
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (m, c) in t.entry(i, j).terms() {
                    if m.degree() != 2 {
                        return Err(Error::InvalidConstants(format!(
                            "{{{}, {}}} is not homogeneous quadratic",
                            alg.name(i),
                            alg.name(j)
                        )));
                    }
                    let w = m.word();
                    let (k, l) = (w[0], w[1]);
                    if k == l {
                        entries.push(((i, j, k, k), c.clone()));
                    } else {
                        entries.push(((i, j, k, l), c * &half));
                        entries.push(((i, j, l, k), c * &half));
                    }
                }
            }
        }
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Q {
        self.c.get(&(i, j, k, l)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize, usize), &Q)> {
        self.c.iter().map(|(k, v)| (*k, v))
    }

    fn validate(&self) -> Result<()> {
        for (&(i, j, k, l), v) in &self.c {
            let checks = [
                ((i, j, l, k), v.clone(), "C^{ij}_{kl} = C^{ij}_{lk}"),
                ((j, i, l, k), -v.clone(), "C^{ij}_{kl} = -C^{ji}_{lk}"),
                ((j, i, k, l), -v.clone(), "C^{ij}_{kl} = -C^{ji}_{kl}"),
            ];
            for (key, want, rule) in checks {
                let got = self.get(key.0, key.1, key.2, key.3);
                if got != want {
                    return Err(Error::InvalidConstants(format!(
                        "{rule} fails at (i,j,k,l) = ({},{},{},{}): {} vs {}",
                        i + 1,
                        j + 1,
                        k + 1,
                        l + 1,
                        fmt_q(v),
                        fmt_q(&got)
                    )));
                }
            }
        }
        Ok(())
    }

    fn default_algebra(&self, prefix: &str, parity: Parity) -> AlgebraRef {
        Algebra::new((1..=self.n).map(|i| Generator::new(format!("{prefix}{i}"), parity)).collect())
            .expect("distinct names")
    }

    /// `{x_i, x_j} = sum_{k,l} C^{i,j}_{k,l} x_k x_l` on `k[x1..xn]`.
    pub fn quadratic_bracket(&self) -> BracketTable {
        self.quadratic_bracket_on(&self.default_algebra("x", Parity::Even)).expect("default algebra fits")
    }

    pub fn quadratic_bracket_on(&self, alg: &AlgebraRef) -> Result<BracketTable> {
        self.check_algebra(alg, Parity::Even)?;
        let mut b = BracketTable::builder(alg);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let mut v = SuperPolynomial::zero(alg);
                for k in 0..self.n {
                    for l in 0..self.n {
                        let c = self.get(i, j, k, l);
                        if !c.is_zero() {
                            v = v + SuperPolynomial::monomial(alg, pair(alg, k, l), c);
                        }
                    }
                }
                b.set(i, j, v)?;
            }
        }
        Ok(b.build())
    }

    /// Dual bracket `{theta_k, theta_l} = sum_{i,j} C^{i,j}_{k,l} theta_j theta_i`
    /// on the exterior algebra on odd `theta1..thetan`.
    pub fn dual_bracket(&self) -> BracketTable {
        self.dual_bracket_on(&self.default_algebra("theta", Parity::Odd)).expect("default algebra fits")
    }

    pub fn dual_bracket_on(&self, alg: &AlgebraRef) -> Result<BracketTable> {
        self.check_algebra(alg, Parity::Odd)?;
        let mut b = BracketTable::builder(alg);
        for k in 0..self.n {
            for l in k..self.n {
                let mut v = SuperPolynomial::zero(alg);
                for i in 0..self.n {
                    for j in 0..self.n {
                        let c = self.get(i, j, k, l);
                        if !c.is_zero() {
                            let tj = SuperPolynomial::generator(alg, j);
                            let ti = SuperPolynomial::generator(alg, i);
                            v = v + (&tj * &ti).scale(&c);
                        }
                    }
                }
                b.set(k, l, v)?;
            }
        }
        Ok(b.build())
    }

    fn check_algebra(&self, alg: &AlgebraRef, parity: Parity) -> Result<()> {
        if alg.len() != self.n || alg.generators().iter().any(|g| g.parity != parity) {
            return Err(Error::InvalidArgument(format!("expected {} {parity} generators, got {alg}", self.n)));
        }
        Ok(())
    }
}

fn pair(alg: &Algebra, k: usize, l: usize) -> Monomial {
    let mut e = vec![0u32; alg.len()];
    e[k] += 1;
    e[l] += 1;
    Monomial::from_exponents(alg, e).expect("even generators")
}

fn check_skew(m: &[Vec<Q>], name: &str) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSkew(format!("{name} is not square")));
        }
        for j in 0..n {
            if row[j] != -m[j][i].clone() {
                return Err(Error::NotSkew(format!("{name}[{}][{}] != -{name}[{}][{}]", i + 1, j + 1, j + 1, i + 1)));
            }
        }
    }
    Ok(())
}

/// Mixed algebra `k[x1..xn | y1..ym]` with `{x_i, x_j} = lambda_ij x_i x_j`,
/// `{y_i, y_j} = mu_ij y_i y_j` and `{x_i, y_j} = xi_ij x_i y_j`.
pub fn skew_super_bracket(lambda: &[Vec<Q>], mu: &[Vec<Q>], xi: &[Vec<Q>]) -> Result<BracketTable> {
    check_skew(lambda, "lambda")?;
    check_skew(mu, "mu")?;
    let (n, m) = (lambda.len(), mu.len());
    if xi.len() != n || xi.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidArgument(format!("xi must be {n}x{m}")));
    }
    let mut gens: Vec<_> = (1..=n).map(|i| Generator::even(format!("x{i}"))).collect();
    gens.extend((1..=m).map(|i| Generator::odd(format!("y{i}"))));
    let alg = Algebra::new(gens)?;
    let g = |i: usize| SuperPolynomial::generator(&alg, i);
    let mut b = BracketTable::builder(&alg);
    for i in 0..n {
        for j in i + 1..n {
            b.set(i, j, (g(i) * g(j)).scale(&lambda[i][j]))?;
        }
        for j in 0..m {
            b.set(i, n + j, (g(i) * g(n + j)).scale(&xi[i][j]))?;
        }
    }
    for i in 0..m {
        for j in i..m {
            b.set(n + i, n + j, (g(n + i) * g(n + j)).scale(&mu[i][j]))?;
        }
    }
    Ok(b.build())
}

/// Standard quadratic bracket on the coordinate ring `k[a, b, c, d]` of 2x2 matrices.
pub fn matrix_quadratic_example() -> BracketTable {
    let alg = Algebra::new(["a", "b", "c", "d"].map(Generator::even).to_vec()).expect("distinct names");
    let v = |s: &str| SuperPolynomial::var(&alg, s);
    let mut b = BracketTable::builder(&alg);
    b.set_named("a", "b", v("a") * v("b")).expect("valid");
    b.set_named("a", "c", v("a") * v("c")).expect("valid");
    b.set_named("a", "d", (v("b") * v("c")).scale(&q(2))).expect("valid");
    b.set_named("b", "d", v("b") * v("d")).expect("valid");
    b.set_named("c", "d", v("c") * v("d")).expect("valid");
    b.build()
}

/// Dual bracket of [`matrix_quadratic_example`] on `Lambda(alpha, beta, gamma, delta)`.
pub fn matrix_dual_example() -> BracketTable {
    let c = StructureConstants::from_quadratic_table(&matrix_quadratic_example()).expect("valid constants");
    let alg = Algebra::new(["alpha", "beta", "gamma", "delta"].map(Generator::odd).to_vec()).expect("distinct names");
    c.dual_bracket_on(&alg).expect("four odd generators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::verify_poisson;
    use crate::rational::q;

    #[test]
    fn symplectic_entries() {
        let t = symplectic_super(2).unwrap();
        let a = t.algebra();
        assert_eq!(t.entry(0, 2), SuperPolynomial::one(a));
        assert_eq!(t.entry(2, 0), SuperPolynomial::one(a));
        assert!(t.entry(0, 3).is_zero());
        assert!(symplectic_super(0).is_err());
    }

    #[test]
    fn skew_dual_bracket_matches_closed_form() {
        let lambda = vec![vec![q(0), q(3)], vec![q(-3), q(0)]];
        let t = StructureConstants::from_skew(&lambda).unwrap().dual_bracket();
        let a = t.algebra();
        let t1 = SuperPolynomial::generator(a, 0);
        let t2 = SuperPolynomial::generator(a, 1);
        assert_eq!(t.entry(0, 1), (&t2 * &t1).scale(&q(3)));
    }

    #[test]
    fn matrix_dual_matches_hand_table() {
        let t = matrix_dual_example();
        let a = t.algebra();
        let v = |s: &str| SuperPolynomial::var(a, s);
        let expect = [
            ("alpha", "beta", v("beta") * v("alpha")),
            ("alpha", "gamma", v("gamma") * v("alpha")),
            ("alpha", "delta", SuperPolynomial::zero(a)),
            ("beta", "gamma", (v("delta") * v("alpha")).scale(&q(2))),
            ("beta", "delta", v("delta") * v("beta")),
            ("gamma", "delta", v("delta") * v("gamma")),
        ];
        for (x, y, want) in expect {
            let (i, j) = (a.index_of(x).unwrap(), a.index_of(y).unwrap());
            assert_eq!(t.entry(i, j), want, "{{{x}, {y}}}");
        }
        assert!(verify_poisson(&t).passed);
        assert!(verify_poisson(&matrix_quadratic_example()).passed);
    }

    #[test]
    fn broken_symmetry_is_named() {
        let err = StructureConstants::new(2, [((0, 1, 0, 1), q(1))]).unwrap_err();
        assert!(matches!(err, Error::InvalidConstants(s) if s.contains("C^{ij}_{lk}")));
    }

    #[test]
    fn skew_super_examples() {
        let t = skew_super_bracket(&[vec![q(0)]], &[vec![q(0)]], &[vec![q(1)]]).unwrap();
        let a = t.algebra();
        assert_eq!(t.entry(0, 1), SuperPolynomial::var(a, "x1") * SuperPolynomial::var(a, "y1"));
        assert!(verify_poisson(&t).passed);
        assert!(skew_super_bracket(&[vec![q(1)]], &[], &[vec![]]).is_err());
    }
}
