use serde::Serialize;

use super::BracketTable;
use crate::error::Result;
use crate::rational::sign;
use crate::supercore::SuperPolynomial;

/// Why a bracket table is not Poisson.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PoissonFailure {
    /// An explicit entry `{a, b}` disagrees with `-(-1)^{|a||b|} {b, a}`.
    Antisymmetry { pair: (String, String), residual: SuperPolynomial },
    /// The super Jacobi sum on a generator triple is nonzero.
    Jacobi { triple: (String, String, String), residual: SuperPolynomial },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonReport {
    pub passed: bool,
    pub triples_checked: usize,
    pub warnings: Vec<String>,
    pub failure: Option<PoissonFailure>,
}

/// Super Jacobi sum
/// `(-1)^{|x||z|}{x,{y,z}} + (-1)^{|x||y|}{y,{z,x}} + (-1)^{|y||z|}{z,{x,y}}`
/// for homogeneous `x, y, z`.
pub fn jacobi_residual(
    t: &BracketTable,
    x: &SuperPolynomial,
    y: &SuperPolynomial,
    z: &SuperPolynomial,
) -> Result<SuperPolynomial> {
    let (px, py, pz) = (x.homogeneous_parity()?, y.homogeneous_parity()?, z.homogeneous_parity()?);
    let a = t.bracket(x, &t.bracket(y, z)?)?.scale(&sign(px.swap_negates(pz)));
    let b = t.bracket(y, &t.bracket(z, x)?)?.scale(&sign(px.swap_negates(py)));
    let c = t.bracket(z, &t.bracket(x, y)?)?.scale(&sign(py.swap_negates(pz)));
    a.checked_add(&b)?.checked_add(&c)
}

/// Checks antisymmetry of explicit entries, then the super Jacobi identity
/// on every ordered generator triple in lexicographic order, stopping at the
/// first failure.
pub fn verify_poisson(t: &BracketTable) -> PoissonReport {
    let alg = t.algebra();
    let warnings = t.warnings();
    for (i, j, v) in t.overrides() {
        let residual = v.checked_sub(&t.derived_lower(i, j)).expect("same algebra");
        if !residual.is_zero() {
            return PoissonReport {
                passed: false,
                triples_checked: 0,
                warnings,
                failure: Some(PoissonFailure::Antisymmetry {
                    pair: (alg.name(i).into(), alg.name(j).into()),
                    residual,
                }),
            };
        }
    }
    let n = alg.len();
    let gens: Vec<_> = (0..n).map(|i| SuperPolynomial::generator(alg, i)).collect();
    let mut checked = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                checked += 1;
                let residual = jacobi_residual(t, &gens[i], &gens[j], &gens[k]).expect("generators are homogeneous");
                if !residual.is_zero() {
                    return PoissonReport {
                        passed: false,
                        triples_checked: checked,
                        warnings,
                        failure: Some(PoissonFailure::Jacobi {
                            triple: (alg.name(i).into(), alg.name(j).into(), alg.name(k).into()),
                            residual,
                        }),
                    };
                }
            }
        }
    }
    PoissonReport { passed: true, triples_checked: checked, warnings, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::symplectic_super;

    #[test]
    fn symplectic_tables_pass() {
        for n in 1..=3 {
            let r = verify_poisson(&symplectic_super(n).unwrap());
            assert!(r.passed, "P_{n}: {r:?}");
            assert_eq!(r.triples_checked, (2 * n).pow(3));
        }
    }

    #[test]
    fn sign_flipped_override_fails_antisymmetry() {
        let t = symplectic_super(1).unwrap();
        let a = t.algebra().clone();
        let mut b = t.to_builder();
        b.override_lower(1, 0, SuperPolynomial::one(&a).scale(&-crate::rational::q(1))).unwrap();
        let r = verify_poisson(&b.build());
        assert!(!r.passed);
        match r.failure.unwrap() {
            PoissonFailure::Antisymmetry { pair, residual } => {
                assert_eq!(pair, ("y1".to_string(), "x1".to_string()));
                assert_eq!(residual.to_string(), "-2");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_jacobi_table_names_triple() {
        use crate::supercore::{Algebra, Generator};
        let alg = Algebra::new(vec![Generator::even("a"), Generator::even("b"), Generator::even("c")]).unwrap();
        let v = |s: &str| SuperPolynomial::var(&alg, s);
        let mut b = BracketTable::builder(&alg);
        b.set_named("a", "b", v("c")).unwrap();
        b.set_named("b", "c", v("a")).unwrap();
        b.set_named("a", "c", v("a")).unwrap();
        let r = verify_poisson(&b.build());
        assert!(matches!(r.failure, Some(PoissonFailure::Jacobi { .. })));
    }
}
