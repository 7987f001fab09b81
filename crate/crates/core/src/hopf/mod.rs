//! Hopf superalgebra structure on `U(A)` for a Poisson Hopf superalgebra `A`.

mod axioms;
mod data;
mod lie;
mod uea_tensor;

pub use axioms::{check_hopf_axioms, uea_antipode, uea_coproduct, uea_counit, HopfFailure, HopfReport};
pub use data::{bracket_tensor_square, tensor_bracket, HopfData};
pub use lie::{
    phi_check, poisson_symmetric, ps_even_line, ps_odd_line, ps_odd_square, LieUea, PhiReport, DELTA_TYPO_NOTE,
};
pub use uea_tensor::UeaTensor;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::poisson::{symplectic_super, verify_poisson, BracketTable};
    use crate::rational::q;
    use crate::supercore::{Algebra, Generator, SuperPolynomial, TensorElement};
    use crate::uea::{defining_relations, pbw_basis_total, NCPolynomial, Uea};

    fn show(h: &HopfData, t: &UeaTensor) -> String {
        t.render(h.algebra())
    }

    #[test]
    fn tensor_square_bracket() {
        let t = symplectic_super(1).unwrap();
        let a = t.algebra();
        let one = SuperPolynomial::one(a);
        let x = SuperPolynomial::var(a, "x1");
        let y = SuperPolynomial::var(a, "y1");
        let sq = bracket_tensor_square(&t).unwrap();
        assert!(verify_poisson(&sq).passed);
        let r = tensor_bracket(&t, &TensorElement::pure(&x, &one), &TensorElement::pure(&y, &one)).unwrap();
        assert_eq!(r, TensorElement::one(a, a));
        let r = tensor_bracket(&t, &TensorElement::pure(&x, &one), &TensorElement::pure(&one, &y)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn primitive_coproduct_counit_antipode() {
        let h = ps_odd_square().unwrap();
        let a = h.algebra();
        let hx = NCPolynomial::h(a, 0);
        let mx = NCPolynomial::m(a, 0);
        assert_eq!(show(&h, &uea_coproduct(&h, &hx).unwrap()), "1 1 @ h(x) + 1 h(x) @ 1");
        assert_eq!(show(&h, &uea_coproduct(&h, &mx).unwrap()), "1 1 @ m(x) + 1 m(x) @ 1");
        assert_eq!(uea_coproduct(&h, &NCPolynomial::one(a)).unwrap(), UeaTensor::one(2));
        assert_eq!(uea_counit(&h, &hx), q(0));
        assert_eq!(uea_counit(&h, &NCPolynomial::one(a)), q(1));
        assert_eq!(uea_antipode(&h, &hx).unwrap(), hx.scale(&q(-1)));
        assert_eq!(h.notes(), [DELTA_TYPO_NOTE]);
    }

    #[test]
    fn axioms_hold_for_ps_examples() {
        for (h, d) in [(ps_odd_line().unwrap(), 2), (ps_even_line().unwrap(), 2), (ps_odd_square().unwrap(), 3)] {
            let r = check_hopf_axioms(&h, d).unwrap();
            assert!(r.passed, "{:?}", r.failure);
            assert_eq!(r.monomials_checked, pbw_basis_total(h.algebra(), d).len());
        }
    }

    #[test]
    fn corrupted_counit_is_caught() {
        let h = ps_even_line().unwrap().with_epsilon_unchecked(0, q(1));
        let r = check_hopf_axioms(&h, 2).unwrap();
        assert!(!r.passed);
        let f = r.failure.unwrap();
        assert!(f.axiom.starts_with("counit"), "{f:?}");
        assert_eq!(f.monomial, "1 m(x)");
    }

    #[test]
    fn wrong_antipode_is_caught() {
        let h = ps_even_line().unwrap();
        let a = h.algebra();
        let delta = vec![h.delta_gen(0).clone()];
        let bad = HopfData::new(h.table(), delta, vec![q(0)], vec![SuperPolynomial::generator(a, 0)]).unwrap();
        let f = check_hopf_axioms(&bad, 1).unwrap().failure.unwrap();
        assert!(f.axiom.starts_with("antipode"), "{f:?}");
    }

    #[test]
    fn maps_kill_defining_relations() {
        let h = ps_odd_square().unwrap();
        let uea = Uea::new(h.table());
        let n = h.algebra().len();
        for i in 0..n {
            for j in 0..n {
                for (name, rel) in defining_relations(&uea, i, j).unwrap() {
                    assert!(uea_coproduct(&h, &rel).unwrap().is_zero(), "{name}");
                    assert_eq!(uea_counit(&h, &rel), q(0), "{name}");
                    assert!(uea_antipode(&h, &rel).unwrap().is_zero(), "{name}");
                }
            }
        }
    }

    #[test]
    fn antipode_is_involutive_on_even_words() {
        let h = ps_odd_square().unwrap();
        let a = h.algebra();
        let w = NCPolynomial::h(a, 0)
            .checked_mul(&NCPolynomial::m(a, 0))
            .unwrap()
            .checked_mul(&NCPolynomial::h(a, 0))
            .unwrap();
        let uea = Uea::new(h.table());
        let back = uea_antipode(&h, &uea_antipode(&h, &w).unwrap()).unwrap();
        assert_eq!(back, uea.normalize(&w).unwrap());
    }

    #[test]
    fn phi_is_a_basis_correspondence() {
        for h in [ps_odd_line().unwrap(), ps_even_line().unwrap(), ps_odd_square().unwrap()] {
            let r = phi_check(&h, 3).unwrap();
            assert!(r.passed, "{r:?}");
        }
        let r = phi_check(&ps_odd_square().unwrap(), 3).unwrap();
        assert_eq!(r.source_basis_size, pbw_basis_total(ps_odd_square().unwrap().algebra(), 3).len());
    }

    #[test]
    fn non_hopf_data_rejected() {
        // On P1 primitive generators double {x1, y1} = 1 under Delta.
        let t = symplectic_super(1).unwrap();
        assert!(matches!(HopfData::primitive(&t), Err(Error::NotPoissonHopf(_))));
        let alg = Algebra::new(vec![Generator::even("x"), Generator::even("z")]).unwrap();
        let mut b = BracketTable::builder(&alg);
        b.set_named("x", "z", SuperPolynomial::var(&alg, "x") * SuperPolynomial::var(&alg, "z")).unwrap();
        assert!(matches!(poisson_symmetric(&b.build()), Err(Error::InvalidArgument(_))));
    }
}
