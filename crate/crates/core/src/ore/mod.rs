//! Poisson-Ore extensions and the iterated Ore extension structure of their
//! enveloping algebras.

mod data;
mod phi;
mod skew;

pub use data::{extend_ore, iterated_skew_extension, x_coefficients, OreData, OreFailure, OreReport};
pub use phi::{phi_h_closed, phi_iso_check, OreIsoReport, OrePhi};
pub use skew::{sigma_eta, skew_mul, OreMap, SkewPolynomial};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::poisson::{skew_super_bracket, verify_poisson, BracketTable};
    use crate::rational::q;
    use crate::supercore::{Algebra, AlgebraRef, Generator, Parity, SuperPolynomial, Superderivation};
    use crate::uea::NCPolynomial;

    fn odd_line() -> BracketTable {
        let alg = Algebra::new(vec![Generator::odd("y1")]).unwrap();
        BracketTable::trivial(&alg)
    }

    fn skew_line_step(xi: i64) -> OreData {
        let t = odd_line();
        let alg = t.algebra().clone();
        let alpha = Superderivation::euler(&alg, 0).scale(&q(xi));
        let mut o = OreData::new(&t, "x1", alpha, Superderivation::zero(&alg, Parity::Even)).unwrap();
        assert!(o.validate().unwrap().passed);
        o
    }

    /// `k[a, b]` trivial, extended by `x` with `alpha(a) = a`, `alpha(b) = -b`,
    /// `delta(a) = a^2`, `delta(b) = -ab`.
    fn mixed() -> OreData {
        let alg = Algebra::new(vec![Generator::even("a"), Generator::even("b")]).unwrap();
        let t = BracketTable::trivial(&alg);
        let (a, b) = (var(&alg, "a"), var(&alg, "b"));
        let alpha = Superderivation::from_images(&alg, Parity::Even, [(0, a.clone()), (1, -&b)]).unwrap();
        let delta = Superderivation::from_images(&alg, Parity::Even, [(0, a.pow(2)), (1, -(&a * &b))]).unwrap();
        let mut o = OreData::new(&t, "x", alpha, delta).unwrap();
        assert!(o.validate().unwrap().passed);
        o
    }

    fn var(alg: &AlgebraRef, name: &str) -> SuperPolynomial {
        SuperPolynomial::var(alg, name)
    }

    #[test]
    fn zero_derivations_extend_trivially() {
        let t = odd_line();
        let alg = t.algebra().clone();
        let z = Superderivation::zero(&alg, Parity::Even);
        let mut o = OreData::new(&t, "x", z.clone(), z).unwrap();
        assert!(matches!(extend_ore(&o), Err(Error::Unvalidated)));
        assert!(o.validate().unwrap().passed);
        let ext = extend_ore(&o).unwrap();
        assert!(ext.entry(0, 1).is_zero());
        assert!(verify_poisson(&ext).passed);
    }

    #[test]
    fn skew_line_single_step() {
        let o = skew_line_step(3);
        let ext = extend_ore(&o).unwrap();
        let a = ext.algebra();
        assert_eq!(ext.bracket(&var(a, "x1"), &var(a, "y1")).unwrap(), (var(a, "x1") * var(a, "y1")).scale(&q(3)));
        assert!(verify_poisson(&ext).passed);
    }

    #[test]
    fn iterated_build_matches_direct_table() {
        let lambda = vec![vec![q(0), q(2), q(-1)], vec![q(-2), q(0), q(5)], vec![q(1), q(-5), q(0)]];
        let mu = vec![vec![q(0), q(3)], vec![q(-3), q(0)]];
        let xi = vec![vec![q(1), q(0)], vec![q(-4), q(7)], vec![q(2), q(1)]];
        let iterated = iterated_skew_extension(&lambda, &mu, &xi).unwrap();
        let direct = skew_super_bracket(&lambda, &mu, &xi).unwrap();
        assert!(direct.same_brackets(&iterated).unwrap());
        assert!(verify_poisson(&iterated).passed);
    }

    #[test]
    fn parity_violations_rejected() {
        let alg = Algebra::new(vec![Generator::even("x1"), Generator::odd("y1")]).unwrap();
        let bad = Superderivation::from_images(&alg, Parity::Even, [(0, var(&alg, "y1"))]);
        assert!(matches!(bad, Err(Error::Parity(_))));
        let t = BracketTable::trivial(&alg);
        let odd = Superderivation::contraction(&alg, 1).unwrap();
        let z = Superderivation::zero(&alg, Parity::Even);
        assert!(matches!(OreData::new(&t, "x", odd, z), Err(Error::Parity(_))));
    }

    #[test]
    fn failing_delta_law_matches_non_poisson_extension() {
        // alpha(a) = a, delta(b) = 1: alpha(a) delta(b) - delta(a) alpha(b) = a != 0.
        let alg = Algebra::new(vec![Generator::even("a"), Generator::even("b")]).unwrap();
        let t = BracketTable::trivial(&alg);
        let alpha = Superderivation::euler(&alg, 0);
        let delta = Superderivation::from_images(&alg, Parity::Even, [(1, SuperPolynomial::one(&alg))]).unwrap();
        let mut o = OreData::new(&t, "x", alpha, delta).unwrap();
        let r = o.validate().unwrap();
        let f = r.failure.unwrap();
        assert_eq!((f.law.as_str(), f.pair.0.as_str(), f.pair.1.as_str()), ("delta", "a", "b"));
        assert!(!o.is_validated());
        assert!(!verify_poisson(&o.extension_table().unwrap()).passed);
    }

    #[test]
    fn closed_formula_agrees_with_leibniz_extension() {
        let o = mixed();
        let ext = extend_ore(&o).unwrap();
        let e = ext.algebra();
        let base = o.algebra();
        let x = var(e, "x");
        let samples =
            [var(base, "a"), var(base, "b"), var(base, "a") * var(base, "b").pow(2), SuperPolynomial::one(base)];
        for r in &samples {
            for s in &samples {
                for i in 0..3 {
                    for j in 0..3 {
                        let lhs = ext
                            .bracket(&(r.reindex(e).unwrap() * x.pow(i)), &(s.reindex(e).unwrap() * x.pow(j)))
                            .unwrap();
                        assert_eq!(lhs, o.closed_bracket(e, r, i, s, j).unwrap(), "{r} x^{i}, {s} x^{j}");
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_eta_on_generators() {
        let o = mixed();
        let alg = o.algebra();
        let (ma, hb) = (NCPolynomial::m(alg, 0), NCPolynomial::h(alg, 1));
        let show = |m, p: &NCPolynomial| sigma_eta(&o, m, p).unwrap().render(&o);
        assert_eq!(show(OreMap::Sigma1, &ma), "1 m(a)");
        assert_eq!(show(OreMap::Eta1, &ma), "0");
        assert_eq!(show(OreMap::Eta1, &hb), "-1 m(a)m(b)");
        // eta_2(m_a) = m_{alpha(a)} m_x + m_{delta(a)} = m_a m_x + m_a^2.
        assert_eq!(show(OreMap::Eta2, &ma), "1 m(a)m(x) + 1 m(a)^2");
        let ha = NCPolynomial::h(alg, 0);
        assert_eq!(show(OreMap::Sigma2, &ha), "1 m(a) + 1 h(a)");
        // eta_2(h_a) = (h_a + m_a) m_x + m_{a^2} + h_{a^2}, with h_{a^2} = 2 m_a h_a.
        assert_eq!(show(OreMap::Eta2, &ha), "1 m(a)m(x) + 1 m(a)^2 + 2 m(a)h(a) + 1 h(a)m(x)");
    }

    #[test]
    fn skew_products_on_generators() {
        let o = mixed();
        let alg = o.algebra();
        let mul = |u: &SkewPolynomial, v: &SkewPolynomial| skew_mul(&o, u, v).unwrap();
        let m_a = SkewPolynomial::from_base(&NCPolynomial::m(alg, 0), 0, 0);
        assert_eq!(mul(&SkewPolynomial::m_x(), &m_a).render(&o), "1 m(a)m(x)");
        assert_eq!(mul(&SkewPolynomial::h_x(), &SkewPolynomial::m_x()).render(&o), "1 m(x)h(x)");
        let h_a = NCPolynomial::h(alg, 0);
        let h_a_s = SkewPolynomial::from_base(&h_a, 0, 0);
        let expected = mul(&sigma_eta(&o, OreMap::Sigma2, &h_a).unwrap(), &SkewPolynomial::h_x())
            .add(&sigma_eta(&o, OreMap::Eta2, &h_a).unwrap());
        assert_eq!(mul(&SkewPolynomial::h_x(), &h_a_s), expected);
        assert_eq!(expected.render(&o), "1 m(a)h(x) + 1 m(a)m(x) + 1 m(a)^2 + 2 m(a)h(a) + 1 h(a)h(x) + 1 h(a)m(x)");
    }

    #[test]
    fn sigma1_inverse_undoes_sigma1() {
        let o = mixed();
        let alg = o.algebra();
        let uea = crate::uea::Uea::new(o.base());
        for g in 0..alg.len() {
            for p in [NCPolynomial::m(alg, g), NCPolynomial::h(alg, g)] {
                let s = sigma_eta(&o, OreMap::Sigma1, &p).unwrap();
                let mut back = NCPolynomial::zero(alg);
                for ((w, _, _), c) in s.terms() {
                    let img = NCPolynomial::word(alg, w.clone(), c.clone())
                        .substitute(alg, |sym| match sym.kind {
                            crate::uea::SymbolKind::M => Ok(NCPolynomial::symbol(alg, sym)),
                            crate::uea::SymbolKind::H => {
                                NCPolynomial::symbol(alg, sym).checked_sub(&uea.embed_m(o.alpha().image(sym.gen)?)?)
                            }
                        })
                        .unwrap();
                    back = back.checked_add(&img).unwrap();
                }
                assert_eq!(uea.normalize(&back).unwrap(), p);
            }
        }
    }

    #[test]
    fn phi_iso_examples() {
        for o in [skew_line_step(2), mixed()] {
            let r = phi_iso_check(&o, 3).unwrap();
            assert!(r.passed, "{r:?}");
        }
        let t = odd_line();
        let z = Superderivation::zero(t.algebra(), Parity::Even);
        let mut o = OreData::new(&t, "x", z.clone(), z).unwrap();
        o.validate().unwrap();
        assert!(phi_iso_check(&o, 3).unwrap().passed);
    }

    #[test]
    fn phi_on_m_and_h() {
        let o = mixed();
        let phi = OrePhi::new(&o).unwrap();
        let e = phi.extended_algebra().clone();
        let rx = var(&e, "a") * var(&e, "x");
        assert_eq!(phi.m_of(&rx).unwrap().render(&o), "1 m(a)m(x)");
        let a = var(&e, "a") * var(&e, "x").pow(2) + var(&e, "b").pow(2) * var(&e, "x") + var(&e, "b");
        assert_eq!(phi.h_of(&a).unwrap(), phi_h_closed(&o, &a).unwrap());
    }

    #[test]
    fn skew_mul_needs_validation() {
        let t = odd_line();
        let z = Superderivation::zero(t.algebra(), Parity::Even);
        let o = OreData::new(&t, "x", z.clone(), z).unwrap();
        assert!(matches!(skew_mul(&o, &SkewPolynomial::one(), &SkewPolynomial::one()), Err(Error::Unvalidated)));
    }
}
