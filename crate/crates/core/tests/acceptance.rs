//! End-to-end acceptance suite. Prints one line per criterion and exits
//! nonzero if any criterion fails.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use superpoisson::cli::run_args;
use superpoisson::hopf::{check_hopf_axioms, phi_check, ps_even_line, ps_odd_line, ps_odd_square};
use superpoisson::kahler::supersymmetric_count;
use superpoisson::linalg::rank;
use superpoisson::ore::{extend_ore, phi_iso_check, sigma_eta, skew_mul, OreData, OreMap, SkewPolynomial};
use superpoisson::poisson::{
    jacobi_residual, matrix_dual_example, skew_super_bracket, symplectic_super, verify_poisson, BracketTable,
    PoissonFailure, StructureConstants,
};
use superpoisson::rational::{q, Q};
use superpoisson::rewrite::Strategy;
use superpoisson::supercore::{Algebra, Generator, Parity, SuperPolynomial, Superderivation};
use superpoisson::uea::{
    pbw_basis, present_exterior, present_quadratic, quadratic_duality_check, symplectic_iso_check, NCPolynomial,
    Symbol, SymbolKind, Uea,
};

type Outcome = std::result::Result<String, String>;

/// Name, check and optional time limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn check(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn qm(rows: &[&[i64]]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
}

fn skew(n: usize, seed: i64) -> Vec<Vec<Q>> {
    let mut m = vec![vec![q(0); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = ((i as i64 + 2) * (j as i64 + 1) * seed) % 7 - 3;
            m[i][j] = q(v);
            m[j][i] = q(-v);
        }
    }
    m
}

fn rect(n: usize, m: usize, seed: i64) -> Vec<Vec<Q>> {
    (0..n).map(|i| (0..m).map(|j| q(((i as i64 + 1) * 3 + (j as i64) * seed) % 5 - 2)).collect()).collect()
}

fn axiom_suite() -> Outcome {
    let mut tables: Vec<(String, BracketTable)> = Vec::new();
    for n in 1..=3 {
        tables.push((format!("P{n}"), symplectic_super(n).map_err(|e| e.to_string())?));
        let c = StructureConstants::from_skew(&skew(n, 5)).map_err(|e| e.to_string())?;
        tables.push((format!("skew dual n={n}"), c.dual_bracket()));
    }
    tables.push(("matrix dual".into(), matrix_dual_example()));
    for n in 1..=2 {
        for m in 1..=2 {
            let t = skew_super_bracket(&skew(n, 3), &skew(m, 4), &rect(n, m, 2)).map_err(|e| e.to_string())?;
            tables.push((format!("skew super n={n} m={m}"), t));
        }
    }
    let mut triples = 0;
    for (name, t) in &tables {
        let r = verify_poisson(t);
        check(r.passed, format!("{name} rejected: {:?}", r.failure))?;
        triples += r.triples_checked;
    }

    // {a, b} = c, {b, c} = b breaks Jacobi on (a, b, c)
    let alg = Algebra::new(vec![Generator::even("a"), Generator::even("b"), Generator::even("c")]).unwrap();
    let v = |s: &str| SuperPolynomial::var(&alg, s);
    let mut b = BracketTable::builder(&alg);
    b.set_named("a", "b", v("c")).unwrap();
    b.set_named("b", "c", v("b")).unwrap();
    let bad = b.build();
    let r = verify_poisson(&bad);
    let Some(PoissonFailure::Jacobi { triple, .. }) = r.failure else {
        return Err(format!("corrupted table not caught: {r:?}"));
    };
    let (x, y, z) = (v(&triple.0), v(&triple.1), v(&triple.2));
    check(
        !jacobi_residual(&bad, &x, &y, &z).unwrap().is_zero(),
        format!("named triple {triple:?} is not a violation"),
    )?;
    Ok(format!("{} tables, {triples} triples; corruption named at {triple:?}", tables.len()))
}

fn weyl_iso() -> Outcome {
    let r = symplectic_iso_check(1, 4).map_err(|e| e.to_string())?;
    check(r.passed, format!("n=1: {r:?}"))?;
    check(r.weyl_basis_size == 16 && r.uea_basis_size == 16, format!("n=1 basis sizes {r:?}"))?;
    check(r.relations_checked == 6, format!("n=1 relation count {}", r.relations_checked))?;
    let r2 = symplectic_iso_check(2, 3).map_err(|e| e.to_string())?;
    check(r2.passed, format!("n=2: {r2:?}"))?;
    check(r2.relations_checked == 2 * 2 * (4 * 2 - 1), format!("n=2 relation count {}", r2.relations_checked))?;
    Ok(format!(
        "n=1: 16 = 16 forms, {} relations; n=2: {} relations, {} forms to degree 3",
        r.relations_checked, r2.relations_checked, r2.uea_basis_size
    ))
}

fn pbw_counting() -> Outcome {
    let alg = Algebra::new(vec![Generator::even("x1"), Generator::odd("y1")]).unwrap();
    // m-part: x^{0..2} y^{0..1}; h-part: h_x^{0..2} h_y^{0..1}
    let oracle = (3 * 2) * (3 * 2);
    let ex = skew_super_bracket(&qm(&[&[0]]), &qm(&[&[0]]), &qm(&[&[1]])).map_err(|e| e.to_string())?;
    let mut counts = Vec::new();
    for t in [BracketTable::trivial(&alg), ex] {
        let n = pbw_basis(t.algebra(), 2, 2).len();
        let s = supersymmetric_count(t.algebra(), 2, 2) as usize;
        check(n == 36 && n == oracle && s == n, format!("pbw {n}, supersymmetric {s}, expected 36"))?;
        counts.push(n);
    }
    Ok(format!("trivial {}, skew {}, supersymmetric 36", counts[0], counts[1]))
}

fn random_word(rng: &mut StdRng, alg: &superpoisson::supercore::AlgebraRef, max_len: usize) -> NCPolynomial {
    let len = rng.gen_range(0..=max_len);
    let w = (0..len)
        .map(|_| {
            let g = rng.gen_range(0..alg.len());
            if rng.gen_bool(0.5) {
                Symbol::h(g)
            } else {
                Symbol::m(g)
            }
        })
        .collect();
    NCPolynomial::word(alg, w, q(1))
}

fn confluence() -> Outcome {
    let t = symplectic_super(2).map_err(|e| e.to_string())?;
    let uea = Uea::new(&t);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut nonzero = 0;
    for k in 0..200 {
        let p = random_word(&mut rng, t.algebra(), 5);
        let (s1, s2) = (rng.gen::<u64>(), rng.gen::<u64>());
        let a = uea.normalize_with(&p, Strategy::Random(s1)).map_err(|e| e.to_string())?;
        let b = uea.normalize_with(&p, Strategy::Random(s2)).map_err(|e| e.to_string())?;
        check(a == b, format!("word {k}: {a} vs {b}"))?;
        nonzero += usize::from(!a.is_zero());
    }
    Ok(format!("200 words agree ({nonzero} nonzero normal forms)"))
}

fn hopf_suite() -> Outcome {
    let mut parts = Vec::new();
    for (name, h) in [("odd line", ps_odd_line()), ("even line", ps_even_line()), ("[y,y]=x", ps_odd_square())] {
        let h = h.map_err(|e| e.to_string())?;
        let r = check_hopf_axioms(&h, 2).map_err(|e| e.to_string())?;
        check(r.passed, format!("{name}: {:?}", r.failure))?;
        let p = phi_check(&h, 3).map_err(|e| e.to_string())?;
        check(p.passed, format!("{name} phi: {p:?}"))?;
        parts.push(format!("{name} {} monomials", r.monomials_checked));
    }
    let h = ps_odd_square().unwrap();
    let x = h.algebra().index_of("x").unwrap();
    let bad = h.with_epsilon_unchecked(x, q(1));
    let r = check_hopf_axioms(&bad, 2).map_err(|e| e.to_string())?;
    let axiom = r.failure.as_ref().map(|f| f.axiom.clone()).unwrap_or_default();
    check(!r.passed && axiom.contains("counit"), format!("corrupted counit: {r:?}"))?;
    Ok(format!("{}; phi to degree 3; corrupted epsilon fails {axiom}", parts.join(", ")))
}

fn duality() -> Outcome {
    let lambda = qm(&[&[0, 3], &[-3, 0]]);
    let c = StructureConstants::from_skew(&lambda).map_err(|e| e.to_string())?;
    let r = quadratic_duality_check(&c);
    check(r.passed, format!("{r:?}"))?;

    // brute-force oracle: m_i pairs with h_i and h_i with m_i, degree 2 is 4n^2-dimensional
    let flip = |s: Symbol| match s.kind {
        SymbolKind::M => (1u8, s.gen),
        SymbolKind::H => (0u8, s.gen),
    };
    let key = |s: Symbol| match s.kind {
        SymbolKind::M => (0u8, s.gen),
        SymbolKind::H => (1u8, s.gen),
    };
    let quad: Vec<BTreeMap<_, Q>> = present_quadratic(&c)
        .relations
        .iter()
        .map(|r| r.relation.terms().map(|(w, v)| ((key(w[0]), key(w[1])), v.clone())).collect())
        .collect();
    let ext: Vec<BTreeMap<_, Q>> = present_exterior(&c)
        .relations
        .iter()
        .map(|r| r.relation.terms().map(|(w, v)| ((flip(w[0]), flip(w[1])), v.clone())).collect())
        .collect();
    for a in &quad {
        for b in &ext {
            let dot: Q = a.iter().filter_map(|(k, v)| b.get(k).map(|u| u * v)).sum();
            check(dot == q(0), "a quadratic and an exterior relation pair nontrivially")?;
        }
    }
    let dim = 4 * 2 * 2;
    let (rq, re) = (rank(&quad), rank(&ext));
    check(rq + re == dim, format!("ranks {rq} + {re} != {dim}"))?;
    Ok(format!("rank {rq} + annihilator {re} = {dim}"))
}

/// The mixed skew family built one even variable at a time, validating each stage.
fn ore_stages(lambda: &[Vec<Q>], mu: &[Vec<Q>], xi: &[Vec<Q>]) -> std::result::Result<(BracketTable, usize), String> {
    let (n, m) = (lambda.len(), mu.len());
    let odd = Algebra::new((1..=m).map(|i| Generator::odd(format!("y{i}"))).collect()).unwrap();
    let mut b = BracketTable::builder(&odd);
    for i in 0..m {
        for j in i..m {
            let (yi, yj) = (SuperPolynomial::generator(&odd, i), SuperPolynomial::generator(&odd, j));
            b.set(i, j, (&yi * &yj).scale(&mu[i][j])).unwrap();
        }
    }
    let mut t = b.build();
    let mut pairs = 0;
    for r in 0..n {
        let alg = t.algebra().clone();
        let mut images = Vec::new();
        for k in 0..r {
            let g = alg.index_of(&format!("x{}", k + 1)).unwrap();
            images.push((g, SuperPolynomial::generator(&alg, g).scale(&lambda[r][k])));
        }
        for l in 0..m {
            let g = alg.index_of(&format!("y{}", l + 1)).unwrap();
            images.push((g, SuperPolynomial::generator(&alg, g).scale(&xi[r][l])));
        }
        let alpha = Superderivation::from_images(&alg, Parity::Even, images).map_err(|e| e.to_string())?;
        let delta = Superderivation::zero(&alg, Parity::Even);
        let mut o = OreData::new(&t, format!("x{}", r + 1), alpha, delta).map_err(|e| e.to_string())?;
        let rep = o.validate().map_err(|e| e.to_string())?;
        check(rep.passed, format!("stage x{}: {:?}", r + 1, rep.failure))?;
        pairs += rep.pairs_checked;
        t = extend_ore(&o).map_err(|e| e.to_string())?;
    }
    Ok((t, pairs))
}

fn skew_line_step(xi: i64) -> OreData {
    let alg = Algebra::new(vec![Generator::odd("y1")]).unwrap();
    let t = BracketTable::trivial(&alg);
    let alpha = Superderivation::euler(&alg, 0).scale(&q(xi));
    let mut o = OreData::new(&t, "x1", alpha, Superderivation::zero(&alg, Parity::Even)).unwrap();
    o.validate().unwrap();
    o
}

/// `k[a | y]` with `alpha` the Euler derivation and `delta = a * alpha`.
fn ore_with_delta() -> OreData {
    let alg = Algebra::new(vec![Generator::even("a"), Generator::odd("y")]).unwrap();
    let t = BracketTable::trivial(&alg);
    let (a, y) = (SuperPolynomial::var(&alg, "a"), SuperPolynomial::var(&alg, "y"));
    let alpha = Superderivation::from_images(&alg, Parity::Even, [(0, a.clone()), (1, y.clone())]).unwrap();
    let delta = Superderivation::from_images(&alg, Parity::Even, [(0, a.pow(2)), (1, &a * &y)]).unwrap();
    let mut o = OreData::new(&t, "x", alpha, delta).unwrap();
    o.validate().unwrap();
    o
}

fn ore_suite() -> Outcome {
    let (lambda, mu, xi) = (skew(2, 3), skew(2, 4), rect(2, 2, 2));
    let (iterated, pairs) = ore_stages(&lambda, &mu, &xi)?;
    let direct = skew_super_bracket(&lambda, &mu, &xi).map_err(|e| e.to_string())?;
    check(direct.same_brackets(&iterated).map_err(|e| e.to_string())?, "iterated table differs from direct table")?;

    let o = skew_line_step(1);
    let r = phi_iso_check(&o, 3).map_err(|e| e.to_string())?;
    check(r.passed, format!("phi iso: {r:?}"))?;

    let mut rng = StdRng::seed_from_u64(65);
    let fixtures = [skew_line_step(3), ore_with_delta()];
    for k in 0..100 {
        let o = &fixtures[k % 2];
        let alg = o.algebra();
        let uea = Uea::new(o.base());
        let (s, z) = (random_word(&mut rng, alg, 3), random_word(&mut rng, alg, 3));
        let sz = uea.mul(&s, &z).map_err(|e| e.to_string())?;
        let z_sk = SkewPolynomial::from_base(&uea.normalize(&z).map_err(|e| e.to_string())?, 0, 0);
        for (sigma, eta) in [(OreMap::Sigma1, OreMap::Eta1), (OreMap::Sigma2, OreMap::Eta2)] {
            let f = |m, p: &NCPolynomial| sigma_eta(o, m, p).map_err(|e| e.to_string());
            let lhs = f(eta, &sz)?;
            let g = |u: &SkewPolynomial, v: &SkewPolynomial| skew_mul(o, u, v).map_err(|e| e.to_string());
            let rhs = g(&f(sigma, &s)?, &f(eta, &z)?)?.add(&g(&f(eta, &s)?, &z_sk)?);
            check(lhs == rhs, format!("pair {k}: {eta:?} law fails on {s} * {z}"))?;
        }
    }
    Ok(format!(
        "2 stages ({pairs} pairs) match direct table; phi iso at degree 3 ({} forms); 100 eta pairs",
        r.target_basis_size
    ))
}

fn golden_transcript(args: &[&str]) -> String {
    let mut argv = vec!["superpoisson"];
    argv.extend_from_slice(args);
    let o = run_args(argv);
    format!("exit {}\n--- stdout\n{}--- stderr\n{}", o.code, o.stdout, o.stderr)
}

fn cli_contract() -> Outcome {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    std::env::set_current_dir(&root).map_err(|e| e.to_string())?;
    let (p1, sk) = ("../../specs/p1.spec", "../../specs/skew_quadratic.spec");
    let cases: [(&str, Vec<&str>); 7] = [
        ("p1_normalize", vec!["normalize", p1, "h(x1)*m(y1)"]),
        ("p1_basis", vec!["basis", p1, "--dm", "1", "--dh", "1"]),
        ("p1_present", vec!["present", p1, "--kind", "quadratic"]),
        ("skew_normalize", vec!["normalize", sk, "h(x2)*m(x1)*h(x1)"]),
        ("skew_basis", vec!["basis", sk, "--dm", "1", "--dh", "1"]),
        ("skew_present_quadratic", vec!["present", sk, "--kind", "quadratic"]),
        ("skew_present_exterior", vec!["present", sk, "--kind", "exterior"]),
    ];
    for (name, args) in &cases {
        let path = root.join("tests/golden").join(format!("{name}.txt"));
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let first = golden_transcript(args);
        check(first == expected, format!("{name} differs from golden"))?;
        check(golden_transcript(args) == first, format!("{name} not reproducible"))?;
    }
    Ok(format!("{} golden transcripts byte-identical across two runs", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("poisson axiom suite", axiom_suite, Some(Duration::from_secs(5))),
        ("weyl isomorphism", weyl_iso, Some(Duration::from_secs(10))),
        ("pbw counting", pbw_counting, None),
        ("confluence", confluence, None),
        ("hopf suite", hopf_suite, None),
        ("quadratic duality", duality, None),
        ("ore suite", ore_suite, None),
        ("cli contract", cli_contract, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let took = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if took > *limit {
                outcome = Err(format!("took {took:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({took:.2?}) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({took:.2?}) {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
