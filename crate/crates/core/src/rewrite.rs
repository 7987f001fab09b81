//! A small noncommutative rewriting engine: oriented rules on adjacent symbol
//! pairs, applied until no rule fires.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::rational::Q;
use crate::supercore::AlgebraRef;
use crate::uea::{NCPolynomial, Symbol, Word};

/// Oriented relations `ab -> replacement` on adjacent pairs.
pub trait RewriteRules {
    fn algebra(&self) -> &AlgebraRef;

    /// `None` when `ab` is already in normal order.
    fn rewrite(&self, a: Symbol, b: Symbol) -> Result<Option<NCPolynomial>>;
}

/// Right-hand side of a rule as `(word, coefficient)` pairs.
type Replacement = Vec<(Word, Q)>;

/// Which redex to contract when several are available.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniformly random redex, reproducible from the seed.
    Random(u64),
}

/// Rewrites `p` to normal form.
pub fn normalize(rules: &dyn RewriteRules, p: &NCPolynomial, strategy: Strategy) -> Result<NCPolynomial> {
    let alg = rules.algebra().clone();
    let mut cache: HashMap<(Symbol, Symbol), Option<Replacement>> = HashMap::new();
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending: BTreeMap<Word, Q> = p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut done = NCPolynomial::zero(&alg);
    while let Some((w, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        let mut redexes = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            let key = (w[i], w[i + 1]);
            if let Entry::Vacant(slot) = cache.entry(key) {
                slot.insert(
                    rules.rewrite(key.0, key.1)?.map(|p| p.terms().map(|(w, c)| (w.clone(), c.clone())).collect()),
                );
            }
            if cache[&key].is_some() {
                redexes.push(i);
                if strategy == Strategy::Leftmost {
                    break;
                }
            }
        }
        let Some(&first) = redexes.first() else {
            done.add_term(w, c);
            continue;
        };
        let i = match (&mut rng, strategy) {
            (Some(r), _) => redexes[r.gen_range(0..redexes.len())],
            (None, Strategy::Rightmost) => *redexes.last().expect("nonempty"),
            _ => first,
        };
        let replacement = cache[&(w[i], w[i + 1])].as_ref().expect("redex");
        for (r, rc) in replacement {
            let mut nw = Vec::with_capacity(w.len() + r.len());
            nw.extend_from_slice(&w[..i]);
            nw.extend_from_slice(r);
            nw.extend_from_slice(&w[i + 2..]);
            let entry = pending.entry(nw).or_insert_with(Q::zero);
            *entry += &c * rc;
        }
    }
    Ok(done)
}

/// Whether no rule applies anywhere in `w`.
pub fn is_normal(rules: &dyn RewriteRules, w: &[Symbol]) -> Result<bool> {
    for pair in w.windows(2) {
        if rules.rewrite(pair[0], pair[1])?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
