use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{sign, Q};
use crate::supercore::{ensure_same, AlgebraRef, SuperPolynomial, Superderivation};

/// Poisson bracket on generators.
///
/// Only pairs `(i, j)` with `i <= j` are stored; `{g_j, g_i}` is derived as
/// `-(-1)^{|g_i||g_j|} {g_i, g_j}`. Unlisted pairs are 0. A table may also
/// carry explicit lower-triangle overrides, which exist only so that a
/// hand-entered inconsistent table can be represented and rejected by
/// [`verify_poisson`](super::verify_poisson).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    alg: AlgebraRef,
    upper: BTreeMap<(usize, usize), SuperPolynomial>,
    overrides: BTreeMap<(usize, usize), SuperPolynomial>,
    defaulted: Vec<usize>,
}

/// Incremental construction of a [`BracketTable`].
#[derive(Clone, Debug)]
pub struct TableBuilder {
    alg: AlgebraRef,
    upper: BTreeMap<(usize, usize), SuperPolynomial>,
    overrides: BTreeMap<(usize, usize), SuperPolynomial>,
}

impl TableBuilder {
    fn index(&self, name: &str) -> Result<usize> {
        self.alg.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Sets `{g_i, g_j}`. Entries with `i > j` are stored through antisymmetry.
    pub fn set(&mut self, i: usize, j: usize, value: SuperPolynomial) -> Result<&mut Self> {
        ensure_same(&self.alg, value.algebra())?;
        let n = self.alg.len();
        if i >= n || j >= n {
            return Err(Error::InvalidArgument(format!("generator index out of range ({i}, {j})")));
        }
        let want = self.alg.parity(i) + self.alg.parity(j);
        if !value.is_zero() {
            match value.parity() {
                Some(p) if p == want => {}
                Some(p) => {
                    return Err(Error::Parity(format!(
                        "{{{}, {}}} must be {want}, but {value} is {p}",
                        self.alg.name(i),
                        self.alg.name(j)
                    )))
                }
                None => return Err(Error::MixedParity),
            }
        }
        if i == j && self.alg.parity(i).is_even() && !value.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "{{{0}, {0}}} must vanish for the even generator {0}",
                self.alg.name(i)
            )));
        }
        let (key, stored) = if i <= j {
            ((i, j), value)
        } else {
            let s = -sign(self.alg.parity(i).swap_negates(self.alg.parity(j)));
            ((j, i), value.scale(&s))
        };
        if self.upper.contains_key(&key) {
            return Err(Error::DuplicateEntry(self.alg.name(i).into(), self.alg.name(j).into()));
        }
        self.upper.insert(key, stored);
        Ok(self)
    }

    pub fn set_named(&mut self, a: &str, b: &str, value: SuperPolynomial) -> Result<&mut Self> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        self.set(i, j, value)
    }

    /// Stores `{g_i, g_j}` for `i > j` verbatim instead of deriving it.
    pub fn override_lower(&mut self, i: usize, j: usize, value: SuperPolynomial) -> Result<&mut Self> {
        ensure_same(&self.alg, value.algebra())?;
        if i <= j || i >= self.alg.len() {
            return Err(Error::InvalidArgument("overrides apply to pairs (i, j) with i > j".into()));
        }
        self.overrides.insert((i, j), value);
        Ok(self)
    }

    pub fn build(&self) -> BracketTable {
        let defaulted =
            (0..self.alg.len()).filter(|&i| self.alg.parity(i).is_odd() && !self.upper.contains_key(&(i, i))).collect();
        BracketTable {
            alg: self.alg.clone(),
            upper: self.upper.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect(),
            overrides: self.overrides.clone(),
            defaulted,
        }
    }
}

impl BracketTable {
    pub fn builder(alg: &AlgebraRef) -> TableBuilder {
        TableBuilder { alg: alg.clone(), upper: BTreeMap::new(), overrides: BTreeMap::new() }
    }

    /// The zero bracket.
    pub fn trivial(alg: &AlgebraRef) -> Self {
        let mut b = Self::builder(alg);
        for i in 0..alg.len() {
            if alg.parity(i).is_odd() {
                b.set(i, i, SuperPolynomial::zero(alg)).expect("zero diagonal");
            }
        }
        b.build()
    }

    /// Builder pre-filled with this table's entries (overrides included).
    pub fn to_builder(&self) -> TableBuilder {
        let mut upper = self.upper.clone();
        for i in 0..self.alg.len() {
            if self.alg.parity(i).is_odd() && !self.defaulted.contains(&i) {
                upper.entry((i, i)).or_insert_with(|| SuperPolynomial::zero(&self.alg));
            }
        }
        TableBuilder { alg: self.alg.clone(), upper, overrides: self.overrides.clone() }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    /// Validator warnings collected at construction (defaulted odd diagonals).
    pub fn warnings(&self) -> Vec<String> {
        self.defaulted
            .iter()
            .map(|&i| {
                format!("diagonal bracket {{{0}, {0}}} of odd generator {0} not given; using 0", self.alg.name(i))
            })
            .collect()
    }

    /// Nonzero stored entries `(i, j, {g_i, g_j})` with `i <= j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SuperPolynomial)> {
        self.upper.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn overrides(&self) -> impl Iterator<Item = (usize, usize, &SuperPolynomial)> {
        self.overrides.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn is_trivial(&self) -> bool {
        self.upper.is_empty() && self.overrides.values().all(|v| v.is_zero())
    }

    /// `{g_i, g_j}` for any pair.
    pub fn entry(&self, i: usize, j: usize) -> SuperPolynomial {
        if i <= j {
            return self.upper.get(&(i, j)).cloned().unwrap_or_else(|| SuperPolynomial::zero(&self.alg));
        }
        if let Some(v) = self.overrides.get(&(i, j)) {
            return v.clone();
        }
        self.derived_lower(i, j)
    }

    pub(crate) fn derived_lower(&self, i: usize, j: usize) -> SuperPolynomial {
        let s = -sign(self.alg.parity(i).swap_negates(self.alg.parity(j)));
        self.entry(j, i).scale(&s)
    }

    /// The Hamiltonian derivation `{g_i, -}`.
    pub fn hamiltonian(&self, i: usize) -> Superderivation {
        let images = (0..self.alg.len()).map(|j| Some(self.entry(i, j))).collect();
        Superderivation::new(&self.alg, self.alg.parity(i), images).expect("entries have checked parities")
    }

    /// `{p, -}` as a derivation; `p` must be homogeneous.
    pub fn hamiltonian_of(&self, p: &SuperPolynomial) -> Result<Superderivation> {
        ensure_same(&self.alg, p.algebra())?;
        let pp = p.homogeneous_parity()?;
        let mut images = Vec::with_capacity(self.alg.len());
        for j in 0..self.alg.len() {
            images.push(Some(self.bracket_generator_right(p, j)?));
        }
        Superderivation::new(&self.alg, pp, images)
    }

    /// `{p, g_j} = -(-1)^{|u||g_j|} {g_j, u}` summed over the monomials `u` of `p`.
    fn bracket_generator_right(&self, p: &SuperPolynomial, j: usize) -> Result<SuperPolynomial> {
        let ham = self.hamiltonian(j);
        let pj = self.alg.parity(j);
        let mut out = SuperPolynomial::zero(&self.alg);
        for (m, c) in p.terms() {
            let u = SuperPolynomial::monomial(&self.alg, m.clone(), c.clone());
            let s = -sign(m.parity(&self.alg).swap_negates(pj));
            out = out.checked_add(&ham.apply(&u)?.scale(&s))?;
        }
        Ok(out)
    }

    /// `{p, q}`, extended from the table by antisymmetry and the Leibniz rule.
    pub fn bracket(&self, p: &SuperPolynomial, q: &SuperPolynomial) -> Result<SuperPolynomial> {
        ensure_same(&self.alg, p.algebra())?;
        ensure_same(&self.alg, q.algebra())?;
        let mut out = SuperPolynomial::zero(&self.alg);
        for (m, c) in p.terms() {
            if m.is_one() {
                continue;
            }
            let u = SuperPolynomial::monomial(&self.alg, m.clone(), Q::one());
            let d = self.hamiltonian_of(&u)?;
            out = out.checked_add(&d.apply(q)?.scale(c))?;
        }
        Ok(out)
    }

    /// Same table viewed over `target`, matching generators by name.
    /// Generators of `target` absent here get zero brackets.
    pub fn reindex(&self, target: &AlgebraRef) -> Result<BracketTable> {
        let map = (0..self.alg.len())
            .map(|i| target.index_of(self.alg.name(i)).ok_or_else(|| Error::UnknownSymbol(self.alg.name(i).into())))
            .collect::<Result<Vec<_>>>()?;
        let mut b = BracketTable::builder(target);
        for (&(i, j), v) in &self.upper {
            b.set(map[i], map[j], v.reindex(target)?)?;
        }
        for i in 0..target.len() {
            let src = map.iter().position(|&k| k == i);
            let given = src.is_some_and(|s| !self.defaulted.contains(&s) && !self.upper.contains_key(&(s, s)));
            if target.parity(i).is_odd() && (src.is_none() || given) {
                b.set(i, i, SuperPolynomial::zero(target))?;
            }
        }
        for (&(i, j), v) in &self.overrides {
            let (a, c) = (map[i], map[j]);
            if a > c {
                b.override_lower(a, c, v.reindex(target)?)?;
            }
        }
        Ok(b.build())
    }

    /// Whether two tables over possibly different generator orders agree on
    /// every pair, matching generators by name.
    pub fn same_brackets(&self, other: &BracketTable) -> Result<bool> {
        if self.alg.len() != other.alg.len() {
            return Ok(false);
        }
        let moved = other.reindex(&self.alg)?;
        for i in 0..self.alg.len() {
            for j in 0..self.alg.len() {
                if self.entry(i, j) != moved.entry(i, j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
