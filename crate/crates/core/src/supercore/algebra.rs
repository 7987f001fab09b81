use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Parity;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
}

impl Generator {
    pub fn new(name: impl Into<String>, parity: Parity) -> Self {
        Generator { name: name.into(), parity }
    }

    pub fn even(name: impl Into<String>) -> Self {
        Self::new(name, Parity::Even)
    }

    pub fn odd(name: impl Into<String>) -> Self {
        Self::new(name, Parity::Odd)
    }
}

/// A finitely generated free supercommutative algebra `k[even | odd]`.
///
/// The position of a generator in the list is its index; index order is the
/// canonical monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    generators: Vec<Generator>,
}

pub type AlgebraRef = Arc<Algebra>;

impl Algebra {
    pub fn new(generators: Vec<Generator>) -> Result<AlgebraRef> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(Algebra { generators }))
    }

    /// The base field, with no generators.
    pub fn trivial() -> AlgebraRef {
        Arc::new(Algebra { generators: Vec::new() })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.generators[i].parity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// A new algebra with `g` appended as the last generator.
    pub fn extended(&self, g: Generator) -> Result<AlgebraRef> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Algebra::new(gens)
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let even: Vec<&str> = self.generators.iter().filter(|g| g.parity.is_even()).map(|g| g.name.as_str()).collect();
        let odd: Vec<&str> = self.generators.iter().filter(|g| g.parity.is_odd()).map(|g| g.name.as_str()).collect();
        write!(f, "k[{} | {}]", even.join(", "), odd.join(", "))
    }
}

pub(crate) fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same(a: &AlgebraRef, b: &AlgebraRef) -> Result<()> {
    if same_algebra(a, b) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_are_rejected() {
        let err = Algebra::new(vec![Generator::even("x"), Generator::odd("x")]).unwrap_err();
        assert_eq!(err, Error::DuplicateGenerator("x".into()));
    }

    #[test]
    fn extension_appends_last() {
        let a = Algebra::new(vec![Generator::odd("y")]).unwrap();
        let b = a.extended(Generator::even("x")).unwrap();
        assert_eq!(b.index_of("x"), Some(1));
        assert_eq!(b.to_string(), "k[x | y]");
    }
}
