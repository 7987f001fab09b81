use super::algebra::ensure_same;
use super::{AlgebraRef, Monomial, Parity, SuperPolynomial};
use crate::error::{Error, Result};
use crate::rational::{sign, Q};

/// A homogeneous superderivation, determined by its values on generators.
///
/// Extension to products follows the graded Leibniz rule
/// `d(ab) = d(a) b + (-1)^{|a||d|} a d(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superderivation {
    alg: AlgebraRef,
    parity: Parity,
    images: Vec<Option<SuperPolynomial>>,
}

impl Superderivation {
    /// `images[i]` is the value on generator `i`; `None` leaves it undefined,
    /// which makes `apply` fail on any polynomial involving that generator.
    pub fn new(alg: &AlgebraRef, parity: Parity, images: Vec<Option<SuperPolynomial>>) -> Result<Self> {
        if images.len() != alg.len() {
            return Err(Error::InvalidArgument(format!(
                "derivation needs {} generator images, got {}",
                alg.len(),
                images.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            let Some(img) = img else { continue };
            ensure_same(alg, img.algebra())?;
            if img.is_zero() {
                continue;
            }
            let want = alg.parity(i) + parity;
            match img.parity() {
                Some(p) if p == want => {}
                Some(p) => {
                    return Err(Error::Parity(format!(
                        "{parity} derivation sends {} ({}) to {img}, which is {p}",
                        alg.name(i),
                        alg.parity(i)
                    )))
                }
                None => return Err(Error::MixedParity),
            }
        }
        Ok(Superderivation { alg: alg.clone(), parity, images })
    }

    /// Total derivation from `(generator index, image)` pairs; unlisted generators map to 0.
    pub fn from_images(
        alg: &AlgebraRef,
        parity: Parity,
        images: impl IntoIterator<Item = (usize, SuperPolynomial)>,
    ) -> Result<Self> {
        let mut v: Vec<Option<SuperPolynomial>> = (0..alg.len()).map(|_| Some(SuperPolynomial::zero(alg))).collect();
        for (i, p) in images {
            if i >= alg.len() {
                return Err(Error::InvalidArgument(format!("generator index {i} out of range")));
            }
            v[i] = Some(p);
        }
        Self::new(alg, parity, v)
    }

    pub fn zero(alg: &AlgebraRef, parity: Parity) -> Self {
        Self::from_images(alg, parity, []).expect("zero derivation is valid")
    }

    /// `x_i d/dx_i` style scaling: `D(g_j) = delta_ij g_i`.
    pub fn euler(alg: &AlgebraRef, i: usize) -> Self {
        Self::from_images(alg, Parity::Even, [(i, SuperPolynomial::generator(alg, i))])
            .expect("Euler derivation preserves parity")
    }

    /// Odd contraction `iota_j` with `iota_j(g_j) = 1` and zero on every other generator.
    pub fn contraction(alg: &AlgebraRef, j: usize) -> Result<Self> {
        if alg.parity(j).is_even() {
            return Err(Error::Parity(format!("contraction needs an odd generator, `{}` is even", alg.name(j))));
        }
        Self::from_images(alg, Parity::Odd, [(j, SuperPolynomial::one(alg))])
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn image(&self, i: usize) -> Result<&SuperPolynomial> {
        self.images[i].as_ref().ok_or_else(|| Error::IncompleteDerivation(self.alg.name(i).to_string()))
    }

    /// `f * d`, a derivation of parity `|f| + |d|`.
    pub fn left_multiply(&self, f: &SuperPolynomial) -> Result<Self> {
        let pf = f.homogeneous_parity()?;
        let images = self
            .images
            .iter()
            .map(|img| img.as_ref().map(|p| f.checked_mul(p)).transpose())
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.alg, pf + self.parity, images)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.alg, &other.alg)?;
        if self.parity != other.parity {
            return Err(Error::Parity("cannot add derivations of different parity".into()));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => a.checked_add(b).map(Some),
                _ => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.alg, self.parity, images)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Superderivation {
            alg: self.alg.clone(),
            parity: self.parity,
            images: self.images.iter().map(|i| i.as_ref().map(|p| p.scale(c))).collect(),
        }
    }

    /// Extends the generator images to `p` term by term, left to right across
    /// each monomial's generator word.
    pub fn apply(&self, p: &SuperPolynomial) -> Result<SuperPolynomial> {
        ensure_same(&self.alg, p.algebra())?;
        let mut out = SuperPolynomial::zero(&self.alg);
        for (m, c) in p.terms() {
            let t = self.apply_monomial(m)?;
            out = out.checked_add(&t.scale(c))?;
        }
        Ok(out)
    }

    fn apply_monomial(&self, m: &Monomial) -> Result<SuperPolynomial> {
        let word = m.word();
        let mut out = SuperPolynomial::zero(&self.alg);
        let mut prefix_parity = Parity::Even;
        for (k, &g) in word.iter().enumerate() {
            let img = self.image(g)?;
            if !img.is_zero() {
                let left = word_poly(&self.alg, &word[..k]);
                let right = word_poly(&self.alg, &word[k + 1..]);
                let term = left.checked_mul(img)?.checked_mul(&right)?;
                let s = sign(self.parity.swap_negates(prefix_parity));
                out = out.checked_add(&term.scale(&s))?;
            }
            prefix_parity = prefix_parity + self.alg.parity(g);
        }
        Ok(out)
    }

    /// Whether this derivation agrees with `other` on every generator.
    pub fn same_images(&self, other: &Self) -> bool {
        self.images == other.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|i| i.as_ref().is_some_and(|p| p.is_zero()))
    }
}

/// Product of generators in word order (already sorted, so no sign arises).
pub(crate) fn word_poly(alg: &AlgebraRef, word: &[usize]) -> SuperPolynomial {
    let mut e = vec![0u32; alg.len()];
    for &g in word {
        e[g] += 1;
    }
    match Monomial::from_exponents(alg, e) {
        Some(m) => SuperPolynomial::monomial(alg, m, Q::from_integer(1.into())),
        None => SuperPolynomial::zero(alg),
    }
}
