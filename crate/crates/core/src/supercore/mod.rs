//! Exact arithmetic in free supercommutative algebras (polynomial on even
//! generators, exterior on odd ones), superderivations, and the super tensor
//! product.

mod algebra;
mod derivation;
mod monomial;
mod parity;
mod polynomial;
mod tensor;

pub(crate) use algebra::{ensure_same, same_algebra};
pub use algebra::{Algebra, AlgebraRef, Generator};
pub use derivation::Superderivation;
pub use monomial::{monomials_in_box, monomials_up_to, Monomial};
pub use parity::Parity;
pub use polynomial::SuperPolynomial;
pub use tensor::{doubled_algebra, TensorElement};
