//! Poisson enveloping algebras as rewriting systems: PBW normal forms, bases,
//! quadratic presentations, Weyl superalgebras, opposite algebras and functoriality.

mod enveloping;
mod functor;
mod ncpoly;
mod pbw;
mod present;
mod weyl;

pub use enveloping::{defining_relations, Uea};
pub(crate) use enveloping::{embed_h, embed_m};
pub use functor::{opposite_uea, uea_functor, PoissonMap};
pub(crate) use ncpoly::{default_symbol, word_parity};
pub use ncpoly::{render_word, NCPolynomial, Symbol, SymbolKind, Word};
pub use pbw::{pbw_basis, pbw_basis_total, pbw_terms, PBWMonomial};
pub use present::{
    present_exterior, present_quadratic, quadratic_duality_check, DualityReport, Presentation, Relation,
};
pub use weyl::{symplectic_iso_check, symplectic_iso_check_with, SymplecticIsoReport, WeylAlgebra};
