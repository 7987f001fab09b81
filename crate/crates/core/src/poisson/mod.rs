//! Poisson superalgebra structures given by bracket tables on generators.

mod families;
mod table;
mod verify;

pub use families::{
    matrix_dual_example, matrix_quadratic_example, skew_super_bracket, symplectic_super, StructureConstants,
};
pub use table::{BracketTable, TableBuilder};
pub use verify::{jacobi_residual, verify_poisson, PoissonFailure, PoissonReport};
