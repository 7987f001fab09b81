#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod hopf;
pub mod kahler;
pub mod linalg;
pub mod ore;
pub mod poisson;
pub mod rational;
pub mod rewrite;
pub mod supercore;
pub mod uea;

pub use error::{Error, Result};
pub use rational::Q;
