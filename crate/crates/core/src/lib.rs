//! Pipe dreams, lattice congruences of the weak order and subword complexes.

pub mod cli;
pub mod coxeter;
pub mod error;
pub mod lattice;
pub mod pdlattice;
pub mod perm;
pub mod pipedream;
pub mod report;
pub mod subword;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use pipedream::PipeDream;
