//! Exact enumeration of permutation classes through monotone grid classes,
//! regular encodings and rational generating functions.

pub mod automata;
pub mod classes;
pub mod enumerate;
pub mod error;
pub mod grid;
pub mod perm;
pub mod ratfun;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use ratfun::{Polynomial, RationalFunction};
