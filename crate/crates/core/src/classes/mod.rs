//! The three enumerations: encodings and automata, inflation assembly,
//! inclusion-exclusion, and exhaustive checks of the structure results.

pub mod languages;
pub mod pipelines;
pub mod resources;
pub mod scheme;
pub mod verify;

pub use scheme::{Direction, EncodingScheme, Letter};
