//! Configurations with finite support, their superpositions, translations,
//! the cell-doubling embedding, and the finite ring truncation used by the
//! dense backends.

mod config;
mod dump;
mod ring;
mod sparse;

pub use config::{Alphabet, Configuration, Point, Symbol, EMPTY};
pub use ring::{Boundary, RingSpace, MAX_DENSE_DIM};
pub use sparse::{SparseState, PRUNE_THRESHOLD};
