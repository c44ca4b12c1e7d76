//! The ambient one-sided Markov shift: transition matrices, words,
//! eventually periodic points and clopen sets.

mod clopen;
mod matrix;
mod point;
mod word;

pub(crate) use clopen::same_matrix;
pub use clopen::{BooleanOp, ClopenSet, Relation};
pub use matrix::TransitionMatrix;
pub use point::EpPoint;
pub use word::{Symbol, Word};
