//! Exact computations in the continuous full group `Γ_A` of a one-sided
//! topological Markov shift `(X_A, σ_A)`.
//!
//! Elements of `Γ_A` are finite prefix-exchange tables ([`TableMap`]); clopen
//! subsets of `X_A` are finite unions of cylinders ([`ClopenSet`]). On top of
//! these the crate provides the group operations, supports and fixed sets,
//! witness-producing constructions of involutions and transports, and the
//! pointed Bowen–Franks invariant that classifies full groups.

pub mod construct;
mod error;
pub mod group;
pub mod invariant;
pub mod report;
pub mod shift;

pub use error::{Error, Result};
pub use group::TableMap;
pub use shift::{ClopenSet, EpPoint, Symbol, TransitionMatrix, Word};
