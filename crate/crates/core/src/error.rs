use thiserror::Error;

use crate::shift::{Symbol, Word};

/// Errors produced by the library.
///
/// Validation failures carry enough context (state, word, line) to be shown
/// to a user as a diagnosis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("matrix is not essential: {kind} {state} is zero")]
    NotEssential { kind: &'static str, state: Symbol },
    #[error("matrix is not irreducible: state {to} is unreachable from state {from}")]
    NotIrreducible { from: Symbol, to: Symbol },
    #[error("matrix fails condition (I): it is a permutation matrix (state {state} has a single follower)")]
    ConditionIFails { state: Symbol },

    #[error("word {0} is not admissible")]
    InadmissibleWord(Word),
    #[error("operands are defined over different transition matrices")]
    MatrixMismatch,

    #[error("bad table domain: {0}")]
    BadDomain(String),
    #[error(
        "row mismatch at {domain}: image {image} ends in a state with a different follower set"
    )]
    RowMismatch { domain: Word, image: Word },
    #[error("images overlap: {first} and {second}")]
    ImagesOverlap { first: Word, second: Word },
    #[error("images do not cover the shift space (first uncovered cylinder {0})")]
    ImagesDontCover(Word),

    #[error("clopen set is not invariant under the map")]
    NotInvariant,
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("sets are not disjoint: {0}")]
    NotDisjoint(&'static str),
    #[error("map does not carry the first set onto the second")]
    NotAWitness,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
