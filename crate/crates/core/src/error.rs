use thiserror::Error;

use crate::model::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} {value} is out of range (must be below {bound})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("a matching needs two distinct blocks, got ({0}, {0})")]
    SameBlock(usize),

    #[error("block order is not a permutation of 0..{0}")]
    NotPermutation(usize),

    #[error("edge {0} occurs more than once")]
    RepeatedEdge(Edge),

    #[error("offset difference {difference} is not coprime to {modulus}")]
    NotCoprime { difference: usize, modulus: usize },

    #[error("vertex map is not a bijection on 0..{0}")]
    NotBijection(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(
        "r = {r} is not constructed for n = 8k (k = {k}, t = {t}): odd r in 3..=2k-1 \
         is outside the implemented routes (n = 8k gap)"
    )]
    Unsupported { k: usize, t: usize, r: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A construction step produced something other than what it promised.
    #[error("internal construction failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
