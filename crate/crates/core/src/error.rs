use thiserror::Error;

use crate::instance::COORD_BOUND;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("target set T is empty")]
    EmptyTarget,

    #[error("source set S is empty")]
    EmptySource,

    #[error(
        "infeasible cardinality: |S| = {source_len} < |T| = {target_len}; \
         every target needs at least one source (swap the roles of S and T to solve the reverse direction)"
    )]
    InfeasibleCardinality {
        source_len: usize,
        target_len: usize,
    },

    #[error("coordinate {value} is outside the supported range [-{bound}, {bound})", bound = COORD_BOUND)]
    RangeExceeded { value: i64 },

    #[error("{which} coordinates are not sorted (position {position})")]
    UnsortedInput {
        which: &'static str,
        position: usize,
    },

    #[error("one-to-one matching needs |S| = |T|, got {source_len} and {target_len}")]
    CardinalityMismatch {
        source_len: usize,
        target_len: usize,
    },

    #[error("|S| = |T|, no points need to be removed")]
    NoRemovalNeeded,

    #[error("no source point has height {height}")]
    MissingHeightLevel { height: usize },

    #[error("instance with {points} points exceeds the oracle guard of {guard}")]
    InstanceTooLarge { points: usize, guard: usize },

    #[error("source point {s_index} has height {height}, outside 1..={delta}")]
    HeightOutOfRange {
        s_index: usize,
        height: i64,
        delta: usize,
    },

    #[error("malformed removal set: {0}")]
    MalformedRemovalSet(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("bad symbol {symbol:?} at position {position} (expected 'x' or '.')")]
    BadSymbol { symbol: char, position: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors describing an instance that has no assignment at all.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::EmptyTarget | Error::EmptySource | Error::InfeasibleCardinality { .. }
        )
    }

    /// True for conditions that can only come from an implementation bug.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::MissingHeightLevel { .. })
    }
}
