use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped so that front ends can map them onto exit codes:
/// input errors, smoothness failures and enumeration caps are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse Cartan type {0:?} (expected e.g. \"A5\", \"E7\")")]
    InvalidType(String),

    #[error("type {family}{rank} is not admissible ({reason})")]
    InadmissibleRank {
        family: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("unknown node {name:?}: valid nodes are s1..s{rank}")]
    UnknownNode { name: String, rank: usize },

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("{what} has {size} elements, above the enumeration cap of {cap}")]
    CapExceeded { what: String, size: u128, cap: u64 },

    #[error("element {0} is not a minimal coset representative")]
    NotInQuotient(String),

    #[error("element {0} does not belong to S^J")]
    NotInDescentSet(String),

    #[error("delta(s{node}) is undefined: s{node} is attached to {components} components of J")]
    DeltaUndefined { node: usize, components: usize },

    #[error("J = {subset} is not combinatorially smooth: {reasons}")]
    NotSmooth { subset: String, reasons: String },

    #[error("J must be a proper subset of S")]
    NotProper,

    #[error("expected |S \\ J| = 2, found {0}")]
    WrongComplementSize(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("oracle scale limit: {0}")]
    OracleScale(String),

    #[error("no exponents (a, b) fit the orbit sizes {0}")]
    NoFit(String),

    #[error("orbit sizes {0} do not determine (a, b) uniquely")]
    AmbiguousFit(String),

    #[error("orbit partition check failed: {0}")]
    PartitionMismatch(String),

    #[error("malformed polynomial JSON: {0}")]
    PolyFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
