//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordParseError {
    #[error("bad exponent in token {0:?}")]
    BadExponent(String),
    #[error("empty generator name in token {0:?}")]
    EmptyGenerator(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("edge {edge:?} occurs {count} times across all boundary words, need exactly 2")]
    MergeOccurrenceCount { edge: String, count: usize },
    #[error("both occurrences of edge {edge:?} lie in cell {cell:?}")]
    MergeSameCell { edge: String, cell: String },
    #[error("relator {index} is empty")]
    EmptyRelator { index: usize },
    #[error("nonpositive Baumslag-Solitar parameter")]
    NonpositiveParameter,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("complex is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("invalid spanning tree: {reason}")]
    InvalidTree { reason: String },
    #[error("generator {0:?} is not declared")]
    UnknownGenerator(String),
    #[error("generator {0:?} already exists")]
    DuplicateGenerator(String),
    #[error("relator index {0} out of range")]
    RelatorIndex(usize),
    #[error("relator {index} contains {count} occurrences of {gen:?}, need exactly 1")]
    OccurrenceCount { gen: String, index: usize, count: usize },
    #[error("certificate does not prove the target word")]
    CertificateRejected,
    #[error("certificate factor references relator {0}, which is being removed")]
    CertificateSelfReference(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RsError {
    #[error("generator {0:?} has no assigned residue")]
    MissingImage(String),
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("residue {residue} of designated generator {gen:?} is not a unit mod {modulus}")]
    NotAUnit { gen: String, residue: usize, modulus: usize },
    #[error("relator {index} has exponent-residue sum {sum} != 0 mod {modulus}")]
    RelatorResidue { index: usize, sum: usize, modulus: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoveringError {
    #[error("cell map is absent; derive it first")]
    IncompleteMap,
    #[error("vertex {0:?} has no image")]
    MissingVertexImage(String),
    #[error("edge {0:?} has no image")]
    MissingEdgeImage(String),
    #[error("edge map does not commute with endpoints at edge {0:?}")]
    EndpointMismatch(String),
    #[error("no target cell matches the mapped boundary of cell {0:?}")]
    NoMatch(String),
    #[error("mapped boundary of cell {cell:?} matches {count} distinct target cells")]
    Ambiguous { cell: String, count: usize },
    #[error("voltage violates the boundary relation of cell {0:?}")]
    CellRelation(String),
    #[error("permutation on edge {edge:?} has length {len}, expected {sheets}")]
    PermutationLength { edge: String, len: usize, sheets: usize },
    #[error("empty height range")]
    EmptyHeightRange,
}
