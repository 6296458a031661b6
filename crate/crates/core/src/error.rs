use thiserror::Error;

/// Everything that can go wrong while building or analysing a structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("not associative: ({0}{1}){2} != {0}({1}{2})")]
    NonAssociative(String, String, String),
    #[error("`{0}` is not a two-sided identity")]
    NoIdentity(String),
    #[error("`{0}` is not idempotent")]
    NotIdempotent(String),
    #[error("map is not multiplicative at ({0}, {1})")]
    NotMultiplicative(String, String),
    #[error("map does not preserve the identity")]
    NotMonoidHom,
    #[error("homomorphisms do not share source and target")]
    MismatchedHoms,
    #[error("index {index} out of range for carrier of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("carrier of size {0} exceeds the supported bound {1}")]
    CarrierTooLarge(usize, usize),
    #[error("action law fails: {0}")]
    InvalidAction(String),
    #[error("map is not equivariant at ({0}, {1})")]
    NotEquivariant(usize, usize),
    #[error("input M-set is not continuous (element {0}, index {1})")]
    NotContinuousInput(usize, usize),
    #[error("not a right congruence: {0}")]
    NotRightCongruence(String),
    #[error("enumeration cap exceeded after {0} items")]
    CapExceeded(usize),
    #[error("filter is empty")]
    EmptyFilter,
    #[error("filter is not upward closed: {0} is in but its coarsening {1} is not")]
    FilterNotUpwardClosed(String, String),
    #[error("filter is not directed: {0} and {1} have no common refinement inside")]
    FilterNotDirected(String, String),
    #[error("filter is not closed under inverse image by `{0}` (starting from {1})")]
    FilterNotEquivariant(String, String),
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    #[error("congruence {0} is not a member of the filter")]
    NotInFilter(String),
    #[error("multiplication is not continuous")]
    NotTopologicalMonoid,
    #[error("pullback of {0} lies outside the source filter")]
    PullbackOutsideFilter(String),
    #[error("map is not continuous: preimage of open {0} is not open")]
    NotContinuous(String),
    #[error("topology is not T0 with a clopen action base")]
    NotPowderInput,
    #[error("monoid has no zero element")]
    NoZeroElement,
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
