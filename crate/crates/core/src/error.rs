use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rank {rank} for series {series}")]
    InvalidRank { series: char, rank: usize },

    #[error("weight has {got} coordinates, root datum has rank {expected}")]
    InvalidWeight { expected: usize, got: usize },

    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("dimension {required} exceeds the limit {limit} ({what})")]
    Resource {
        what: &'static str,
        required: usize,
        limit: usize,
    },

    #[error("boundary mismatch: {left} points glued to {right} points")]
    BoundaryMismatch { left: usize, right: usize },

    #[error("power mismatch: cannot compose {outer_domain} <- {inner_codomain}")]
    PowerMismatch {
        outer_domain: usize,
        inner_codomain: usize,
    },

    #[error("scalar {value} is not representable in the {backend} backend")]
    Unrepresentable {
        backend: &'static str,
        value: String,
    },

    #[error("operator is singular")]
    Singular,

    #[error("invalid configuration: {0}")]
    Config(String),

    /// A result that the algebra guarantees (a one-dimensional hom space, a
    /// scalar composite) came out otherwise.
    #[error("internal consistency failure in {module}: {detail}")]
    Inconsistent {
        module: &'static str,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
