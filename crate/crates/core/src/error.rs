use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector must have at least one coordinate")]
    EmptyVector,

    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("basis vectors {i} and {j} are not orthonormal (inner product {inner})")]
    NotOrthonormal { i: usize, j: usize, inner: f64 },

    #[error("a wedge needs at least one generator")]
    NoGenerators,

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("polar is not pointed here: generators span {rank} of {dim} dimensions")]
    PolarNotPointed { rank: usize, dim: usize },

    #[error("generator {index} does not lie in the given subspace (distance {distance:.3e})")]
    OutsideSubspace { index: usize, distance: f64 },

    #[error("scale limit exceeded: {what} = {found}, limit {limit}")]
    ScaleLimit {
        what: &'static str,
        found: usize,
        limit: usize,
    },

    #[error(
        "no face passed the projection certificate (best candidate: max inner {max_inner:.3e}, \
         complementarity {complementarity:.3e})"
    )]
    NoPassingFace { max_inner: f64, complementarity: f64 },

    #[error("monotone wedge needs m >= 2, got {0}")]
    MonotoneDimension(usize),

    #[error("unknown projection method `{0}`")]
    UnknownMethod(String),

    #[error("method `{method}` cannot be used here: {reason}")]
    MethodNotApplicable { method: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
