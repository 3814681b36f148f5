//! Crate-wide error type.

use crate::arith::Int;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polytope is unbounded; witness recession ray {witness:?}")]
    Unbounded { witness: Vec<Int> },

    #[error("polytope is not full-dimensional (dimension {dim} in rank {rank})")]
    NotFullDimensional { dim: usize, rank: usize },

    #[error("vector {0:?} lies outside the support of the fan")]
    OutsideSupport(Vec<Int>),

    #[error("vector {0:?} is already a ray of the fan")]
    AlreadyARay(Vec<Int>),

    #[error("fan is not complete")]
    NotComplete,

    #[error("fan is not simplicial")]
    NotSimplicial,

    #[error("class group has torsion; orders {orders:?}")]
    TorsionClassGroup { orders: Vec<Int> },

    #[error("divisor is not Q-Cartier")]
    NotQCartier,

    #[error("divisor is not Cartier")]
    NotCartier,

    #[error("divisor is not ample")]
    NotAmple,

    #[error("divisor is not big: section polytope is not full-dimensional")]
    NotBig,

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("class data unavailable: variety was built without a class group presentation")]
    NoClassData,

    #[error("Picard rank is {0}, need at least {1}")]
    PicardRankTooLow(usize, usize),

    #[error("no admissible divisor found within search radius {0}")]
    SearchExhausted(i64),

    #[error("inadmissible bundle divisor: {0}")]
    InadmissibleL(String),

    #[error("check failed ({proposition}): {detail}")]
    CheckFailed { proposition: String, detail: String },

    #[error("unknown catalog entry \"{0}\"")]
    UnknownCatalogEntry(String),

    #[error("json: {0}")]
    Json(String),
}
