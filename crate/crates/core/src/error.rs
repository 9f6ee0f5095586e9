use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: entry ({row}, {col}) differs from its transpose")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("ambient spaces differ: F_{p_left}^{n_left} vs F_{p_right}^{n_right}")]
    AmbientMismatch {
        p_left: u32,
        n_left: usize,
        p_right: u32,
        n_right: usize,
    },
    #[error("group is not elementary abelian of even rank: invariant factors {0:?}")]
    NotElementaryEvenRank(Vec<String>),
    #[error("expected a 3-dimensional subspace of F_3^6, got dimension {dim} in F_{p}^{n}")]
    NotLagrangianShape { p: u32, n: usize, dim: usize },
    #[error("invalid grope data: {0}")]
    InvalidGrope(String),
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),
    #[error("linking form is degenerate")]
    Degenerate,
    #[error("gram matrix is not well defined on the group: {0}")]
    IllDefinedForm(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
