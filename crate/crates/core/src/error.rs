use thiserror::Error;

/// Failure classes shared by every module.
///
/// The CLI maps these onto exit codes via [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid algebra `{0}`")]
    InvalidAlgebra(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weight {weight:?} is outside the level-{level} alcove")]
    OutsideAlcove { weight: Vec<i64>, level: u32 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("Weyl group order {order} exceeds the configured cap {cap}")]
    WeylCapExceeded { order: u64, cap: u64 },
    #[error("weight count exceeds the configured cap {cap}")]
    SizeCapExceeded { cap: usize },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("numerical failure in {context}: residual {residual:e}")]
    Numerical { context: &'static str, residual: f64 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// 3 validation, 4 numerical, 5 resource. Usage errors (2) never reach here.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidAlgebra(_)
            | Error::RankMismatch { .. }
            | Error::NotDominant(_)
            | Error::OutsideAlcove { .. }
            | Error::Invalid(_) => 3,
            Error::Numerical { .. } | Error::Internal(_) => 4,
            Error::WeylCapExceeded { .. } | Error::SizeCapExceeded { .. } | Error::Overflow(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
