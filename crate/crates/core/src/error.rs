use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{a} does not dominate {b}")]
    NotDominating { a: String, b: String },
    #[error("not a flow of the polytope: {0}")]
    NotAFlow(String),
    #[error("work budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("independent computations disagree: {0}")]
    Mismatch(String),
    #[error("samples are not polynomial of degree at most {max_degree}")]
    NotPolynomial { max_degree: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}
