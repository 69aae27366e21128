use thiserror::Error;

/// Errors raised by the library. Every variant corresponds to a rejected
/// input; none of them indicates a bug except [`Error::Internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid blowup site {site} for tuple of length {len}")]
    InvalidSite { site: String, len: usize },

    #[error("position {index} of {tuple} is not a blowdown site")]
    NotBlowdownSite { tuple: String, index: usize },

    #[error("{0} is not a zero-representing admissible tuple")]
    NotInZk(String),

    #[error("k = {k} exceeds the enumeration limit {limit} (raise it with RBD_MAX_K)")]
    LimitExceeded { k: usize, limit: usize },

    #[error("distinguished diagonal d_{0} is not in the triangulation")]
    MissingDiagonal(usize),

    #[error("vertex {0} is not an ear of the triangulation")]
    NotAnEar(usize),

    #[error("{tuple} is not a minimal filling for HJ expansion {hj}")]
    NotAFilling { tuple: String, hj: String },

    #[error("invalid interior-1 selector: {0}")]
    InvalidSelector(String),

    #[error("lantern substitution needs a positive twist along {0}, which is absent")]
    SubstitutionCurveMissing(String),

    #[error("invalid flip quadrilateral ({a},{t},{b}) for k = {k}")]
    InvalidQuad { a: usize, t: usize, b: usize, k: usize },

    #[error("form is not negative definite")]
    NotNegativeDefinite,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn fmt_tuple<T: std::fmt::Display>(entries: &[T]) -> String {
    let body: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
    format!("({})", body.join(","))
}
