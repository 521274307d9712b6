use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// `q^{1/2}` was needed but the context was built from `q` without a rational square root.
    #[error("q^(1/2) is not rational in this context (q = {q}); build the context from its root s")]
    HalfPowerUnavailable { q: String },

    /// A denominator factor vanished at summation or product index `k`.
    #[error("vanishing factor at index {k}: {what}")]
    VanishingFactor { k: usize, what: String },

    /// A basic hypergeometric series has no upper parameter of the form q^-n.
    #[error("series does not terminate: no upper parameter equals q^-n")]
    NonTerminating,

    /// A polynomial division that must be exact left a remainder.
    #[error("internal invariant violated: inexact division ({0})")]
    InexactDivision(String),

    /// The two closed-form branches disagree on the diagonal `n = r`.
    #[error("closed-form branches disagree at n = r = {n}")]
    BranchMismatch { n: usize },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
