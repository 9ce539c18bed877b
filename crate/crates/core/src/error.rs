use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Γ(x) has a pole at a non-positive integer.
    #[error("gamma pole at x = {0}")]
    Pole(f64),
    /// The result does not fit in an `f64`.
    #[error("result overflows the floating range at x = {0}")]
    Overflow(f64),
    /// An argument is outside the documented validity domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series ran out of terms before meeting its tolerance.
    #[error("budget exhausted after {terms} terms (partial value {partial})")]
    BudgetExhausted { partial: f64, terms: usize },
    /// A term generator produced NaN or infinity.
    #[error("non-finite term at index {0}")]
    NonFinite(i64),
    /// A symbolic operation got a term of the wrong parity.
    #[error("parity error: {0}")]
    Parity(String),
    /// A symbolic result did not reach the expected closed form.
    #[error("structural error: {0}")]
    Structural(String),
    /// No catalog entry with this id.
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
