use thiserror::Error;

/// Everything that can go wrong across the engine.
///
/// The variants mirror the failure modes of the individual operations:
/// input validation, shape mismatches between a requested formula and the
/// supplied data, and exhaustion of the certified-precision schedule.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The recurrence has a_m = 0; trailing coefficient must be nonzero.
    #[error("trailing coefficient a_m must be nonzero")]
    ZeroTrailingCoefficient,

    /// All initial terms vanish, so the sequence is identically zero.
    #[error("at least one initial term must be nonzero")]
    AllInitialTermsZero,

    /// Coefficient and initial-term lists disagree in length, or are empty.
    #[error("coefficients and initial terms must be non-empty lists of equal length")]
    LengthMismatch,

    /// A bound formula was invoked with an order it does not cover.
    #[error("order m = {m} is outside the range of the requested bound")]
    OrderTooSmall { m: usize },

    /// The order of the data does not match the requested operation.
    #[error("order mismatch: expected m = {expected}, got m = {got}")]
    OrderMismatch { expected: usize, got: usize },

    /// The separation-bound case does not fit the supplied degree.
    #[error("case/degree mismatch: case `{case}` does not apply at m = {m}")]
    CaseDegreeMismatch { case: &'static str, m: usize },

    /// A polynomial of the shape X^m, for which root-modulus bounds are empty.
    #[error("polynomial has no nonzero coefficient below the leading one")]
    DegenerateShape,

    /// The operation requires f(0) != 0 but the polynomial has a zero root.
    #[error("polynomial has a zero root; operation requires f(0) != 0")]
    ZeroRoot,

    /// The operation requires a squarefree characteristic polynomial.
    #[error("characteristic polynomial has repeated roots")]
    NotSimple,

    /// The sharp cutoff requires a unique root of strictly maximal modulus.
    #[error("no dominant root: the maximal modulus is shared by several roots")]
    NoDominantRoot,

    /// The certified refinement hit the precision cap without separating.
    #[error("precision cap of {cap_bits} bits exhausted during certified refinement")]
    PrecisionExhausted { cap_bits: u32 },

    /// Malformed rational or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
