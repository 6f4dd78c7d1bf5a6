use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Exact cyclotomic arithmetic is only implemented for prime `d`.
    #[error("exact arithmetic over Z[ω] requires prime d, got d = {0}")]
    CompositeOrder(u32),

    #[error("mismatched orders of ω: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("cyclotomic coefficient overflow")]
    Overflow,

    #[error("{what} is {size}, which exceeds the limit {limit}; {hint}")]
    LimitExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
        hint: &'static str,
    },

    /// Inverse transform produced a value not divisible by `D` in Z[ω].
    #[error("inverse transform is not divisible by {0}: input is not the spectrum of an integral function")]
    NotDivisible(u64),

    #[error("coefficient vector is not a homogeneous Bell polynomial: {0}")]
    NotInFamily(String),

    #[error("operation requires d >= 3 (got d = {0})")]
    OrderTooSmall(u32),

    #[error("invalid probability weights: {0}")]
    InvalidWeights(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
