use thiserror::Error;

/// Errors produced by the laboratory's exact computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u64,
    },

    #[error("invalid gap: {0}")]
    InvalidGap(String),

    #[error("gap is not homogeneous: gcd of differences does not divide offset {0}")]
    NotHomogeneous(i128),

    #[error("dilation leaves an empty interval in dimension {0}")]
    EmptyInterval(usize),

    #[error("value {0} is not an element of the gap")]
    NotInGap(i128),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate point cloud: affine dimension {found} is below {expected}")]
    Degenerate { expected: usize, found: usize },

    #[error("randomized rounding did not meet the deviation bound within {0} attempts")]
    RetryLimit(u32),

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap_check(what: &'static str, needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::CapExceeded { what, needed, cap })
    } else {
        Ok(())
    }
}
