use thiserror::Error;

/// Errors produced by the `ehrenfest` library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected (r={expected_r}, n={expected_n}), got (r={r}, n={n})")]
    DimensionMismatch {
        expected_r: usize,
        expected_n: usize,
        r: usize,
        n: usize,
    },

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{what} count {count} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: u128,
        cap: usize,
    },

    #[error("reconstructed distribution has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("reconstructed mass {mass:e} at type {composition} is negative")]
    NegativeMass { mass: f64, composition: String },

    #[error("distribution is not constant on configurations of type {0}")]
    NotTypeInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(expected_r: usize, expected_n: usize, r: usize, n: usize) -> Result<()> {
    if expected_r == r && expected_n == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected_r,
            expected_n,
            r,
            n,
        })
    }
}
