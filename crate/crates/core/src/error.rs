use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precision of {bits} bits is below the 64-bit minimum")]
    PrecisionTooLow { bits: u32 },

    #[error("tolerance {tol:e} must be positive and finite")]
    InvalidTolerance { tol: f64 },

    #[error("tolerance {tol:e} is finer than a {bits}-bit mantissa supports (floor {floor:e})")]
    ToleranceTooFine { tol: f64, bits: u32, floor: f64 },

    #[error("non-finite complex argument ({re}, {im})")]
    NonFinite { re: f64, im: f64 },

    #[error("pole at {at}")]
    Pole { at: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range ({reason})")]
    OutOfRange { index: usize, reason: String },

    #[error("table too short: need index {needed}, have {available}")]
    TableTooShort { needed: usize, available: usize },

    #[error("cutoff {0} is not an integer >= 10")]
    BadCutoff(String),

    #[error("divergence: |(s-1)/s| = {ratio} >= 1")]
    Divergence { ratio: f64 },

    #[error("coefficient grid exhausted after {terms} terms; achieved tail bound {achieved:e} > {requested:e}")]
    GridExhausted {
        terms: usize,
        achieved: f64,
        requested: f64,
    },

    #[error("could not reach bracket {target:e}; best achieved {achieved:e} ({what})")]
    PrecisionInsufficient {
        what: String,
        achieved: f64,
        target: f64,
    },

    #[error("stieltjes certification failed at n = {n}: |em - integral| = {diff:e} > {allowed:e}")]
    Certification { n: usize, diff: f64, allowed: f64 },

    #[error("Bessel inequality violated: l2 error {value:e} below -{slack:e}")]
    NegativeL2Error { value: f64, slack: f64 },

    #[error("integral does not converge: {0}")]
    Divergent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
