use thiserror::Error;

/// Errors raised by body construction and by the probability / bound routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("degenerate body: {0}")]
    DegenerateBody(String),

    #[error("point ({x}, {y}) is not inside the body")]
    NotInside { x: f64, y: f64 },

    #[error("operation `{op}` does not support {variant} bodies")]
    UnsupportedVariant {
        op: &'static str,
        variant: &'static str,
    },

    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("body perimeter {perimeter} is not normalized to 2π")]
    NotNormalized { perimeter: f64 },

    #[error("interior parallel at r = {r} is empty")]
    EmptyErosion { r: f64 },

    #[error("body is a disk; h'(0) = 0 leaves no comparison window")]
    DiskInput,

    #[error("rejection sampler exceeded {attempts} attempts for one point")]
    RejectionExhausted { attempts: u32 },

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(name: &'static str, value: f64, expected: &'static str) -> Error {
    Error::OutOfRange {
        name,
        value,
        expected,
    }
}
