use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NotHermitian: symmetry residual {residual:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { residual: f64, tolerance: f64 },
    #[error("DimensionCap: dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("NotSquare: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("NotPowerOfTwo: length {0}")]
    NotPowerOfTwo(usize),
    #[error("EmptyInput: zero-length vector")]
    EmptyInput,
    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("NegativeEigenvalue: {0:e}")]
    NegativeEigenvalue(f64),
    #[error("BadParams: {0}")]
    BadParams(String),
    #[error("OddN: majority requires even n, got {0}")]
    OddN(usize),
    #[error("IndexOutOfRange: index {index} with domain size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("WrongFamily: expected {expected}, got {got}")]
    WrongFamily { expected: &'static str, got: String },
    #[error("SingularQueryMatrix: smallest Gram eigenvalue {0:e} is inside the zero band")]
    SingularQueryMatrix(f64),
    #[error("NonConstantDiagonal: optimal measurement diagonal spread {0:e}")]
    NonConstantDiagonal(f64),
    #[error("ZeroAmplitude: initial amplitude {0:e} is not positive")]
    ZeroAmplitude(f64),
    #[error("EmptyMarkedSet")]
    EmptyMarkedSet,
    #[error("ParseError: line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("IoError: {0}")]
    Io(String),
}

impl Error {
    /// Short variant name, as printed on the CLI diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::DimensionCap { .. } => "DimensionCap",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotPowerOfTwo(_) => "NotPowerOfTwo",
            Error::EmptyInput => "EmptyInput",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NegativeEigenvalue(_) => "NegativeEigenvalue",
            Error::BadParams(_) => "BadParams",
            Error::OddN(_) => "OddN",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::WrongFamily { .. } => "WrongFamily",
            Error::SingularQueryMatrix(_) => "SingularQueryMatrix",
            Error::NonConstantDiagonal(_) => "NonConstantDiagonal",
            Error::ZeroAmplitude(_) => "ZeroAmplitude",
            Error::EmptyMarkedSet => "EmptyMarkedSet",
            Error::Parse { .. } => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Non-fatal conditions attached to results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// Some eigenvalue fell inside the zero band and was mapped to `+1` by `sign`.
    ZeroBand { count: usize },
    /// The square-root measurement does not have constant diagonal, so its
    /// optimality among constant-diagonal measurements does not apply.
    NonConstantDiagonal { spread: f64 },
    /// A cyclic family whose query matrix is not symmetric; the group `sign`
    /// construction was skipped in favour of the Gram square root.
    AsymmetricCirculant,
}
