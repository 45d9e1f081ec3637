use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown spatial mode `{0}`")]
    UnknownMode(String),
    #[error("duplicate spatial mode `{0}`")]
    DuplicateMode(String),
    #[error("invalid mode label `{0}`")]
    InvalidModeLabel(String),
    #[error("state has no nonzero amplitude")]
    ZeroState,
    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("phase factor has modulus {0}, expected 1")]
    NotUnimodular(f64),
    #[error("a two-slot element needs two distinct slots")]
    CoincidentSlots,
    #[error("states or layouts are defined over different mode sets")]
    ModeSetMismatch,
    #[error("split coefficients are not normalized: |t|^2+|s|^2 = {0}")]
    UnnormalizedSplit(f64),
    #[error("control amplitudes are not normalized: |alpha|^2+|beta|^2 = {0}")]
    UnnormalizedControl(f64),
    #[error("invalid imperfection parameter: {0}")]
    InvalidImperfection(String),
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("logical tensor carries leakage {0:.3e}; only leakage-free tensors can be encoded")]
    LeakyTensor(f64),
    #[error("logical tensor is not normalized: norm^2 = {0}")]
    UnnormalizedTensor(f64),
    #[error("quadrature needs at least {min} points per axis, got {got}")]
    QuadratureTooCoarse { min: usize, got: usize },
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot parse number `{0}`")]
    ParseNumber(String),
    #[error("circuit file line {line}: {msg}")]
    CircuitSyntax { line: usize, msg: String },
    #[error("circuit: {0}")]
    Circuit(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
