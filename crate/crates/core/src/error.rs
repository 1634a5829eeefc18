use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix must have at least one row")]
    EmptyMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("asymmetric input: |a[{row}][{col}] - a[{col}][{row}]| = {difference:e}")]
    AsymmetricInput {
        row: usize,
        col: usize,
        difference: f64,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix of dimension {n} is too small for this operation")]
    MatrixTooSmall { n: usize },
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    ConvergenceFailure { iterations: usize },
    #[error(
        "degenerate eigenvalue at index {index}: gap {gap:e} is within tolerance {tolerance:e}"
    )]
    DegenerateEigenvalue {
        index: usize,
        gap: f64,
        tolerance: f64,
    },
    #[error("non-finite intermediate product for component ({i}, {j})")]
    NonFiniteIntermediate { i: usize, j: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("sign recovery failed: residual {residual:e} exceeds {tolerance:e}")]
    SignRecoveryFailure { residual: f64, tolerance: f64 },
    #[error("variant {variant} disagrees with {reference} at n={n}: {found:e} vs {expected:e}")]
    VariantDisagreement {
        n: usize,
        variant: String,
        reference: String,
        expected: f64,
        found: f64,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("report has no oracle-full reference timings")]
    MissingReference,
    #[error("matrix dimension {n} exceeds oracle cap {cap}")]
    OracleCapExceeded { n: usize, cap: usize },
}
