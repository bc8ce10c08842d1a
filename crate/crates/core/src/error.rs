use thiserror::Error;

/// Failures raised anywhere in the interpolation pipeline.
///
/// Numeric payloads are widened to `f64` so the error type stays independent of the scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PickError {
    #[error("interpolation problem has no nodes")]
    EmptyProblem,

    #[error("matrix size must be positive")]
    ZeroMatrixSize,

    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: String,
        found: String,
    },

    #[error("node {index} has modulus {modulus} >= 1")]
    NodeOutsideDisk { index: usize, modulus: f64 },

    #[error("nodes {first} and {second} coincide (separation {separation})")]
    DuplicateNode {
        first: usize,
        second: usize,
        separation: f64,
    },

    #[error("evaluation point ({re}, {im}) is not inside the unit disk")]
    PointOutsideDisk { re: f64, im: f64 },

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("eigensolver did not converge")]
    EigenFailure,

    #[error("no solution exists: Pick matrix has minimum eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    Infeasible { min_eigenvalue: f64, tolerance: f64 },

    #[error("first node must be 0; normalize the problem first")]
    NotNormalized,

    #[error("isometry residual {residual:e} exceeds tolerance {tolerance:e}")]
    IsometryResidual { residual: f64, tolerance: f64 },

    #[error("not a contraction: operator norm {norm}{}", at_point(.at))]
    NotAContraction { norm: f64, at: Option<(f64, f64)> },

    #[error("parameter dimension {found} does not match defect dimension {expected}")]
    ParameterDimension { expected: usize, found: usize },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
}

fn at_point(at: &Option<(f64, f64)>) -> String {
    match at {
        Some((re, im)) => format!(" at z = ({re}, {im})"),
        None => String::new(),
    }
}

pub type Result<T, E = PickError> = std::result::Result<T, E>;
