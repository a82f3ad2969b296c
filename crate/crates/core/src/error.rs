use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("frame dimension {0} exceeds the supported maximum")]
    DimensionTooLarge(usize),
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("degree {p} out of range for dimension {n}")]
    DegreeOutOfRange { p: usize, n: usize },
    #[error("matrix is not symmetric (deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },
    #[error("curvature tensor violates {symmetry} (deviation {deviation:e})")]
    CurvatureSymmetry {
        symmetry: &'static str,
        deviation: f64,
    },
    #[error("jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
}
