use core::fmt;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid size must be even and at least 2.
    InvalidGrid(usize),
    /// A sample was NaN or infinite.
    NonFinite { index: usize },
    /// Two operands live on different grids.
    GridMismatch { left: usize, right: usize },
    /// Input was the zero function where a nonzero one is required.
    ZeroInput,
    /// Boundary-derivative stencils disagree, or an interior kink is not
    /// representable by the requested operation.
    NonSmooth { location: f64, disagreement: f64 },
    /// A spectral parameter must be strictly positive.
    NonPositiveLambda(f64),
    /// A tolerance or other configuration value is out of range.
    InvalidParameter(&'static str),
    /// A zero direction vector was supplied for a line subspace.
    DegenerateDirection,
    /// Spectral and evolution routines require hermitian `K`.
    NonHermitian { defect: f64 },
    /// Root scan did not find enough eigenvalues.
    BracketExhausted { found: usize, wanted: usize, scanned_to: f64 },
    /// `λ` fails the rank test.
    NotAnEigenvalue { lambda: f64, sigma_ratio: f64 },
    /// Initial data violate the moment constraints.
    Infeasible { residual: f64 },
    /// Cholesky factorization hit a non-positive pivot.
    NotPositiveDefinite { pivot: usize, value: f64 },
    /// Singular linear system.
    Singular { pivot: usize },
    /// Comparison hypotheses (nested subspaces, ordered matrices) fail.
    ComparisonHypothesis(&'static str),
    /// Cascade checks need `t > 0`.
    NeedsPositiveTime,
    /// The operation needs closed-form modal data that the trace lacks.
    ClosedFormRequired,
    /// Array lengths disagree.
    LengthMismatch { expected: usize, got: usize },
    /// Iterative method failed to converge.
    NoConvergence(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGrid(n) => write!(f, "grid size {n} must be even and >= 2"),
            Error::NonFinite { index } => write!(f, "non-finite sample at index {index}"),
            Error::GridMismatch { left, right } => {
                write!(f, "grid mismatch: {left} vs {right} subintervals")
            }
            Error::ZeroInput => write!(f, "input function is zero"),
            Error::NonSmooth {
                location,
                disagreement,
            } => write!(
                f,
                "non-smooth data near x = {location}: stencil disagreement {disagreement:e}"
            ),
            Error::NonPositiveLambda(l) => write!(f, "spectral parameter must be > 0, got {l}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DegenerateDirection => write!(f, "line direction must be nonzero"),
            Error::NonHermitian { defect } => write!(
                f,
                "K is not hermitian (max |K - K*| = {defect:e}); use the Galerkin oracle path"
            ),
            Error::BracketExhausted {
                found,
                wanted,
                scanned_to,
            } => write!(
                f,
                "found {found} of {wanted} eigenvalues scanning (0, {scanned_to}]"
            ),
            Error::NotAnEigenvalue {
                lambda,
                sigma_ratio,
            } => write!(
                f,
                "lambda = {lambda} is not an eigenvalue (sigma ratio {sigma_ratio:e})"
            ),
            Error::Infeasible { residual } => {
                write!(f, "initial data violate moment constraints (residual {residual:e})")
            }
            Error::NotPositiveDefinite { pivot, value } => {
                write!(f, "matrix not positive definite: pivot {pivot} = {value:e}")
            }
            Error::Singular { pivot } => write!(f, "singular matrix at pivot {pivot}"),
            Error::ComparisonHypothesis(what) => write!(f, "comparison hypothesis violated: {what}"),
            Error::NeedsPositiveTime => write!(f, "boundary cascade is only defined for t > 0"),
            Error::ClosedFormRequired => write!(f, "operation needs closed-form modal data"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::NoConvergence(what) => write!(f, "no convergence: {what}"),
        }
    }
}

impl core::error::Error for Error {}
