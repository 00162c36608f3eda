use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("trace {trace} differs from 1")]
    TraceNotUnit { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("expectations lie outside the Bloch ball (|r| = {norm})")]
    OutsideBlochBall { norm: f64 },

    #[error("unphysical expectations: reconstructed state has eigenvalue {min_eigenvalue:.3e}")]
    Unphysical { min_eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("eigen-decomposition did not converge after {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("tolerance not reached after {subdivisions} subdivisions (estimate {estimate}, error {error:.3e})")]
    ToleranceNotReached {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("maximum lies on the domain boundary at {at}")]
    BoundaryMaximum { at: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("evaluation failed at {param}: {message}")]
    AtPoint { param: f64, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
