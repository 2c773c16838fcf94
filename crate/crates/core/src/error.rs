use thiserror::Error;

/// Errors raised by the approximation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PadeError {
    #[error("insufficient coefficients: need index {needed}, series has {available}")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("series is not normal at [{p}/{q}]: Hankel determinant vanishes")]
    NotNormal { p: usize, q: usize },

    #[error("evaluation point is a pole")]
    PoleAtPoint,

    #[error("series center is a singularity of the function")]
    SingularCenter,

    #[error("expansion center lies on a pole of the rational function")]
    CenterOnPole,

    #[error("denominator polynomial is zero")]
    ZeroDenominator,

    #[error("degree constraint violated: {0}")]
    Degree(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exact arithmetic required: {0}")]
    ExactRequired(&'static str),

    #[error("no admissible perturbation coefficient found after {0} halvings")]
    ConstructionFailed(usize),

    #[error("index family exhausted without an admissible pair")]
    Exhausted,

    #[error("invalid sample-set descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, PadeError>;
