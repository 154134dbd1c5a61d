use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("axis {0} out of range, expected 1, 2 or 3")]
    AxisOutOfRange(usize),
    #[error("expected a purely vectorial quaternion, scalar part is {0}")]
    NotVectorial(String),
    #[error("{0} must be nonzero")]
    ZeroDivisor(&'static str),
    #[error("no rational square root of {0} in exact mode")]
    InexactSqrt(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("polarization is not transverse to the propagation direction")]
    NonTransverse,
    #[error("propagation direction must be a real unit vector")]
    BadDirection,
    #[error("grid: {0}")]
    Grid(String),
    #[error("matrix is singular: {0}")]
    Singular(&'static str),
    #[error("reflection mask left in conjugated operator: {0}")]
    ReflectionLeftover(String),
    #[error("gamma reconstruction: {0}")]
    Reconstruction(String),
    #[error("dispersion condition kappa^2 = alpha^2 violated (residual {0})")]
    DispersionMismatch(f64),
    #[error("fields do not solve the time-harmonic Maxwell system (residual {0})")]
    NotMaxwellSolution(f64),
    #[error("literal: {0}")]
    Literal(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("config: {0}")]
    Config(String),
}
