use thiserror::Error;

/// Errors raised by the kinematic, dexterity and synthesis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is out of reach: the leg radicand is negative")]
    OutOfReach,
    #[error("serial singularity on leg {axis}: link orthogonal to its prismatic axis")]
    SerialSingular { axis: usize },
    #[error("no direct kinematic solution for the given joint coordinates")]
    NoSolution,
    #[error("parallel singularity")]
    ParallelSingular,
    #[error("{what} = {value} is outside {domain}")]
    OutOfRange { what: &'static str, value: f64, domain: &'static str },
    #[error("invalid dexterity bound: {0}")]
    InvalidBound(String),
    #[error("singular configuration: {0}")]
    Singular(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn out_of_range<T: crate::Real>(what: &'static str, value: T, domain: &'static str) -> Error {
    Error::OutOfRange { what, value: value.to_f64_lossy(), domain }
}
