use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible bases: {0} vs {1}")]
    IncompatibleBases(String, String),
    #[error("invalid hyperplane action: {0}")]
    InvalidHyperplaneAction(String),
    #[error("not a divisor-like series: constant term is {0}")]
    NotDivisorLike(String),
    #[error("invalid degree {0}: hypersurface degrees must be at least 1")]
    InvalidDegree(i64),
    #[error("invalid center: {0}")]
    InvalidCenter(String),
    #[error("no resolving model available: {0}")]
    NoResolvingModel(String),
    #[error("no components")]
    NoComponents,
    #[error("too many components: {got} (at most {max})")]
    TooManyComponents { got: usize, max: usize },
    #[error("recursion not valid below stabilization: r = {r} must exceed dim M = {n}")]
    RecursionBelowStabilization { r: usize, n: usize },
    #[error("recursion regime undefined: r = {r} is below dim M = {n}")]
    RecursionRegimeUndefined { r: usize, n: usize },
    #[error("requires exactly dim M components: expected {expected}, got {got}")]
    WrongComponentCount { expected: usize, got: usize },
    #[error("class does not fit: {0}")]
    ClassDoesNotFit(String),
    #[error("non-integral value {0} where an integer was required")]
    NonIntegral(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
