use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("normal vector has zero Lorentz norm")]
    NullNormal,
    #[error("negative discriminant: no real curvature solves the quadruple relation")]
    NegativeDiscriminant,
    #[error("radius must be positive")]
    ZeroRadius,
    #[error("invalid triple ({0}): need 0 <= a <= b <= c and b > 0")]
    InvalidTriple(String),
    #[error("separation matrix {0}")]
    BadForm(String),
    #[error("series diverges for t = {0} (need t > 1/2)")]
    DivergentTail(f64),
    #[error("triple set exceeded the budget of {0} entries")]
    BudgetExceeded(usize),
    #[error("no sign change of series - 1 found in (1/2, 4)")]
    NoBracket,
    #[error("root finder stalled after {0} iterations")]
    Stagnation(usize),
    #[error("need at least two distinct heights to fit")]
    DegenerateData,
    #[error("orbit enumeration exceeded the memory budget of {0} vectors")]
    MemoryBudget(usize),
    #[error("integer overflow while applying a generator")]
    Overflow,
    #[error("vector is not a circle: inversive norm {0}")]
    NotACircle(f64),
    #[error("expansion did not reach a fixpoint within {0} levels")]
    NonTermination(usize),
    #[error("gap check needs kappa > 1")]
    KappaTooSmall,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("bad cache file: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Failures of individual scalar operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("square root leaves Q(sqrt 2)")]
    NonRepresentable,
    #[error("square root of a negative number")]
    NegativeSqrt,
}

pub type Result<T> = std::result::Result<T, Error>;
