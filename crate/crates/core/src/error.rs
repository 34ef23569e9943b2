use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("conductor {limit} exceeded (requested {requested})")]
    ConductorTooLarge { requested: u64, limit: u32 },
    #[error("incompatible conductor: {from} does not divide {to}")]
    IncompatibleConductor { from: u32, to: u32 },
    #[error("root of unity of order {order} is not representable in conductor {conductor}")]
    RootNotInField { order: u32, conductor: u32 },
    #[error("expected {expected} coefficients for conductor {conductor}, got {got}")]
    WrongCoefficientCount {
        conductor: u32,
        expected: usize,
        got: usize,
    },
    #[error("zero input")]
    ZeroInput,
    #[error("element is not real")]
    NotReal,
    #[error("length cap exceeded: {len} > {cap}")]
    LengthCapExceeded { len: usize, cap: usize },
    #[error("work budget exceeded: estimated cost {estimate} > budget {budget}")]
    WorkBudgetExceeded { estimate: u128, budget: u128 },
    #[error("not a minimal vanishing sum: {0}")]
    NotMinimalVanishingSum(String),
    #[error("relation does not hold: weighted sum differs from target")]
    RelationMismatch,
    #[error("zero target")]
    ZeroTarget,
    #[error("targets differ")]
    TargetsDiffer,
    #[error("invalid relation tuple: {0}")]
    InvalidRelation(String),
    #[error("{what} cap exceeded: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("points not distinct: indices {0} and {1} coincide")]
    PointsNotDistinct(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("path endpoints must differ")]
    SameEndpoints,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported format_version {found} (expected {expected})")]
    FormatVersion { found: u32, expected: u32 },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
