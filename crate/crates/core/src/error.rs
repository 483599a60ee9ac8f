use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionError { expected: usize, got: usize },
    #[error("Levi subgroups are not comparable: {0}")]
    NotComparable(String),
    #[error("point is not in the closed dominant chamber: {0}")]
    NotDominant(String),
    #[error("negative Laurent coefficients do not cancel (order {order}): family is not compatible")]
    FamilyNotSmooth { order: i64 },
    #[error("density argument hits a pole of the function attached to root {root}")]
    PoleHit { root: usize },
    #[error("incomplete input: missing {0}")]
    IncompleteInput(String),
    #[error("root subset is not a closed sub-root-system")]
    NotSubsystem,
    #[error("element does not stabilize the chosen chamber")]
    NotChamberStabilizer,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("not a restricted root: {0}")]
    NotARoot(String),
    #[error("element is not in the modeled stabilizer")]
    NotInStabilizer,
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("contour shift must be positive, got {0}")]
    BadShift(f64),
    #[error("class is not discrete in the given Levi")]
    NotDiscrete,
    #[error("orbit element is not P-minimal: {0}")]
    NotPRegular(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
