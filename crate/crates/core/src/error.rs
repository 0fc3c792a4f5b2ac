use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("affine map must have a nonzero linear coefficient")]
    DegenerateAffine,

    #[error("resultant of a zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("degree {degree} polynomial has no prime decomposition (degree must be at least 2)")]
    DegreeTooSmall { degree: usize },

    #[error("right-factor degree {r} does not divide {degree}")]
    BadSplitDegree { r: usize, degree: usize },

    #[error("position {position} out of range for a decomposition of length {length}")]
    PositionOutOfRange { position: usize, length: usize },

    #[error("move not applicable: {0}")]
    InapplicableMove(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("quadruple {index} does not satisfy P1∘P2 = P3∘P4")]
    NotACompositionIdentity { index: usize },

    #[error("character values have incompatible bases")]
    IncompatibleBases,

    #[error("sandwich homomorphism law violated on sample {index}")]
    SandwichLawViolated { index: usize },

    #[error("ground sets differ: {0} vs {1}")]
    GroundMismatch(usize, usize),

    #[error("correspondence row {0} is empty")]
    EmptyRow(usize),

    #[error("ground set of size {0} is not supported (1..=64)")]
    BadGroundSize(usize),

    #[error("not a map")]
    NotAMap,

    #[error("not surjective")]
    NotSurjective,

    #[error("invalid homomorphism table: {0}")]
    InvalidHomTable(String),

    #[error("schreier verification failed: {0}")]
    SchreierFailure(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("a correspondence needs at least one branch")]
    EmptyBranches,

    #[error("composed correspondence is degenerate (resultant vanishes identically)")]
    DegenerateComposition,

    #[error("coefficient has a pole at the requested point")]
    CoefficientPole,

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
