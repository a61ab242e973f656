use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree mismatch on {generator}: expected {expected}, found {found}")]
    DegreeMismatch { generator: String, expected: String, found: String },
    #[error("d^2 != 0 on generator {generator}: d^2 = {residue}")]
    NotSquareZero { generator: String, residue: String },
    #[error("generator name collision: {0}")]
    NameCollision(String),
    #[error("unknown generator or name: {0}")]
    UnknownName(String),
    #[error("generator table mismatch: {0}")]
    TableMismatch(String),
    #[error("cannot shift generator {0} into negative degree")]
    IllegalShift(String),
    #[error("negative degree for generator {0}")]
    NegativeDegree(String),
    #[error("not an extension: {0}")]
    NotAnExtension(String),
    #[error("cocycle not closed: {0}")]
    NotClosed(String),
    #[error("slice condition violated: omega2 maps to {0}")]
    SliceConditionViolated(String),
    #[error("capped basis incomplete: {0}")]
    CapTooSmall(String),
    #[error("degree cap {cap} exceeded by degree {degree}")]
    DegreeCapExceeded { cap: i32, degree: i32 },
    #[error("window mismatch: {0}")]
    WindowMismatch(String),
    #[error("clifford construction invalid: {0}")]
    ConstructionInvalid(String),
    #[error("no charge conjugation candidate yields symmetric C Gamma^a")]
    NoValidCandidate,
    #[error("both charge conjugation candidates yield symmetric C Gamma^a")]
    AmbiguousCandidate,
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no phase calibration satisfies the tower relations")]
    NoCalibration,
    #[error("no derivation constant k makes the rotation commute with d")]
    NoDerivationConstant,
    #[error("curved morphism where an uncurved one is required: {0}")]
    CurvedInput(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
}

pub type Result<T> = std::result::Result<T, Error>;
