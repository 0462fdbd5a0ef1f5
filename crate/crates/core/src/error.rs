use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JengaError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("line {line}: malformed header, expected `n <integer>`")]
    MalformedHeader { line: usize },

    #[error("line {line}: expected {expected} cells, found {found}")]
    LineLength {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: unexpected character {ch:?} (only '#' and '.' are allowed)")]
    BadCharacter { line: usize, ch: char },

    #[error("level {level} is empty")]
    EmptyLevel { level: usize },

    #[error("configuration has no levels")]
    NoLevels,

    #[error("surface is not a closed polyhedral surface ({violations} violations)")]
    NotClosedSurface { violations: usize },

    #[error("surface has {components} connected components, expected one")]
    Disconnected { components: usize },

    #[error("Euler characteristic {chi} is odd")]
    OddEulerCharacteristic { chi: i64 },

    #[error("total angular defect {quarter_turns} (in quarter turns) is not a multiple of 4*pi")]
    DefectNotDivisible { quarter_turns: i64 },

    #[error("local pattern is not a surface vertex (all octants {0})")]
    NotSurfaceVertex(&'static str),

    #[error("surface does not match the configuration's boundary")]
    SurfaceMismatch,

    #[error("census contains defect-bearing vertices outside types I, II and III")]
    UnexpectedDefects,

    #[error("census does not yield an integer genus (numerator {numerator} / 8)")]
    NonIntegerGenus { numerator: i64 },

    #[error("closed-form counts do not apply: {0}")]
    ClosedFormNotApplicable(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("invalid deformation: {0}")]
    InvalidDeform(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub type Result<T> = std::result::Result<T, JengaError>;
