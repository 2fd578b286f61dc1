use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("exponent arithmetic overflowed")]
    ExponentOverflow,

    #[error("q cannot be specialized to 0")]
    ZeroSubstitution,

    #[error("{0} is not a unit")]
    NonUnit(String),

    #[error("negative exponent on non-invertible generator {0}")]
    InadmissibleMonomial(String),

    #[error("images do not satisfy the relation between {left} and {right}")]
    NotAPoint { left: String, right: String },

    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },

    #[error("size must be at least 2, got {0}")]
    SizeTooSmall(usize),

    #[error("index a[{0},{1}] out of range")]
    IndexOutOfRange(usize, usize),

    #[error("no unique relation family for a[{}, {}] and a[{}, {}]", .0.0, .0.1, .0.2, .0.3)]
    RelationFamily((usize, usize, usize, usize)),

    #[error("{0} requires the localized algebra")]
    NotLocalized(&'static str),

    #[error("{0} requires an even size")]
    OddSize(&'static str),

    #[error("singular matrix")]
    Singular,

    #[error("{0}")]
    Invalid(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
