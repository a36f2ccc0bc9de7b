use thiserror::Error;

/// Errors produced by the algebra, series, Steenrod and gradebook layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    #[error("series shape mismatch: {0}")]
    Shape(String),

    #[error("not composable: {0}")]
    Composability(String),

    #[error("cannot revert: {0}")]
    Reversion(String),

    #[error("cannot expand: {0}")]
    Expansion(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("incomplete action table: no image for generator {generator} under operation index {index}")]
    IncompleteTable { generator: u32, index: u32 },

    #[error("series division: {0}")]
    Division(String),

    #[error("negative splitting multiplicity {value} in degree {degree}")]
    NegativeMultiplicity { degree: usize, value: i64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
