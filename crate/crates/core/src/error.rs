use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word has no factorization")]
    EmptyWord,
    #[error("not in X*x1")]
    NotInXStarX1,
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("stuffle requires the Y alphabet")]
    StuffleOnX,
    #[error("star of improper series")]
    ImproperStar,
    #[error("improper: P(0) must vanish")]
    ImproperUnivariate,
    #[error("wrong constant term: expected {expected}")]
    WrongConstantTerm { expected: &'static str },
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("non-convergent index: {0}")]
    NonConvergent(String),
    #[error("argument outside the series domain: {0}")]
    OutOfDomain(String),
    #[error("factorization holds only for odd q")]
    EvenQ,
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("divergent word outside star form: {0}")]
    DivergentWord(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
