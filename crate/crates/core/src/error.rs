use thiserror::Error;

use crate::graphcalc::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}: the identity word is not allowed here")]
    TrivialInput(&'static str),
    #[error(
        "`{w1}` and `{w2}` are powers of one free homotopy class up to orientation \
         (there is a loop g with {w1} ~ g^i and {w2} ~ g^j); the minimal intersection \
         computation requires loops with no such common root"
    )]
    CommonRoot { w1: String, w2: String },
    #[error("circle index {index} out of range 1..={nu}")]
    IndexOutOfRange { index: usize, nu: usize },
    #[error("chord diagram is not tree-like: {0}")]
    NotTreeLike(String),
    #[error("expected a term on the two-circle graph nu=2; chords={{1,2}}, found {0}")]
    WrongGraph(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(Violation),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// True for errors caused by inputs that violate an operation's hypotheses.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::TrivialInput(_)
                | Error::CommonRoot { .. }
                | Error::IndexOutOfRange { .. }
                | Error::NotTreeLike(_)
                | Error::WrongGraph(_)
                | Error::InvalidGraph(_)
        )
    }
}
