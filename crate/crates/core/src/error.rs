use thiserror::Error;

use crate::ltl::{HierarchyClass, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("atom `{0}` is not in the alphabet")]
    UnknownAtom(String),
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("malformed lasso word: {0}")]
    LassoParse(String),
    #[error("automaton is not in the required class: {0}")]
    WrongClass(String),
    #[error("automaton is not weak")]
    NotWeak,
    #[error("automaton is not very weak")]
    NotVeryWeak,
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("formula lies outside {0}")]
    OutsideClass(HierarchyClass),
}

pub type Result<T> = std::result::Result<T, Error>;
