use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    /// The word is neither empty nor ends in `y`, so it has no `z`-decomposition.
    #[error("word {0:?} does not lie in H^1 (it ends in x)")]
    NotInH1(String),
    /// After applying `S_t` a word with nonzero coefficient is not admissible.
    #[error("word {0:?} does not lie in H^0 (must start with x and end with y)")]
    NotInH0(String),
    #[error("index {0:?} is not admissible (first part must be at least 2)")]
    Divergent(Vec<u32>),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}
