use crate::word::Word;

/// Errors raised across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter name `{0}`")]
    DuplicateLetter(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter order is not reflexive at index {0}")]
    NotReflexive(usize),
    #[error("letter order is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("star atom has an empty letter set")]
    EmptyStarAtom,
    #[error("star atom letter set is not downwards-closed: contains {present} but not {missing}")]
    StarAtomNotClosed { present: usize, missing: usize },
    #[error("automaton is incomplete: state {state} has no transition on letter {letter}")]
    IncompleteAutomaton { state: usize, letter: usize },
    #[error("automaton has unreachable states (e.g. state {0})")]
    UnreachableState(usize),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("teacher answered inconsistently on `{0:?}`")]
    InconsistentTeacher(Word),
    #[error("equivalence hypothesis violates its contract: {0}")]
    InvalidHypothesis(String),
    #[error("alphabet order must be discrete (equality) for this operation")]
    NonDiscreteAlphabet,
    #[error("vector ideal bound at index {0} must be at least 1")]
    ZeroIdealBound(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
