use thiserror::Error;

use crate::formula::SyntaxError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("line {line}: {source}")]
    KbSyntax { line: usize, source: SyntaxError },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("structure needs at least one atom")]
    NoAtoms,
    #[error("{count} valuations exceed the supported maximum of {max}")]
    TooManyValuations { count: usize, max: usize },
    #[error("invalid valuation `{0}`")]
    InvalidValuation(String),
    #[error("unknown semantics `{0}` (expected classical, four or j3)")]
    UnknownSemantics(String),
    #[error("closure exceeded cap after {0} fingerprints")]
    CapExceeded(usize),
    #[error("line {line}: {message}")]
    StructureFile { line: usize, message: String },
    #[error("model set {0} is outside the definable family")]
    Undefinable(String),
    #[error("no qualifying witness for valuation {0}")]
    NoWitness(usize),
    #[error("unknown condition `{0}`")]
    UnknownCondition(String),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
