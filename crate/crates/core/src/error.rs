use thiserror::Error;

use crate::exactlin::LinAlgError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("{what}: estimated {estimate} candidates exceeds the ceiling of {ceiling}")]
    CeilingExceeded {
        what: &'static str,
        estimate: u64,
        ceiling: u64,
    },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("invalid presentation: {0}")]
    BadPresentation(String),
    #[error("degenerate presentation: the relations kill the identity of `{0}`")]
    DegeneratePresentation(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("modules or ideals live over different categories")]
    CategoryMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("target mismatch: expected object {expected}, found {found}")]
    TargetMismatch { expected: usize, found: usize },
    #[error("not a submodule: {0}")]
    NotASubmodule(String),
    #[error("the class does not define a filter: {0}")]
    NotAFilter(String),
    #[error("cannot decide class membership: {0}")]
    Undecidable(String),
}
