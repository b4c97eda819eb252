use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("relation {0} contains a path of length less than 2")]
    NonAdmissible(String),
    #[error("relation {0} mixes paths with different sources or targets")]
    InconsistentRelation(String),
    #[error("path count still growing at length bound {0}")]
    NotFiniteDimensional(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("modules or morphisms belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("module is injective, no almost split sequence starts at it")]
    InjectiveInput,
    #[error("enumeration budget of {0} iso-classes exceeded")]
    BudgetExceeded(usize),
    #[error("object is not support tau-rigid in the ambient category: {0}")]
    NotSupportTauRigid(String),
    #[error("objects are not compatible: {0}")]
    NotCompatible(String),
    #[error("reduction map produced an inconsistent result: {0}")]
    CaseDispatchError(String),
    #[error("object {0} is not in the image of the reduction map")]
    NotInImage(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("sequence is not signed tau-exceptional: {0}")]
    NotExceptional(String),
    #[error("unknown summand id {0}")]
    UnknownSummand(usize),
    #[error("cache entry is corrupt: {0}")]
    CacheCorrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
