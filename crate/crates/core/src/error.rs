use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("construction consistency: {0}")]
    ConstructionConsistency(String),

    #[error("vector {0:?} is not a minimal vector of the Leech lattice")]
    NotMinimal(Vec<i64>),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("generator {name} failed validation: {reason}")]
    GeneratorValidation { name: String, reason: String },

    #[error("automorphism image of {0:?} is not integral")]
    NonIntegral(Vec<i64>),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("bound dropped to {value} at step {step}, outside the supported regime")]
    NonPositiveBound { step: usize, value: String },

    #[error("cannot partition {roots} roots into {triples} zero-sum triples and {pairs} antipodal pairs")]
    InfeasiblePartition {
        roots: usize,
        triples: usize,
        pairs: usize,
    },

    #[error("family has {have} subsets but dimension {dim} needs {need} ({missing} missing)")]
    FamilyTooSmall {
        dim: usize,
        have: usize,
        need: usize,
        missing: usize,
    },

    #[error("unsupported dimension {0}; expected 25..=31")]
    UnsupportedDimension(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
