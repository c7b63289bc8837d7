use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arity mismatch: outer polynomial has {expected} variables, {got} substitutions given")]
    ArityMismatch { expected: usize, got: usize },

    #[error("total degree {0} exceeds the cap of {cap}", cap = crate::poly::DEGREE_CAP)]
    DegreeCap(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("invalid parameter for {family}: {msg}")]
    InvalidParameter { family: String, msg: String },

    #[error("group order {order} exceeds the generation cap {cap}")]
    OrderCap { order: u64, cap: u64 },

    #[error("{0} has no exact root realization over Q(sqrt5)")]
    NotExact(String),

    #[error("unsupported for {group}: {what}")]
    Unsupported { group: String, what: String },

    #[error("unclassifiable Dynkin component: {0}")]
    Unclassifiable(String),

    #[error("no parabolic certificate for degree {d}: requires d < {bound}")]
    NoParabolicCertificate { d: u32, bound: u32 },

    #[error("invariant variant `{variant}` is incompatible with {group}")]
    IncompatibleVariant { group: String, variant: String },

    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("sparsity k = {k} is invalid for rank {n}")]
    InvalidSparsity { k: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
