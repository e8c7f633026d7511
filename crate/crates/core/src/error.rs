use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("exponent set {{{0}}} is not a subgroup of (Z/{1})^x")]
    NotASubgroup(String, u64),

    #[error("element does not lie in the given field")]
    NotInField,

    #[error("element is not integral over the given ring")]
    NotIntegral,

    #[error("operands belong to different rings")]
    MixedRings,

    #[error("the zero ideal is not supported")]
    ZeroIdeal,

    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("enumeration exceeded configured cap ({0})")]
    CapExceeded(String),

    #[error("no principal generator found for a root ideal: {0}")]
    NonPrincipalRoot(String),

    #[error("no row/column pair yields a root lattice basis")]
    NoLatticeBasis,

    #[error("factorization pattern not determined by implemented methods: {0}")]
    UnknownPattern(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("embedded data error: {0}")]
    Data(String),

    #[error("verification failed: {0}")]
    Verification(String),
}
