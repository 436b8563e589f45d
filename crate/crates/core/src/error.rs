use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("operands live over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero has no rank factorization")]
    ZeroRankFactorization,
    #[error("requested rank {rank} exceeds {max}")]
    RankOutOfRange { rank: usize, max: usize },
    #[error("matrix is singular")]
    Singular,

    #[error("not a {{1}}-inverse")]
    NotInnerInverse,
    #[error("Moore-Penrose undefined over this field")]
    MoorePenroseUndefined,
    #[error("star order undefined over GF(p)")]
    StarUndefined,
    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("scalar constraint violated")]
    ScalarConstraint,
    #[error("combination inverse requires b invertible")]
    CombinationNeedsInvertible,
    #[error("precondition a <=- b fails")]
    NotBelow,

    #[error("internal error: decision methods disagree ({0})")]
    MethodDisagreement(String),

    #[error("no nonzero minimal element below 0")]
    NoMinimalBelowZero,
    #[error("expected a rank-one matrix, got rank {0}")]
    NotRankOne(usize),
    #[error("not a rank-one line")]
    NotRankOneLine,
    #[error("matrix is singular; invertibility witnesses do not exist for every rank-one element")]
    NoInvertibilityWitnesses,

    #[error("Jordan product undefined (division by 2)")]
    CharacteristicTwo,
    #[error("idempotent-preservation precondition fails: phi(I) is not idempotent")]
    UnitNotIdempotent,
    #[error("not a bidirectional minus-order preserver: phi(I) is singular")]
    UnitImageSingular,
    #[error("map is not of canonical form")]
    NotCanonical,
    #[error("map is not bijective")]
    NotBijective,

    #[error("ring construction failed: {0}")]
    RingAxiom(String),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("unknown proposition id `{0}`")]
    UnknownProposition(String),
    #[error("element is not regular")]
    NotRegular,
}
