use thiserror::Error;

/// Errors raised across the library.
///
/// Input errors (malformed tables, unresolved labels, bad session files) are
/// distinguished from verified mathematical failures by [`Error::is_input_error`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("polynomial variable lists differ")]
    VariableMismatch,
    #[error("unsupported degree {0} (at most 2 supported)")]
    UnsupportedDegree(u32),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("cannot parse {what}: {detail}")]
    Parse { what: String, detail: String },

    #[error("multiplication table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(String, String, String),
    #[error("multiplication table is not a latin square (row or column {0})")]
    NotLatinSquare(usize),
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("chain member {index} is not a subgroup: {detail}")]
    NotSubgroup { index: usize, detail: String },
    #[error("not normal: {detail}")]
    NotNormal { detail: String },

    #[error("2-cocycle identity violated at ({0}, {1}, {2})")]
    CocycleIdentityViolation(String, String, String),
    #[error("cocycle is not filtered: level {level}, h({g1}, {g2}) = {value} not in H_{level}")]
    CocycleNotFiltered {
        level: usize,
        g1: String,
        g2: String,
        value: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices do not define a representation: {0}")]
    NotARepresentation(String),
    #[error("irrep catalog has no entry for subgroup {0}")]
    CatalogMissing(String),
    #[error("invalid irrep catalog: {0}")]
    InvalidCatalog(String),
    #[error("isotypic split failed: {0}")]
    SplitMismatch(String),
    #[error("not a subspace of the given space: {0}")]
    NotSubspace(String),

    #[error("level {0} out of range")]
    LevelOutOfRange(usize),
    #[error("nothing to shift: essential length {el} <= d = {d}")]
    NothingToShift { el: usize, d: usize },
    #[error("not a subfragment: {0}")]
    NotSubfragment(String),
    #[error("subfragment is not strict: {0}")]
    NotStrict(String),
    #[error("fragment body is nonzero (dimension {0})")]
    BodyNonzero(usize),

    #[error("precondition failed: {0}")]
    PreconditionFailure(String),
    #[error("equivariance violated: {0}")]
    EquivarianceViolation(String),

    #[error("fragment is not certified irreducible: {0}")]
    NotCertifiedIrreducible(String),
    #[error("coverage failure (input is not irreducible): {0}")]
    CoverageFailure(String),
    #[error("conjugate module is not equivalent: {0}")]
    NotStabilized(String),
    #[error("intertwiner space has dimension {0}, field does not split the subgroup")]
    IntertwinerNotUnique(usize),

    #[error("zero vector")]
    ZeroVector,
    #[error("module is not decomposed into simple components: {0}")]
    NotDecomposed(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },
    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by malformed input rather than a verified
    /// mathematical refutation.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::CoverageFailure(_)
                | Error::NotCertifiedIrreducible(_)
                | Error::CocycleNotFiltered { .. }
                | Error::NotStabilized(_)
                | Error::EquivarianceViolation(_)
                | Error::CocycleIdentityViolation(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
