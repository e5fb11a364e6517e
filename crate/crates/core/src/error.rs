use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // curves
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{edge}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("curve has no vertices")]
    EmptyCurve,
    #[error("curve is disconnected")]
    Disconnected,
    #[error("edge `{0}` has nonpositive length")]
    NonPositiveLength(String),
    #[error("unbounded edge `{0}` must end at a point at infinity of valency 1")]
    InfiniteEndValency(String),
    #[error("unbounded edge `{0}` must start at a finite point")]
    InfiniteStart(String),
    #[error("point not on curve: {0}")]
    PointNotOnCurve(String),

    // max-plus algebra
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("all coefficients are -inf")]
    AllNegInf,
    #[error("projective point has an infinite coordinate")]
    InfiniteCoordinate,

    // functions and divisors
    #[error("function is identically -inf")]
    NegInfFunction,
    #[error("function is discontinuous at vertex `{0}`")]
    Discontinuous(String),
    #[error("non-integral slope on edge `{0}`")]
    NonIntegralSlope(String),
    #[error("malformed function on edge `{edge}`: {reason}")]
    MalformedFunction { edge: String, reason: String },
    #[error("objects live on different curves")]
    CurveMismatch,

    // grafting
    #[error("cannot graft at a point at infinity")]
    GraftAtInfinity,
    #[error("not a tree: {0}")]
    NotATree(String),

    // linear systems
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator {0} does not lie in L(D)")]
    NotInLinearSystem(usize),
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: i64, found: i64 },
    #[error("all generators are -inf at {0}")]
    PhiUndefined(String),
    #[error("image of the rational map is a single point (geometric dimension 0)")]
    ImageIsPoint,
    #[error("geometric dimension exceeds one: {0}")]
    GeomDimTooLarge(String),
    #[error("image of the rational map contains a cycle")]
    ImageHasCycle,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("rank-one test failed at {0}")]
    RankFailure(String),

    // morphisms
    #[error("map is discontinuous at source vertex `{0}`")]
    MapDiscontinuous(String),
    #[error("source edge `{0}` leaves its target edge")]
    ImageOutOfEdge(String),
    #[error("not harmonic at {point}: half-edges {first} and {second} carry {first_sum} and {second_sum}")]
    NotHarmonic {
        point: String,
        first: String,
        first_sum: i64,
        second: String,
        second_sum: i64,
    },
    #[error("morphism is not finite: edge `{0}` is contracted")]
    NotFinite(String),
    #[error("not a retraction: {0}")]
    NotRetraction(String),

    // pipeline
    #[error("certificate check failed: {0}")]
    CertificateFailed(String),

    // text format
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read {0}")]
    Io(String),
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}

impl Error {
    /// Malformed input as opposed to a semantic violation.
    pub fn is_malformed(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::UnknownName { .. } | Error::Io(_))
    }
}
