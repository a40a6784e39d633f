use thiserror::Error;

/// Errors raised by constructions when an input violates an operation's
/// precondition. Construction results that are legitimately negative (a
/// failed chain, a binarity violation) are values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty simplex")]
    EmptySimplex,
    #[error("empty vertex id")]
    EmptyVertex,
    #[error("complex is empty")]
    EmptyComplex,
    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(String),
    #[error("complex is not a subcomplex: simplex {0} missing from ambient")]
    NotSubcomplex(String),
    #[error("vertex sets overlap at {0}")]
    OverlappingVertices(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("point support {0} is not a simplex of the complex")]
    SupportNotSimplex(String),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("chain is not strictly increasing at position {0}")]
    NotAChain(usize),
    #[error("chain is not saturated")]
    NotSaturated,
    #[error("point is not interior to simplex {0}")]
    NotInterior(String),
    #[error("point coincides with the retraction center")]
    AtCenter,
    #[error("point lies outside the retraction domain: {0}")]
    OutsideDomain(String),
    #[error("family is not pairwise intersecting: {0} and {1} are disjoint")]
    NotLinked(String, String),
    #[error("intersection witness rejected by {0}")]
    WitnessRejected(String),
    #[error("family contains no star member")]
    NoStarMember,
    #[error("invalid set system: {0}")]
    InvalidSystem(String),
    #[error("rank stratification has {layers} layers, more than {groups} groups allow")]
    RankBoundExceeded { layers: usize, groups: usize },
    #[error("set is not contained in the ground set: element {0}")]
    NotInGround(String),
    #[error("invalid ordered ground: {0}")]
    InvalidOrder(String),
    #[error("set {0} is not order-convex")]
    NotConvex(String),
    #[error("ground of size {size} exceeds bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("factor {factor} family is not binary: {clique:?} has empty intersection")]
    FactorNotBinary { factor: usize, clique: Vec<String> },
    #[error("factor {0} family does not contain the whole factor")]
    FactorMissingWhole(usize),
    #[error("dense set misses coordinate pattern {0}")]
    DensityHole(String),
    #[error("invalid cylinder spec: {0}")]
    InvalidCylinder(String),
    #[error("certificate inputs do not match their digest")]
    DigestMismatch,
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
}

pub type Result<T> = std::result::Result<T, Error>;
