use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and classification layers.
///
/// `Domain` covers precondition violations; `IdentityViolation` is reserved
/// for a failed internal consistency check that would contradict one of the
/// pinned algebraic identities (the CLI maps it to a distinct exit code).
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero binary form")]
    ZeroForm,
    #[error("singular transformation matrix")]
    SingularMatrix,
    #[error("s3 must be nonzero")]
    ZeroS3,
    #[error("degenerate sextic: Delta(u,v) = 0")]
    DegenerateSextic,
    #[error("J2 = 0: absolute invariants undefined")]
    J2Zero,
    #[error("J10 = 0: not a genus-2 curve")]
    J10Zero,
    #[error("inversion-singular: {0}")]
    InversionSingular(String),
    #[error("moduli point is not on the elliptic-subfield locus")]
    NotOnLocus,
    #[error("branch points must be six pairwise distinct points")]
    DuplicateBranchPoint,
    #[error("congruence-excluded: case {case} is empty for n = {n}")]
    CongruenceExcluded { case: u8, n: usize },
    #[error("identity violation: {0}")]
    IdentityViolation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
