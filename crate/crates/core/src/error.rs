//! Error surface shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("series is zero up to its truncation order {order}; raise the truncation")]
    TruncationInsufficient { order: u32 },
    #[error("truncation cap {cap} reached without resolving the computation")]
    TruncationCapExceeded { cap: u32 },
    #[error("polynomial degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("field tower not supported: needs a root of {minimal_poly} over an extension field")]
    UnsupportedExtensionTower { minimal_poly: String },
    #[error("genericity failure: {0}")]
    GenericityFailure(String),
    #[error("non-isolated singularity (coefficients share a factor through the origin)")]
    NonIsolated,
    #[error("common component: {0}")]
    CommonComponent(String),
    #[error("degenerate polar: aP + bQ vanishes identically")]
    DegeneratePolar,
    #[error("branch is a separatrix; tangency order is undefined")]
    IsSeparatrix,
    #[error("branch is not a separatrix of the foliation")]
    NotSeparatrix,
    #[error("curve is not invariant by the foliation")]
    NotInvariant,
    #[error("foliation is dicritical; the requested invariant needs a non-dicritical germ")]
    Dicritical,
    #[error("blow-up cap {cap} exceeded during reduction of singularities")]
    BlowupCapExceeded { cap: u32 },
    #[error("local divisor is not a union of coordinate axes")]
    NotInNormalPosition,
    #[error("Euler condition sum(X_i A_i) = 0 violated")]
    EulerViolation,
    #[error("coefficients are not homogeneous of equal degree")]
    NonHomogeneous,
    #[error("logarithmic residues must satisfy sum(lambda_i d_i) = 0")]
    ResidueSumNonzero,
    #[error("polar of the radial foliation at its own center is undefined")]
    DegenerateRadial,
    #[error("dicritical singular point of the foliation on the invariant curve at {0}")]
    DicriticalPointOnS(String),
    #[error("singular locus incomplete: {0}")]
    IncompleteSingularLocus(String),
    #[error("no transversal line at infinity found among {tried} candidates")]
    NoTransversalLineFound { tried: u32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
