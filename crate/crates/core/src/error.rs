use thiserror::Error;

/// Errors raised by group construction and the representation calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup {
        reason: &'static str,
        witness: [usize; 3],
    },
    #[error("identity must be element 0 (row 0 and column 0 must be the identity row/column)")]
    IdentityNotFirst,
    #[error("group order limit {limit} exceeded (reached {reached})")]
    OrderLimitExceeded { limit: usize, reached: usize },
    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(&'static str),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(&'static str),

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("eigenvalue iteration did not converge")]
    ConvergenceFailure,
    #[error("negative eigenvalue {value:e} below clamp threshold")]
    NegativeEigenvalue { value: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("Hermitian form is not positive definite (smallest eigenvalue {smallest:e})")]
    NotPositiveForm { smallest: f64 },
    #[error("entry is not finite")]
    NonFinite,

    #[error(
        "not a homomorphism: f({left})f({right}) != f({left}*{right}) (residual {residual:e})"
    )]
    NotAHomomorphism {
        left: usize,
        right: usize,
        residual: f64,
    },
    #[error("dimension mismatch: {0}")]
    DimMismatch(&'static str),
    #[error("generator images do not reach element {element}")]
    NotGenerating { element: usize },
    #[error("representations are defined over different groups")]
    GroupMismatch,
    #[error("subspace is not invariant (element {element}, residual {residual:e})")]
    NotInvariant { element: usize, residual: f64 },
    #[error("representation is not unitary for the supplied form (element {element}, residual {residual:e})")]
    NotUnitary { element: usize, residual: f64 },
    #[error("quotient by the full space is zero-dimensional")]
    EmptyQuotient,
    #[error("basis columns are not orthonormal (residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("character norm {norm} is not near a positive integer")]
    NormNotNearInteger { norm: f64 },
    #[error("trace is not constant on class {class} (residual {residual:e})")]
    NotClassConstant { class: usize, residual: f64 },
    #[error("value {value} for irrep {index} is not near a non-negative integer (residual {residual:e})")]
    NotNearInteger {
        index: usize,
        value: f64,
        residual: f64,
    },
    #[error("sum of k_r * n_r is {found}, representation dimension is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("irrep set is incomplete: {0}")]
    IncompleteSet(&'static str),
    #[error("irrep set is invalid: {0}")]
    InvalidIrrepSet(&'static str),
    #[error("invariant subspace of dimension {dim} neither irreducible nor split after {attempts} draws")]
    SplitStall { dim: usize, attempts: usize },
    #[error("rank of projector for irrep {index} is {found}, expected {expected}")]
    RankMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("block residual {residual:e} exceeds tolerance {tolerance:e} (element {element})")]
    BlockResidualExceeded {
        element: usize,
        residual: f64,
        tolerance: f64,
    },
    #[error("irrep index {0} out of range")]
    IrrepOutOfRange(usize),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
