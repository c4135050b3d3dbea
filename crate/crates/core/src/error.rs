use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants fall into two families: rejected input (exit code 2 on the
/// command line) and internal solver failures (exit code 3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-smooth join: gcd(l2, l1·w1·w2) = {0}")]
    NonSmoothJoin(u64),
    #[error("weights not coprime: gcd(w1, w2) = {0}")]
    WeightsNotCoprime(u64),
    #[error("l1 and l2 not coprime: gcd(l1, l2) = {0}")]
    LNotCoprime(u64),
    #[error("invalid base geometry: {0}")]
    InvalidBase(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("indeterminate: zero polynomial")]
    ZeroPolynomial,
    #[error("not a root of stated multiplicity")]
    NotARoot,
    #[error("reducible ray: product structure N × CP¹[w], r = 0 excluded")]
    ReducibleRay,
    #[error("m must equal gcd(k1,k2)")]
    InconsistentM,
    #[error("KE impossible for this admissible data: {0}")]
    FanoConditionFails(String),
    #[error("c1 obstruction: required (l1,l2) = relative Fano indices {expected:?}, got {actual:?}")]
    C1Obstruction {
        expected: Option<(u64, u64)>,
        actual: (u64, u64),
    },
    #[error("criterion requires s_N > 0")]
    NonPositiveScalar,
    #[error("invalid (p,q): {0}")]
    InvalidYpq(String),
    #[error("degenerate admissible data")]
    DegenerateAdmissible,
    #[error("no soliton parameter found after expanding the bracket to |a| = 2^{0}")]
    NoSolitonParameter(u32),
    #[error("internal solver failure: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegenerateAdmissible | Error::NoSolitonParameter(_) | Error::Internal(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
