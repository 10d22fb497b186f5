use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a supported prime (2 <= p <= 251)")]
    UnsupportedModulus(u32),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("antisymmetry fails for basis pair ({i}, {j})")]
    Antisymmetry { i: usize, j: usize },

    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("p-map incompatible at basis index {i}: ad(x^[p]) != (ad x)^p")]
    PCompatibility { i: usize },

    #[error("module action is not a representation on basis pair ({i}, {j})")]
    Representation { i: usize, j: usize },

    #[error("module action is not restricted at basis index {i}")]
    ModuleRestrictedness { i: usize },

    #[error("subspace is not a p-ideal")]
    NotPIdeal,

    #[error("subspace is not abelian")]
    NotAbelian,

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("algebra is a torus")]
    Toral,

    #[error("acting algebra is not p-unipotent")]
    NotUnipotent,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget of {budget} candidates exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("enumeration bounds exceeded: {0}")]
    BoundsExceeded(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unknown entry: {0}")]
    Unknown(String),
}

impl Error {
    /// True for errors raised by axiom validation of an algebra or module.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Antisymmetry { .. }
                | Error::Jacobi { .. }
                | Error::PCompatibility { .. }
                | Error::Representation { .. }
                | Error::ModuleRestrictedness { .. }
        )
    }
}
