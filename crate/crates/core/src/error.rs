use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The requested operation is not defined for this group kind.
    #[error("unsupported group for this operation: {0}")]
    UnsupportedGroup(String),

    /// Matrix data fails the structural invariants of its declared group.
    #[error("matrix violates the invariants of {group}: {detail}")]
    InvalidElement { group: String, detail: String },

    /// Two objects that must share a parent group do not.
    #[error("parent group mismatch: {0}")]
    ParentMismatch(String),

    /// Representations combined blockwise must share a group.
    #[error("group mismatch in direct sum: {0}")]
    GroupMismatch(String),

    /// The quotient weight multiset does not have one weight per positive
    /// root, so the pairing against the fundamental class is undefined
    /// (dimension condition violated).
    #[error("rank mismatch: {expected} positive roots but {got} quotient weights (dimension condition violated)")]
    RankMismatch { expected: usize, got: usize },

    /// No generic evaluation point was found within the retry budget.
    #[error("no generic rational point found after {attempts} draws")]
    GenericityFailure { attempts: usize },

    /// A basis or weight index is outside the representation.
    #[error("index {index} out of range (dimension {dim})")]
    IndexOutOfRange { index: usize, dim: usize },

    /// The vector to be tracked along the orbit is zero.
    #[error("orbit search requires a nonzero vector")]
    ZeroVector,

    /// The generated matrix Lie algebra is not solvable.
    #[error("generated Lie algebra is not solvable: {0}")]
    NotSolvable(String),

    /// A common eigenvector could not be certified within tolerance.
    #[error("common eigenvector residual {residual:e} exceeds tolerance")]
    EigenvectorFailure { residual: f64 },

    /// The subspace is the whole module, so no witness can exist.
    #[error("subspace is not proper: {0}")]
    NotProper(String),

    /// The radical factor fails the centrality hypothesis.
    #[error("radical factor is not central: {0}")]
    NotCentral(String),

    /// The subspace is not the sum of its intersections with the
    /// central-character blocks.
    #[error("subspace does not split along central-character blocks: {0}")]
    NotBlockwise(String),

    /// Generic-element draws kept disagreeing, so the rank is undecided.
    #[error("rank draws disagreed after {retries} retries")]
    DegenerateDraws { retries: usize },

    /// A root subset refers to vectors outside the root system.
    #[error("invalid roots: {0}")]
    InvalidRoots(String),

    /// Subalgebra data is inconsistent (dependent basis, not bracket-closed).
    #[error("invalid subalgebra: {0}")]
    InvalidSubalgebra(String),

    /// The torus argument is not a torus of the representation's group.
    #[error("torus mismatch: {0}")]
    TorusMismatch(String),

    /// Run configuration is malformed.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
