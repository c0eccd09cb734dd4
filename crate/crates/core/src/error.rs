use thiserror::Error;

/// Crate-wide error type. Variants carry enough context to identify the
/// offending input (simplex, vertex, parameter) without a debugger.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("top simplices have mixed dimensions: found sizes {0} and {1}")]
    MixedDimension(usize, usize),

    #[error("duplicate vertex {vertex} in simplex {simplex:?}")]
    DuplicateVertexInSimplex { vertex: u32, simplex: Vec<u32> },

    #[error("{simplex:?} is not a simplex of the complex")]
    NotASimplex { simplex: Vec<u32> },

    #[error("operation needs dimension >= 1, complex has dimension 0")]
    DimensionZero,

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("graph contains a self loop at vertex {0}")]
    SelfLoop(u32),

    #[error("edge weight must be positive, got {0} on edge ({1}, {2})")]
    NonPositiveWeight(String, u32, u32),

    #[error("Jacobi eigensolve did not converge: off-diagonal mass {off:.3e} after {sweeps} sweeps")]
    EigensolveFailure { off: f64, sweeps: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("link of {simplex:?} has a disconnected 1-skeleton")]
    DisconnectedLink { simplex: Vec<u32> },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("degree k={k} out of range for dimension n={n}: {reason}")]
    DegreeOutOfRange { k: usize, n: usize, reason: &'static str },

    #[error("table modulus never reaches target value {target}: min sampled alpha is {min_alpha}")]
    UnreachableThreshold { target: f64, min_alpha: f64 },

    #[error("permutation {0:?} is not a bijection on 0..{1}")]
    InvalidPermutation(Vec<u32>, u32),

    #[error("group closure exceeded cap of {0} elements")]
    GroupClosureOverflow(usize),

    #[error("generator {generator:?} does not map top simplex {simplex:?} to a simplex")]
    NonSimplicialAction { generator: Vec<u32>, simplex: Vec<u32> },

    #[error("representation is invalid: {0}")]
    InvalidRepresentation(String),

    #[error("cochain degrees do not match: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("identity not defined at degree k={k} on dimension n={n}: {reason}")]
    UnsupportedDegree { k: usize, n: usize, reason: &'static str },

    #[error("cannot apply differential at top degree k={0}")]
    TopDegree(usize),

    #[error("invariant-vector subspace is zero for every orbit; cochain space is trivial")]
    DegenerateSubspace,

    #[error("numerical check failed: {what} (residual {residual:.3e})")]
    NumericalCheck { what: String, residual: f64 },

    #[error("one-sided descent inapplicable: k={k} exceeds n - 1/lambda = {bound:.6}")]
    OneSidedInapplicable { k: usize, bound: f64 },

    #[error("certificates refer to different complexes: {0}")]
    InconsistentInputs(String),

    #[error("requested {requested} relators but the relator space has only {available}")]
    TooManyRelators { requested: u64, available: u64 },

    #[error("invalid relator {text:?}: {reason}")]
    InvalidRelator { text: String, reason: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {path}: {reason}")]
    Parse { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
