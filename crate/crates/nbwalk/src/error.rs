use thiserror::Error;

/// Errors produced by graph ingestion, operator construction, and the
/// numerical kernel.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: self-loop at vertex '{label}'")]
    SelfLoop { line: usize, label: String },

    #[error("line {line}: duplicate edge {a} -- {b}")]
    DuplicateEdge { line: usize, a: String, b: String },

    #[error("line {line}: expected two whitespace-separated labels, got '{text}'")]
    MalformedLine { line: usize, text: String },

    #[error("graph has {found} vertices, need at least 2")]
    TooFewVertices { found: usize },

    #[error("vertex '{label}' has degree {degree}, minimum degree 2 required")]
    MinDegreeViolation { label: String, degree: usize },

    #[error("infeasible generation profile: {reason}")]
    InfeasibleProfile { reason: String },

    #[error("graph generation exhausted {attempts} attempts without a simple graph")]
    GenerationExhausted { attempts: usize },

    #[error("matrix is not symmetric (max asymmetry {max_asymmetry:e})")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("eigenvalue iteration failed to converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("matrix is rank deficient (column {column})")]
    RankDeficient { column: usize },

    #[error("weight for vertex '{label}' must be positive, got {value}")]
    NonPositiveWeight { label: String, value: f64 },

    #[error("no closed-form spectrum: graph is neither regular nor biregular")]
    NoClosedForm,

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("not a probability distribution: defect {defect:e} exceeds tolerance")]
    NotADistribution { defect: f64 },

    #[error("change-of-basis matrix [S~ R] is singular")]
    SingularChangeOfBasis,

    #[error("graph is not regular (degrees vary)")]
    NotRegular,

    #[error("graph is not biregular")]
    NotBiregular,

    #[error("spectrum has no eigenvalue within {tolerance:e} of 1")]
    MissingPerron { tolerance: f64 },

    #[error("mixing comparison requires degree >= 3, got {degree}")]
    DegreeTooSmall { degree: usize },

    #[error("directed edge space has dimension {dim}, dense solver limit is {limit}")]
    DimensionOverflow { dim: usize, limit: usize },

    #[error("Rayleigh quotient of the zero vector is undefined")]
    ZeroVector,

    #[error("unknown vertex label '{label}'")]
    UnknownVertex { label: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
