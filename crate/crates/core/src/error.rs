use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid quadratic field discriminant {0}")]
    InvalidField(u32),

    #[error("Gram form is not {0}")]
    BadGram(&'static str),

    #[error("unsupported root system type {0:?}")]
    UnsupportedType(String),

    #[error("rank {rank} exceeds the rank cap {cap}")]
    RankCap { rank: usize, cap: usize },

    #[error("vector is not a root")]
    NotARoot,

    #[error("group order exceeds the safety cap {0}")]
    GroupTooLarge(usize),

    #[error("lambda #{0} is not dominant")]
    NotDominant(usize),

    #[error("lambda #{0} is not a vertex of the hull")]
    NotAVertex(usize),

    #[error("empty lambda set")]
    EmptyLambda,

    #[error("hull is not full-dimensional")]
    Degenerate,

    #[error("facet labeling by (F, s) is not bijective")]
    LabelBijection,

    #[error("quotient facet matching failed: {0}")]
    LabelMatching(String),

    #[error("polytope is not simple; the polytopal algebra needs a simple polytope")]
    NotSimple,

    #[error("h-vector mismatch in degree {degree}: algebra has {dim}, h-vector says {h}")]
    HilbertMismatch { degree: usize, dim: usize, h: i64 },

    #[error("top degree has dimension {0}, expected 1")]
    TopDegree(usize),

    #[error("degree {0} exceeds the top degree")]
    DegreeOverflow(usize),

    #[error("group element does not permute the facet labels")]
    NotASymmetry,

    #[error("inconsistent coefficient system for facet {facet} and coset {coset}")]
    InconsistentCoefficients { facet: usize, coset: usize },

    #[error("label mismatch between quotient and orbit data: {0}")]
    LabelMismatch(String),

    #[error("invalid scaling: {0}")]
    InvalidScaling(String),

    #[error("degenerate polytope in rank {0} is outside the supported scope (use force)")]
    DegenerateOutOfScope(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("golden mismatch for {name}:\n{diff}")]
    GoldenMismatch { name: String, diff: String },

    #[error("unknown example {0:?}")]
    UnknownExample(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
