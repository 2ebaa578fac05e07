use thiserror::Error;

/// Errors raised by the exact linear-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
}

/// Errors raised while building, loading or validating a triangulation.
#[derive(Debug, Error)]
pub enum ManifoldError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("tetrahedron {tet} is malformed: {reason}")]
    BadTetrahedron { tet: usize, reason: String },
    #[error("non-manifold face {face:?}: shared by {count} tetrahedra")]
    NonManifoldFace { face: [usize; 3], count: usize },
    #[error("triangulation is not closed: face {face:?} bounds a single tetrahedron")]
    NotClosed { face: [usize; 3] },
    #[error("orientation mismatch on face {face:?} between tetrahedra {first} and {second}")]
    OrientationMismatch {
        face: [usize; 3],
        first: usize,
        second: usize,
    },
    #[error("non-manifold link at {simplex}: {reason}")]
    NonManifoldLink { simplex: String, reason: String },
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquared(usize),
    #[error("invalid dual cycle `{name}`: {reason}")]
    BadDualCycle { name: String, reason: String },
    #[error("lens space parameter p = {0} outside the supported range 2..=8")]
    LensOutOfRange(i64),
    #[error("embedded model `{name}` failed validation: {reason}")]
    EmbeddedModel { name: String, reason: String },
    #[error("homology check failed for `{name}`: {reason}")]
    Homology { name: String, reason: String },
}

/// Errors raised by chain-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("boundary of a degree-0 chain is undefined")]
    DegreeZero,
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("basis index {index} out of range for degree {degree} (size {size})")]
    IndexOutOfRange {
        degree: usize,
        index: usize,
        size: usize,
    },
    #[error("boundary matrices have inconsistent shapes at degree {0}")]
    Shape(usize),
    #[error("boundary of boundary is nonzero at degree {0}")]
    NotAComplex(usize),
}

/// Errors raised by linking, framing and classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkingError {
    #[error("cycles `{0}` and `{1}` are not combinatorially disjoint (shared tetrahedron {2})")]
    NotDisjoint(String, String, usize),
    #[error("cycle `{0}` has a free homology class; linking is only defined on torsion classes")]
    FreeCycle(String),
    #[error("pushoff `{pushoff}` is not homologous to `{cycle}`")]
    NotHomologous { cycle: String, pushoff: String },
    #[error("no disjoint parallel route for `{0}` in this triangulation; subdivide and retry")]
    NoParallelRoute(String),
    #[error("cycle `{0}` revisits a tetrahedron; a simple cycle is required")]
    NotSimple(String),
    #[error("self-linking target {target} is not reachable from base value {base} by whole twists")]
    UnreachableFraming { target: String, base: String },
    #[error("witness does not bound {degree} times the cycle")]
    BadWitness { degree: u64 },
}

/// Errors raised by Chern-Simons admissibility checks and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsError {
    #[error("level k must be nonzero")]
    ZeroLevel,
    #[error("charge on component `{0}` must be nonzero")]
    ZeroCharge(String),
    #[error("{0}")]
    Rejected(Rejection),
    #[error("unsupported manifold class: H_1 has free rank {0}")]
    UnsupportedManifold(usize),
    #[error(transparent)]
    Linking(#[from] LinkingError),
}

/// Why a level or a charge failed its quantization constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    Level { k: i64, exponent: u64 },
    Charge { component: String, q: i64, degree: u64 },
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::Level { k, exponent } => {
                let form = if *exponent == 2 {
                    "k = 2l".to_string()
                } else {
                    format!("k = {exponent}l")
                };
                write!(
                    f,
                    "level k = {k} rejected: torsion exponent of H_1 is {exponent}, so {form} with l an integer is required ({k} mod {exponent} = {})",
                    k.rem_euclid(*exponent as i64)
                )
            }
            Rejection::Charge {
                component,
                q,
                degree,
            } => {
                let form = if *degree == 2 {
                    "q = 2m".to_string()
                } else {
                    format!("q = {degree}m")
                };
                write!(
                    f,
                    "charge q = {q} on torsion component `{component}` rejected: torsion degree is {degree}, so {form} with m an integer is required ({q} mod {degree} = {})",
                    q.rem_euclid(*degree as i64)
                )
            }
        }
    }
}

/// Errors raised while reading or resolving a link file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkFileError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown cycle `{0}`: not declared in the link file or designated by the manifold")]
    UnknownCycle(String),
    #[error("invalid cycle `{name}`: {reason}")]
    BadCycle { name: String, reason: String },
    #[error("component `{0}` has no charge; give one in the file or with --charges")]
    MissingCharge(String),
    #[error("expected {expected} charges, found {found}")]
    ChargeCount { expected: usize, found: usize },
    #[error("link file declares no components")]
    Empty,
    #[error(transparent)]
    Linking(#[from] LinkingError),
}
