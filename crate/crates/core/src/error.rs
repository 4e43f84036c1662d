use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("quadratic dual requires a homogeneous presentation")]
    InhomogeneousInput,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("element of degree {degree} exceeds truncation degree {bound}")]
    DegreeExceedsTruncation { degree: usize, bound: usize },

    #[error("completion anomaly: overlap {ambiguity} of degree {degree} resolves to a lower-degree relation (not a filtered deformation)")]
    FiltrationAnomaly { ambiguity: String, degree: usize },

    #[error("algebra not finite-dimensional within truncation degree {0}")]
    NotFiniteDimensional(usize),

    #[error("confluence audit failed at overlap {0}")]
    ConfluenceAudit(String),

    #[error("not a Clifford map: (θ⊗1 − 1⊗θ) is nonzero on the overlap space")]
    NotCliffordMap,

    #[error("central element is not central: {0}")]
    NotCentral(String),

    #[error("algebra is not graded semisimple (graded radical has dimension {0})")]
    GradedNotSemisimple(usize),

    #[error("input is not graded simple ({0} graded blocks)")]
    NotGradedSimple(usize),

    #[error("Jacobson radical is not homogeneous")]
    RadicalNotHomogeneous,

    #[error("no G-element found: {0}")]
    NoGElement(String),

    #[error("ideal is not nilpotent")]
    NotNilpotent,

    #[error("element is not homogeneous of degree 1")]
    NotHomogeneous,

    #[error("algebra is not commutative")]
    NotCommutative,

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
