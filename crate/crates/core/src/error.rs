use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("resultant undefined: both polynomials are constant in y")]
    ConstantInY,

    #[error("intersection multiplicity with the zero polynomial")]
    ZeroPolynomial,

    #[error("non-isolated singularity: the Milnor number is infinite")]
    NonIsolated,

    #[error("empty support")]
    EmptySupport,

    #[error("difference not representable: {0}")]
    DifferenceNotRepresentable(String),

    #[error("polynomial is not monic in y")]
    NotMonic,

    #[error("{p} does not divide the y-degree {degree}")]
    DegreeNotDivisible { p: u64, degree: u64 },

    #[error("input not an irreducible branch transverse to x=0: {0}")]
    NotBranch(String),

    #[error("invalid characteristic sequence: {0}")]
    InvalidCharacteristic(String),

    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("index k={k} out of range 0..{g}")]
    IndexOutOfRange { k: usize, g: usize },

    #[error("smooth branch has no approximate jacobian diagrams")]
    SmoothBranch,

    #[error("family is not a branch jacobian family: {0}")]
    NotJacobianFamily(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("root finder did not converge on edge polynomial {0}")]
    NoConvergence(String),

    #[error("undecidable at current depth: {0}")]
    Undecidable(String),

    #[error("contact class violation: {0}")]
    ContactClass(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// Short machine-readable tag, used in JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NegativeExponent(_) => "negative_exponent",
            Error::ConstantInY => "constant_in_y",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NonIsolated => "non_isolated",
            Error::EmptySupport => "empty_support",
            Error::DifferenceNotRepresentable(_) => "difference_not_representable",
            Error::NotMonic => "not_monic",
            Error::DegreeNotDivisible { .. } => "degree_not_divisible",
            Error::NotBranch(_) => "not_branch",
            Error::InvalidCharacteristic(_) => "invalid_characteristic",
            Error::InvalidSemigroup(_) => "invalid_semigroup",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::SmoothBranch => "smooth_branch",
            Error::NotJacobianFamily(_) => "not_jacobian_family",
            Error::Overflow(_) => "overflow",
            Error::NoConvergence(_) => "no_convergence",
            Error::Undecidable(_) => "undecidable",
            Error::ContactClass(_) => "contact_class",
            Error::Parse { .. } => "parse",
            Error::Json(_) => "json",
        }
    }
}
