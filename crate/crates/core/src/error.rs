use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected} coefficients, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid tower: {0}")]
    Validation(#[from] ValidationError),
    #[error("SNC violation: {0}")]
    Snc(String),
    #[error("unsupported geometry: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

/// Reasons a tower spec is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("tower has no levels")]
    NoLevels,
    #[error("levels[{level}]: degree m = {m} must be at least 2")]
    Degree { level: usize, m: u64 },
    #[error("levels[{level}]: level has no branch curves")]
    EmptyLevel { level: usize },
    #[error("levels[{level}].curves[{curve}]: multiplicity {a} must satisfy 0 < a < {m} and gcd(a, {m}) = 1")]
    Multiplicity { level: usize, curve: usize, a: u64, m: u64 },
    #[error("levels[{level}].curves[{curve}]: {geom} does not live on {base}")]
    WrongBase { level: usize, curve: usize, geom: String, base: String },
    #[error("levels[{level}].curves[{curve}]: {geom} duplicates levels[{first_level}].curves[{first_curve}]")]
    Duplicate { level: usize, curve: usize, geom: String, first_level: usize, first_curve: usize },
    #[error("levels[{level}]: sum of a_j D_j = {class} is not {m} times an integral class")]
    NonIntegralBundle { level: usize, m: u64, class: String },
    #[error("levels[{level}].curves[{curve}]: {geom} is not an integral curve of {omega}")]
    NotIntegral { level: usize, curve: usize, geom: String, omega: String },
    #[error("omega {omega} lives on {omega_base}, tower base is {base}")]
    OmegaBase { omega: String, omega_base: String, base: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
