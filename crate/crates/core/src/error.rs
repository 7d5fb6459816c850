use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants mirror the checks each operation performs: malformed field
/// definitions, arithmetic preconditions, enumeration budgets, and the
/// applicability gates of the closed-form formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    RejectsNonPrimeP(u64),
    #[error("modulus {0} is reducible over GF({1})")]
    RejectsReducibleModulus(String, u32),
    #[error("malformed modulus: {0}")]
    InvalidModulus(String),
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("quadratic character is undefined in characteristic 2")]
    UndefinedForEvenCharacteristic,
    #[error("zero has no discrete logarithm")]
    ZeroInput,
    #[error("3 does not divide q - 1 = {0}; every element is a cube")]
    CubesAreAllOfGFq(u64),
    #[error("linearized map is not bijective: {0}")]
    NonUniqueSolution(String),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("enumeration of {needed} codewords exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("search needs {needed} subset tests, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("moment system is singular: {0}")]
    SingularSystem(String),
    #[error("inconsistent moments: {0}")]
    InconsistentMoments(String),
    #[error("subfield {0} is not contained in GF({1}^{2})")]
    SubfieldAbsent(String, u32, u32),
    #[error("formula gate not satisfied: {0}")]
    GateUnsatisfied(String),
    #[error("negative count {count} at weight {weight} in {table}")]
    NegativeCount {
        table: String,
        weight: i128,
        count: i128,
    },
    #[error("{table}: counts sum to {total}, expected {expected}")]
    MassMismatch {
        table: String,
        total: i128,
        expected: i128,
    },
    #[error("non-integral count {0}")]
    NonIntegralCount(String),
    #[error("degenerate coordinate set: {0}")]
    DegenerateT(String),
    #[error("function is not bent: |W(beta)| = {magnitude} at beta index {beta}")]
    NotBent { beta: u32, magnitude: String },
    #[error("dual value f*(beta) = {0} is nonzero")]
    DualNonzero(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
