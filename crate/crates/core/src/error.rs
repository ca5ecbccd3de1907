use thiserror::Error;

/// Failure to read a symbol from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("unsupported exponent at position {pos}: {found}")]
    UnsupportedExponent { pos: usize, found: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("the zero polynomial has no leading part")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PuiseuxError {
    #[error("symbol has no positive power of xi")]
    NotAPolynomialInXi,
    #[error("symbol is not normalized: the xi^{0} coefficient is zero")]
    NotNormalized(u32),
    #[error("depth exponent {0} must be at most -1")]
    InvalidDepth(String),
    #[error("could not certify edge roots at exponent {exponent}: {detail}")]
    PrecisionExhausted { exponent: String, detail: String },
    #[error("evaluation overflowed at x = {0}")]
    NumericOverflow(f64),
    #[error("need at least {need} sample points, got {got}")]
    TooFewSamples { need: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationError {
    #[error("index {index} out of range for {len} values")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("nodes {0} and {1} coincide")]
    CoincidentNodes(usize, usize),
    #[error("expected {expected} nodes, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("leading coefficient a_0 is zero")]
    ZeroLeading,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("step size collapsed near x = {0}")]
    StiffnessFailure(f64),
    #[error("leading coefficient vanishes on the whole span")]
    LeadingCoeffVanishes,
    #[error("sample has {points} points over {decades:.2} decades; need 16 points and 2 decades")]
    InsufficientRange { points: usize, decades: f64 },
    #[error("invalid span [{0}, {1}]")]
    InvalidSpan(f64, f64),
    #[error("operator has order zero")]
    ZeroOrder,
}
