use thiserror::Error;

/// Every failure the library reports. Variants carry enough context to be
/// printed directly by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("certificate shape does not match chain: {0}")]
    ShapeMismatch(String),
    #[error("multiplication is not expressible on the given generators: {0}")]
    NotExpressible(String),
    #[error("operation not supported for this ring: {0}")]
    UnsupportedRing(String),
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("resource cap exceeded: {0}")]
    ResourceExhausted(String),
    #[error("input identity does not evaluate to zero: {0}")]
    NotACollapse(String),
    #[error("polynomial does not vanish on the sequence: {0}")]
    NotADependence(String),
    #[error("lex-leading coefficient is not 1: {0}")]
    LeadingNotMonic(String),
    #[error("degree bound too low: {0}")]
    BoundTooLow(String),
    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),
    #[error("local datum is not a collapse: {0}")]
    NotLocalCollapse(String),
    #[error("monoids are not comaximal: {0}")]
    NotComaximal(String),
    #[error("malformed fraction: {0}")]
    MalformedFraction(String),
    #[error("lattice cap exceeded: {0}")]
    CapExceeded(String),
    #[error("internal cross-check failed: {0}")]
    InternalMismatch(String),
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("not an annihilator: {0}")]
    NotAnnihilator(String),
    #[error("coefficient escapes the ideal: {0}")]
    CoefficientEscapesIdeal(String),
    #[error("precondition breach: {0}")]
    PreconditionBreach(String),
    #[error("relation does not evaluate to zero: {0}")]
    NotARelation(String),
    #[error("saturation refutes membership: {0}")]
    SaturationRefutes(String),
    #[error("no coefficient equal to 1: {0}")]
    NoUnitCoefficient(String),
    #[error("trailing sequence elements are not the variables: {0}")]
    NotVariableTail(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
