use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{k} exceeds 2^16")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("equal-degree splitting did not converge after {0} attempts")]
    SplittingFailed(u32),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero function has no divisor")]
    ZeroFunction,
    #[error("not a place: {0}")]
    NotAPlace(String),
    #[error("all coordinates are zero")]
    AllZero,
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("coordinates are not w-primitive")]
    NotPrimitive,
    #[error("empty support")]
    EmptySupport,
    #[error("search space of {size} tuples exceeds the cap {cap}")]
    TooLarge { size: String, cap: u128 },
    #[error("singular curve (zero discriminant)")]
    SingularCurve,
    #[error("elliptic models need characteristic >= 5, got {0}")]
    UnsupportedCharacteristic(u32),
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("zeta value requested at s = {0}; only s >= 2 is allowed")]
    PoleAtOne(i64),
    #[error("rational function has no power series expansion at t = 0")]
    NoExpansionAtZero,
    #[error("value out of domain: {0}")]
    OutOfDomain(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("bad spec: {0}")]
    BadSpec(String),
}
