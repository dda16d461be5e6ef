use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no prime in [{lo}, {hi}]")]
    EmptyPrimeInterval { lo: u64, hi: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("constant input")]
    ConstantInput,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("order {0} is below 2")]
    InvalidOrder(usize),
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("expected a seed of {expected} terms, found {found}")]
    SeedLength { expected: usize, found: usize },
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("extension blocked at index {} ({:?})", .0.index, .0.reason)]
    Division(crate::sequences::Boundary),
    #[error("symmetry scalar is zero")]
    ZeroScalar,
    #[error("symmetry vector has {found} coordinates, basis has {expected}")]
    SymmetryDimension { expected: usize, found: usize },
    #[error("decimation factor must be positive and the residue below it")]
    BadDecimation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiamondError {
    #[error("offsets {0} and {1} differ in parity")]
    ParityMismatch(i64, i64),
    #[error("invalid offsets: {0}")]
    InvalidSpec(String),
    #[error("position ({row}, {col}) is not realised")]
    Unrealised { row: i64, col: i64 },
    #[error("minor needs a square selection, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("window [{lo}, {hi}] cannot hold the requested probe")]
    WindowTooSmall { lo: i64, hi: i64 },
    #[error("cannot parse offsets: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("unknown invariant {0}")]
    UnknownName(String),
    #[error("order {0} is below 2")]
    InvalidOrder(usize),
    #[error("expected order {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("seed term {0} is zero")]
    ZeroTerm(usize),
    #[error("data table {name}: {source}")]
    Data { name: String, source: ArithError },
    #[error("cannot read data table {name}: {msg}")]
    Io { name: String, msg: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("no construction for order {0}")]
    UnsupportedOrder(usize),
    #[error("minor does not rewrite over the stated denominator")]
    ExactRewrite,
    #[error("derived certificate is not divisible by {0}")]
    InexactDivision(String),
    #[error("{0} vanishes under the specialisation")]
    Degenerate(String),
    #[error("specialisation has {found} values, expected {expected}")]
    Specialisation { expected: usize, found: usize },
    #[error("witness check failed: {0}")]
    Witness(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Diamond(#[from] DiamondError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegralityError {
    #[error("term {index} is not a Laurent polynomial")]
    LaurentFailure { index: i64 },
    #[error("no designated minors for order {0}")]
    UnsupportedOrder(usize),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Diamond(#[from] DiamondError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("order {0} is below 4")]
    InvalidOrder(usize),
    #[error("type {0} is not proper")]
    NotProper(String),
    #[error("gcd {0} is below 5")]
    EtaRange(u64),
    #[error("all {0} trials aborted")]
    AllAborted(usize),
    #[error("need {needed} terms, found {found}")]
    TooFewTerms { needed: usize, found: usize },
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Diamond(#[from] DiamondError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
