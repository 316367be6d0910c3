use thiserror::Error;

/// Why a single move cannot be applied to a state.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move has no targets")]
    EmptyTargets,
    #[error("move amount must be at least 1")]
    ZeroAmount,
    #[error("target {0} is not a jar in the current state")]
    UnknownTarget(u64),
    #[error("amount {amount} exceeds targeted jar {target}")]
    Overdraw { target: u64, amount: u64 },
}

/// Library-wide error type.
///
/// Errors split into two families: bad input (domain) and exhausted
/// resources. [`Error::is_resource`] distinguishes them so callers can map
/// the families to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("jar values must be positive")]
    ZeroJarValue,
    #[error("{op} requires a non-empty jar set")]
    EmptySet { op: &'static str },
    #[error("{op} requires at least {need} jars, got {got}")]
    TooFewJars {
        op: &'static str,
        need: usize,
        got: usize,
    },
    #[error("invalid move: {0}")]
    InvalidMove(#[from] MoveError),
    #[error("scale factor must be at least 1")]
    ZeroScale,
    #[error("sequence order must be at least 2")]
    OrderTooSmall,
    #[error("set is not two-powerful")]
    NotTwoPowerful,
    #[error("set is not super-{order}-nacci")]
    NotSuperNacci { order: usize },
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("invalid ratio: {0}")]
    InvalidRatio(String),
    #[error("arithmetic overflow in {op}")]
    Overflow { op: &'static str },
    #[error(
        "node budget of {budget} exhausted after exploring {nodes} nodes; \
         the answer lies in {lower}..={upper}"
    )]
    NodeBudgetExhausted {
        budget: u64,
        nodes: u64,
        /// Proven lower bound on the answer when the budget ran out.
        lower: usize,
        /// Structural upper bound on the answer.
        upper: usize,
    },
    #[error("state cap of {cap} exceeded during breadth-first search")]
    StateCapExceeded { cap: usize },
    #[error("{op} is capped at {limit} jars, got {got}")]
    TooManyJars {
        op: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("{op} is capped at values up to {limit}, got {got}")]
    ValueCapExceeded {
        op: &'static str,
        limit: u64,
        got: u64,
    },
}

impl Error {
    /// True for errors caused by hitting a budget or cap rather than by bad
    /// input. The CLI exits 2 for these and 1 for everything else.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::Overflow { .. }
                | Error::NodeBudgetExhausted { .. }
                | Error::StateCapExceeded { .. }
                | Error::TooManyJars { .. }
                | Error::ValueCapExceeded { .. }
        )
    }
}
