use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant maps to a stable
/// machine-readable code via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    Parse(String),
    #[error("edge ({u},{v}) has weight {w}, expected a value strictly between 0 and 1")]
    WeightRange { u: usize, v: usize, w: f64 },
    #[error("edge ({u},{v}) appears more than once")]
    DupEdge { u: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexRange { vertex: i64, n: usize },
    #[error("wrong number of parameters: {0}")]
    Arity(String),
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("vertex {0} cannot be forced from the current blue set")]
    NotForceable(usize),
    #[error("state list would need {needed} states, cap is {cap}")]
    StateLimit { needed: u64, cap: u64 },
    #[error("initial blue set is empty")]
    EmptySet,
    #[error("transition system is singular at state {state}: the initial set is not a zero forcing set")]
    Singular { state: usize },
    #[error("no convergence within {rounds} rounds")]
    NoConverge { rounds: u64 },
    #[error("alpha = {0} is outside the open interval (0, 1)")]
    AlphaRange(f64),
    #[error("graph is not a {0}")]
    NotFamily(&'static str),
    #[error("values {0} and {1} are not sufficiently distinct")]
    NotDistinct(f64, f64),
    #[error("trial {trial} hit the round cap of {cap}")]
    RoundCap { trial: u64, cap: u64 },
    #[error("method unavailable: {0}")]
    MethodUnavailable(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "E_PARSE",
            Error::WeightRange { .. } => "E_WEIGHT_RANGE",
            Error::DupEdge { .. } => "E_DUP_EDGE",
            Error::SelfLoop(_) => "E_SELF_LOOP",
            Error::VertexRange { .. } => "E_VERTEX_RANGE",
            Error::Arity(_) => "E_ARITY",
            Error::TooLarge(_) => "E_TOO_LARGE",
            Error::NotForceable(_) => "E_NOT_FORCEABLE",
            Error::StateLimit { .. } => "E_STATE_LIMIT",
            Error::EmptySet => "E_EMPTY_SET",
            Error::Singular { .. } => "E_SINGULAR",
            Error::NoConverge { .. } => "E_NO_CONVERGE",
            Error::AlphaRange(_) => "E_ALPHA_RANGE",
            Error::NotFamily(_) => "E_NOT_FAMILY",
            Error::NotDistinct(..) => "E_NOT_DISTINCT",
            Error::RoundCap { .. } => "E_ROUND_CAP",
            Error::MethodUnavailable(_) => "E_METHOD_UNAVAILABLE",
            Error::Config(_) => "E_CONFIG",
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaRange(alpha))
    }
}
