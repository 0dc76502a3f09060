use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a graph needs at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("not connected: vertex {0} is unreachable from vertex 0")]
    NotConnected(usize),
    #[error("cost function has {got} entries, graph has {expected} vertices")]
    CostLength { expected: usize, got: usize },
    #[error("weighted distance sum is out of the supported range")]
    Overflow,
    #[error("gate not found for vertex {vertex} (pivot {pivot}): the input is not Helly")]
    GateNotFound { pivot: usize, vertex: usize },
    #[error("pseudo-gate not found for vertex {vertex} (pivot {pivot}): the input is not Helly")]
    PseudoGateNotFound { pivot: usize, vertex: usize },
    #[error(
        "local search exceeded its budget of {budget} steps: probable non-Helly input \
         or budget misconfiguration"
    )]
    StepBudgetExceeded { budget: usize },
    #[error(
        "sampling failure at r = {r}: a candidate misses {far} > {limit} vertices \
         after a fresh restart"
    )]
    SamplingFailure { r: u32, far: usize, limit: usize },
    #[error("instance too large for exact recognition: n = {n} exceeds the limit of {limit} for k = {k}")]
    RecognitionTooLarge { n: usize, k: usize, limit: usize },
    #[error("instance too large for the all-pairs oracle: n = {n} exceeds the limit of {limit}")]
    OracleTooLarge { n: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
