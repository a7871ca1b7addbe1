use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("projective planes are only supported for prime order, got q = {0}")]
    NonPrimeOrder(u64),

    #[error("graph is disconnected: no path between vertices {0} and {1}")]
    Disconnected(usize, usize),

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("zombie at vertex {0} already shares the survivor's vertex")]
    AlreadyCaptured(usize),

    #[error("illegal survivor move from {from} to {to}")]
    IllegalMove { from: usize, to: usize },

    #[error(
        "state space of {states} states exceeds the budget of {budget}; \
         use Monte Carlo estimation instead"
    )]
    BudgetExceeded { states: u128, budget: u128 },

    #[error("no k <= {k_max} satisfies the threshold")]
    ThresholdNotReached { k_max: usize },

    #[error("{0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
