use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("x = {x} lies outside the domain ({lo}, {hi})")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("recurrence pivot vanishes at step {step}")]
    RecurrencePivot { step: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("series truncated at order {order}, coefficient {requested} unavailable")]
    Truncation { order: usize, requested: usize },

    #[error("accuracy: {what} (bound {bound:e} exceeds tolerance {tol:e})")]
    Accuracy { what: String, bound: f64, tol: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("eigen identity fails at n = {n}: residual {residual}")]
    Eigen { n: usize, residual: String },

    #[error("orthogonality fails at (m, n) = ({m}, {n}): {detail}")]
    Orthogonality { m: usize, n: usize, detail: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
