//! Shared error type for the engine.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the numerical engine.
///
/// The evolution kernel refuses to clamp: an attachment probability outside
/// [0, 1] means the run was started too early for the requested model, and
/// the only honest response is to fail loudly and let the caller pick a
/// later start node.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An attachment probability left [0, 1], or its denominator was not
    /// positive. Carries the step time and a human-readable diagnosis.
    #[error("attachment probability at time {t} is invalid: {reason}")]
    OutOfRangeProbability { t: f64, reason: String },

    /// A node/time interval was empty or inverted.
    #[error("empty range: start {start} exceeds end {end}")]
    EmptyRange { start: u64, end: u64 },

    /// A run would cover a node whose initial degree is zero (the chain has
    /// no state to start from). Logarithmic growth admits no node before
    /// i = 3, for example.
    #[error("node {i} joins with initial degree 0; start the run at a later node")]
    DegenerateSegment { i: u64 },

    /// A quantity that must be strictly positive was not (e.g. the total
    /// degree of the logarithmic family is only defined for t > e).
    #[error("{quantity} must be positive (got {value})")]
    NonPositive { quantity: &'static str, value: f64 },

    /// The requested closed form does not exist for this family.
    #[error("{0}")]
    Unsupported(&'static str),

    /// A fit or estimate was asked for with too little usable data.
    #[error("need at least {needed} usable points, found {found}")]
    InsufficientPoints { needed: usize, found: usize },

    /// A fit range was requested on a distribution with no entries.
    #[error("distribution has no entries")]
    EmptyDistribution,

    /// A simulation step wanted more distinct link targets than nodes exist.
    #[error("step {i} wants {wanted} distinct targets but only {available} nodes exist")]
    InsufficientNodes { i: u64, wanted: u64, available: u64 },

    /// Replicated simulation runs disagree on a field that must be shared.
    #[error("runs disagree on {field}; replications must share model and horizon")]
    MismatchedRuns { field: &'static str },

    /// Model parameters outside their domain (m = 0, theta not in [0, 1), ...).
    #[error("invalid model: {reason}")]
    InvalidModel { reason: String },
}
