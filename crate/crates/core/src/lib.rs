//! Degree distributions of growing preferential-attachment networks,
//! computed numerically instead of sampled.
//!
//! Networks that grow by preferential attachment — each arriving node links
//! to existing nodes with probability proportional to their degrees — have
//! degree distributions with power-law tails. This crate computes those
//! distributions *exactly* (up to an auditable truncation budget) by
//! treating each node's degree as a pure-birth Markov chain and pushing
//! probability vectors through its time-dependent transitions, instead of
//! estimating them from simulated graphs.
//!
//! The pieces:
//!
//! * [`kernel`] — growth-model families (constant, power, logarithmic link
//!   growth), their attachment probabilities, and the segmentation of
//!   arrival times into constant-initial-degree intervals.
//! * [`evolve`] — density evolution: per-node chains, the telescoped
//!   per-segment accumulation, and assembly of the network's degree
//!   distribution `P(k, t)`.
//! * [`analytic`] — closed-form baselines (mean-field and master-equation
//!   results, power-family exponent predictions) used as references.
//! * [`fit`] — log–log least-squares fitting of the power-law exponent and
//!   amplitude, plus the non-stationary exponent across network ages.
//! * [`sim`] — a Monte Carlo simulator of the same growth processes, the
//!   independent oracle for cross-validation.
//!
//! ```
//! use degflow_core::{degree_distribution, fit_power_law, tail_fit_range, GrowthModel};
//!
//! let model = GrowthModel::constant(1).unwrap();
//! let dist = degree_distribution(&model, 1, 3000, 1e-10).unwrap();
//! let (lo, hi) = tail_fit_range(&dist).unwrap();
//! let fit = fit_power_law(&dist, lo, hi).unwrap();
//! assert!((fit.gamma - 3.0).abs() < 0.2);
//! ```

pub mod analytic;
pub mod error;
pub mod evolve;
pub mod fit;
pub mod kernel;
pub mod sim;

pub use analytic::{
    continuum_trajectory, master_equation_pk, mean_field_pk, power_model_prediction, total_degree,
    AnalyticPrediction,
};
pub use error::{Error, Result};
pub use evolve::{
    accumulate_segment, degree_distribution, evolve_node, expected_degree, DegreeDistribution,
    ProbVector,
};
pub use fit::{
    default_fit_range, estimate_nonstationary_exponent, fit_power_law, tail_fit_range, FitResult,
};
pub use kernel::{segment_plan, Family, GrowthModel, Segment, SegmentPlan, TransitionRow};
pub use sim::{empirical_distribution, links_at, simulate, simulate_batch, SimRun};
