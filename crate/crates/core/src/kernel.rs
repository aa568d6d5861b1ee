//! Growth models and the transition structure of their degree chains.
//!
//! A [`GrowthModel`] fixes how many links each arriving node brings
//! (constant `m`, power-growing `m·⌊i^θ⌋`, or logarithmic `m·⌊ln i⌋`) and,
//! from that, the time-dependent probability that an existing node of degree
//! `k` gains a link during one growth step. Degrees never decrease and grow
//! by at most one per step, so each node's degree is a pure-birth chain whose
//! one-step transition row is fully described by a single `advance`
//! probability; [`transition_row`](GrowthModel::transition_row) builds it.
//!
//! For the varying-`m` families the initial degree `m_i` is a step function
//! of the arrival time `i`. [`segment_plan`] partitions an arrival-time range
//! into the maximal intervals on which `m_i` is constant; the evolution
//! engine accumulates one probability vector per interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the per-step link count grows with time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Classic constant growth: every node arrives with `m` links.
    Constant,
    /// The step-`i` arrival brings `m·⌊i^θ⌋` links, `0 ≤ θ < 1`.
    Power,
    /// The step-`i` arrival brings `m·⌊ln i⌋` links.
    Logarithmic,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Constant => "constant",
            Family::Power => "power",
            Family::Logarithmic => "logarithmic",
        })
    }
}

/// A growth model: family plus parameters.
///
/// `theta` is meaningful only for [`Family::Power`] (it is stored as 0
/// otherwise). `m0` is the seed-graph size used by the simulator; the
/// analytic and evolution code never reads it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthModel {
    pub family: Family,
    pub m: u64,
    #[serde(default)]
    pub theta: f64,
    pub m0: u64,
}

/// One row of the degree chain's transition matrix: a degree-`k` node either
/// keeps its degree or gains exactly one link.
///
/// `stay` is computed as `1 − advance`, so the two fields sum to 1 exactly
/// in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionRow {
    pub stay: f64,
    pub advance: f64,
}

/// A maximal arrival-time interval `[start, end]` on which the initial
/// degree is the constant `initial_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: u64,
    pub end: u64,
    pub initial_degree: u64,
}

/// The partition of an arrival-time range into constant-`m_i` segments,
/// ordered by start time (equivalently by initial degree, which is
/// non-decreasing in arrival time for every family).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentPlan {
    pub segments: Vec<Segment>,
}

impl SegmentPlan {
    /// Arrival times at which the initial degree jumps (the start of every
    /// segment).
    pub fn breakpoints(&self) -> Vec<u64> {
        self.segments.iter().map(|s| s.start).collect()
    }

    /// Largest initial degree covered by the plan.
    pub fn max_initial_degree(&self) -> u64 {
        self.segments.last().map_or(0, |s| s.initial_degree)
    }

    /// Smallest initial degree covered by the plan.
    pub fn min_initial_degree(&self) -> u64 {
        self.segments.first().map_or(0, |s| s.initial_degree)
    }
}

/// Floating-point floor with a tiny upward nudge.
///
/// `powf`/`ln` can land a hair below an exact integer (e.g. `32^0.2`
/// evaluating to `1.9999999999999998`), which would shift a segment
/// breakpoint by one. The nudge is far smaller than the spacing between
/// consecutive attainable values for any arrival time this engine can
/// actually evolve (spacing ~ θ·i^(θ−1), still > 1e-9 at i = 10^10), so it
/// can only repair representation error, never invent a jump.
fn nudged_floor(x: f64) -> u64 {
    (x + 1e-9).floor() as u64
}

impl GrowthModel {
    /// Constant family with `m` links per arrival.
    pub fn constant(m: u64) -> Result<Self> {
        Self::validate(Self {
            family: Family::Constant,
            m,
            theta: 0.0,
            m0: Self::default_m0(m),
        })
    }

    /// Power family: arrival `i` brings `m·⌊i^θ⌋` links.
    pub fn power(m: u64, theta: f64) -> Result<Self> {
        Self::validate(Self {
            family: Family::Power,
            m,
            theta,
            m0: Self::default_m0(m),
        })
    }

    /// Logarithmic family: arrival `i` brings `m·⌊ln i⌋` links.
    pub fn logarithmic(m: u64) -> Result<Self> {
        Self::validate(Self {
            family: Family::Logarithmic,
            m,
            theta: 0.0,
            m0: Self::default_m0(m),
        })
    }

    /// Replace the simulator's seed-graph size (default `max(m+1, 3)`).
    pub fn with_m0(mut self, m0: u64) -> Result<Self> {
        self.m0 = m0;
        Self::validate(self)
    }

    fn default_m0(m: u64) -> u64 {
        (m + 1).max(3)
    }

    fn validate(model: Self) -> Result<Self> {
        if model.m == 0 {
            return Err(Error::InvalidModel {
                reason: "m must be at least 1".into(),
            });
        }
        if model.family == Family::Power && !(0.0..1.0).contains(&model.theta) {
            return Err(Error::InvalidModel {
                reason: format!("theta must lie in [0, 1), got {}", model.theta),
            });
        }
        if model.m0 < 2 || model.m0 < model.m {
            return Err(Error::InvalidModel {
                reason: format!(
                    "m0 must be at least max(m, 2), got m0={} with m={}",
                    model.m0, model.m
                ),
            });
        }
        Ok(model)
    }

    /// The step function `⌊g(i)⌋` multiplying `m` in the initial degree:
    /// 1, `⌊i^θ⌋`, or `⌊ln i⌋`.
    pub(crate) fn step_value(&self, i: u64) -> u64 {
        match self.family {
            Family::Constant => 1,
            Family::Power => {
                if self.theta == 0.0 {
                    1
                } else {
                    nudged_floor((i as f64).powf(self.theta))
                }
            }
            Family::Logarithmic => nudged_floor((i as f64).ln()),
        }
    }

    /// Initial degree `m_i` of the node arriving at time `i ≥ 1`.
    ///
    /// Zero is possible (logarithmic growth with `i ≤ 2`, where `⌊ln i⌋ = 0`)
    /// and means the node cannot host a degree chain; runs must start later.
    pub fn initial_degree(&self, i: u64) -> u64 {
        self.m * self.step_value(i)
    }

    /// Coefficient of `k` in the advance probability at step time `s`:
    /// `1/(2s)`, `(θ+1)/(2s)`, or `ln s / (2s(ln s − 1))`.
    ///
    /// Fails when the denominator is not positive (logarithmic growth needs
    /// `s > e`).
    pub fn rate_slope(&self, s: f64) -> Result<f64> {
        let (numer, denom, formula) = match self.family {
            Family::Constant => (1.0, 2.0 * s, "2t"),
            Family::Power => (self.theta + 1.0, 2.0 * s, "2t"),
            Family::Logarithmic => {
                let ln_s = s.ln();
                // Positive only past t = e, which is the family's domain.
                (ln_s, 2.0 * s * (ln_s - 1.0), "2t(ln t − 1)")
            }
        };
        // NaN must fail this gate too, hence the explicit check.
        if denom.is_nan() || denom <= 0.0 {
            return Err(Error::OutOfRangeProbability {
                t: s,
                reason: format!("denominator {formula} = {denom} is not positive"),
            });
        }
        Ok(numer / denom)
    }

    /// Probability that an existing degree-`k` node gains a link during the
    /// growth step at time `t` (the step that adds node `t+1`).
    ///
    /// Linear in `k`: `slope(t)·k`. Fails if the value exceeds 1 — the run
    /// started too early for this degree to be reachable. Exactly 1 is
    /// allowed (a certain advance is still a probability).
    pub fn attach_advance_probability(&self, k: u64, t: f64) -> Result<f64> {
        let p = self.rate_slope(t)? * k as f64;
        if p > 1.0 {
            return Err(Error::OutOfRangeProbability {
                t,
                reason: format!(
                    "degree {k} gives probability {p:.6e} > 1; start the run at a later node"
                ),
            });
        }
        Ok(p)
    }

    /// Full transition row for degree `k` at step time `t`.
    pub fn transition_row(&self, k: u64, t: f64) -> Result<TransitionRow> {
        let advance = self.attach_advance_probability(k, t)?;
        Ok(TransitionRow {
            stay: 1.0 - advance,
            advance,
        })
    }

    /// Default start node for runs of this model.
    ///
    /// Constant: `m` (the first node from which every advance probability is
    /// a probability; starting earlier would demand `m/(2s) > 1`). Power:
    /// the first arrival of the second segment, i.e. the smallest `i` with
    /// `⌊i^θ⌋ = 2` (for θ = 0 there is no second segment and the constant
    /// default applies). Logarithmic: the first arrival of the third
    /// segment, the smallest `i` with `⌊ln i⌋ = 3`.
    ///
    /// For steep growth (large θ, or large `m` in the logarithmic family)
    /// those canonical starts can be born with a degree too high to take a
    /// valid first step; the default then advances to the first segment
    /// whose birth degree can. Segment-start advance probabilities shrink
    /// as segments get later, so later arrivals stay valid too (the
    /// evolution engine independently re-checks every step regardless).
    /// `u64::MAX` signals that no runnable start exists within this
    /// engine's reach.
    pub fn default_start(&self) -> u64 {
        let base = match self.family {
            Family::Constant => return self.m,
            Family::Power => {
                if self.theta == 0.0 {
                    return self.m;
                }
                let guess = 2f64.powf(1.0 / self.theta);
                if guess > 1e15 {
                    // Unreachable scale; any admissible t will reject S > t.
                    return u64::MAX;
                }
                self.first_step_value_at_least(2, guess as u64)
            }
            Family::Logarithmic => self.first_step_value_at_least(3, 3f64.exp() as u64),
        };
        let mut start = base;
        let mut v = self.step_value(start);
        loop {
            if self
                .attach_advance_probability(self.initial_degree(start), start as f64)
                .is_ok()
            {
                return start;
            }
            v += 1;
            let guess = match self.family {
                Family::Power => (v as f64).powf(1.0 / self.theta),
                Family::Logarithmic => (v as f64).exp(),
                Family::Constant => unreachable!("constant family returned above"),
            };
            if guess > 1e15 || v > 1_000_000 {
                return u64::MAX;
            }
            start = self.first_step_value_at_least(v, guess as u64);
        }
    }

    /// Smallest arrival time whose step value reaches `v`, starting the
    /// search near `guess` (float estimate, off by at most a few).
    fn first_step_value_at_least(&self, v: u64, guess: u64) -> u64 {
        let mut i = guess.max(1);
        while self.step_value(i) < v {
            i += 1;
        }
        while i > 1 && self.step_value(i - 1) >= v {
            i -= 1;
        }
        i
    }
}

/// Partition `[start, t]` into maximal constant-`m_i` segments.
///
/// The initial degree is non-decreasing in arrival time, so each segment end
/// is found by binary search instead of a linear scan; the whole plan costs
/// `O(#segments · log t)`.
pub fn segment_plan(model: &GrowthModel, start: u64, t: u64) -> Result<SegmentPlan> {
    if start < 1 || start > t {
        return Err(Error::EmptyRange { start, end: t });
    }
    // Monotonicity means a zero initial degree can only occur at the very
    // first covered arrival.
    if model.initial_degree(start) == 0 {
        return Err(Error::DegenerateSegment { i: start });
    }
    let mut segments = Vec::new();
    let mut a = start;
    while a <= t {
        let v = model.initial_degree(a);
        let mut lo = a;
        let mut hi = t;
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if model.initial_degree(mid) == v {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        segments.push(Segment {
            start: a,
            end: lo,
            initial_degree: v,
        });
        a = lo + 1;
    }
    Ok(SegmentPlan { segments })
}
