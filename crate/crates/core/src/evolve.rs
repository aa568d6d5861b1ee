//! Density evolution of the degree chains.
//!
//! Each node's degree is a pure-birth chain started at its initial degree,
//! so its distribution at time `t` is a vector pushed through `t − i`
//! bidiagonal transition rows. The network's degree distribution is the
//! average of those per-node vectors — but computing one vector per node
//! costs `O(t)` each. Because all chains born inside one constant-`m_i`
//! segment share the same transition rows (shifted in time), the sum over a
//! segment telescopes into a *single* vector pass: evolve an accumulator
//! through the same rows and re-inject a fresh unit of mass at the birth
//! degree once per covered node ([`accumulate_segment`]). One pass per
//! segment instead of one per node is what makes `t = 10⁵`-scale runs cheap.
//!
//! Truncation: probability mass deep in the tail decays like `k⁻³` or
//! faster, while exact vectors grow one entry per step. With a truncation
//! budget `eps > 0` each accumulator drops a trailing block of entries
//! whose mass is below `eps/(t − a + 1)` per step (`a` = segment start) and
//! records it in `dropped_mass` — never renormalizing, so conservation
//! stays auditable: live mass + dropped mass = injected mass to within
//! rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{segment_plan, GrowthModel, Segment};

/// A probability vector over degrees, stored dense from `offset` upward.
///
/// `values[j]` is the probability of degree `offset + j`. For an
/// accumulator the "probabilities" sum to the number of injected nodes
/// rather than 1. `dropped_mass` is everything truncation has removed so
/// far.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    pub offset: u64,
    pub values: Vec<f64>,
    pub dropped_mass: f64,
}

impl ProbVector {
    /// A unit of mass concentrated at degree `offset`.
    pub fn point_mass(offset: u64) -> Self {
        ProbVector {
            offset,
            values: vec![1.0],
            dropped_mass: 0.0,
        }
    }

    /// Live mass plus truncated mass.
    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() + self.dropped_mass
    }

    /// Smallest and largest tracked degree.
    pub fn support(&self) -> (u64, u64) {
        (self.offset, self.offset + self.values.len() as u64 - 1)
    }

    /// Probability of degree `k` (zero outside the tracked band).
    pub fn probability(&self, k: u64) -> f64 {
        if k < self.offset {
            return 0.0;
        }
        self.values
            .get((k - self.offset) as usize)
            .copied()
            .unwrap_or(0.0)
    }
}

/// The assembled degree distribution `P(k, t)` over the nodes that arrived
/// in `[start, t]`, with zero-probability degrees omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeDistribution {
    pub model: GrowthModel,
    pub t: u64,
    #[serde(rename = "S")]
    pub start: u64,
    /// `(k, P(k))` pairs, strictly increasing in `k`, every `p > 0`.
    pub entries: Vec<(u64, f64)>,
    /// Truncated probability, already divided by the node count; the live
    /// entries sum to `1 − dropped_mass_fraction` up to rounding.
    pub dropped_mass_fraction: f64,
}

impl DegreeDistribution {
    /// Number of nodes the distribution averages over.
    pub fn node_count(&self) -> u64 {
        self.t - self.start + 1
    }

    /// Sum of the live probabilities.
    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(|&(_, p)| p).sum()
    }

    /// Probability of degree `k` (zero if absent).
    pub fn probability(&self, k: u64) -> f64 {
        self.entries
            .binary_search_by_key(&k, |&(kk, _)| kk)
            .map(|idx| self.entries[idx].1)
            .unwrap_or(0.0)
    }
}

/// One evolution step in place: apply the transition rows of step time `s`,
/// then truncate the tail against `eps_step`.
///
/// The advance probability is linear in the degree, so validating it at the
/// top tracked degree bounds every lower entry; the check costs one
/// comparison per step instead of one per entry.
fn advance_step(model: &GrowthModel, vec: &mut ProbVector, s: u64, eps_step: f64) -> Result<()> {
    let slope = model.rate_slope(s as f64)?;
    let len = vec.values.len();
    let top_degree = vec.offset + len as u64 - 1;
    let p_top = slope * top_degree as f64;
    if p_top > 1.0 {
        return Err(Error::OutOfRangeProbability {
            t: s as f64,
            reason: format!(
                "degree {top_degree} gives probability {p_top:.6e} > 1; start the run at a later node"
            ),
        });
    }

    // Backward sweep keeps the update single-buffer: entry j+1 is finished
    // before entry j is overwritten.
    vec.values.push(0.0);
    for j in (0..len).rev() {
        let advance = slope * (vec.offset + j as u64) as f64;
        let v = vec.values[j];
        vec.values[j + 1] += v * advance;
        vec.values[j] = v * (1.0 - advance);
    }

    if eps_step > 0.0 {
        truncate_tail(vec, eps_step);
    }
    // Very long exact runs underflow the deepest tail entries to exact 0.0;
    // those carry no mass and are trimmed regardless of eps so that the
    // trailing entry stays positive.
    while vec.values.len() > 1 && vec.values.last() == Some(&0.0) {
        vec.values.pop();
    }
    Ok(())
}

/// Drop the longest trailing block whose total mass stays below `eps_step`,
/// moving that mass into `dropped_mass`.
fn truncate_tail(vec: &mut ProbVector, eps_step: f64) {
    let mut cum = 0.0;
    let mut keep = vec.values.len();
    while keep > 1 {
        let with_next = cum + vec.values[keep - 1];
        if with_next < eps_step {
            cum = with_next;
            keep -= 1;
        } else {
            break;
        }
    }
    if keep < vec.values.len() {
        vec.values.truncate(keep);
        vec.dropped_mass += cum;
    }
}

fn validate_eps(eps: f64) -> Result<()> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidModel {
            reason: format!("truncation budget eps must be a finite value ≥ 0, got {eps}"),
        });
    }
    Ok(())
}

/// Distribution of the degree at time `t` of the single node that arrived
/// at time `i`.
///
/// With `eps = 0` the result is exact and its support is the full reachable
/// band `[m_i, m_i + t − i]` (up to f64 underflow at the deepest tail).
pub fn evolve_node(model: &GrowthModel, i: u64, t: u64, eps: f64) -> Result<ProbVector> {
    if i < 1 || i > t {
        return Err(Error::EmptyRange { start: i, end: t });
    }
    validate_eps(eps)?;
    let m_i = model.initial_degree(i);
    if m_i == 0 {
        return Err(Error::DegenerateSegment { i });
    }
    let mut vec = ProbVector::point_mass(m_i);
    let eps_step = eps / (t - i + 1) as f64;
    for s in i..t {
        advance_step(model, &mut vec, s, eps_step)?;
    }
    Ok(vec)
}

/// Telescoped accumulation: the entrywise sum of `evolve_node(i, t)` over
/// every node `i` in the segment, computed in one pass.
///
/// All chains in the segment start at the same degree and see the same
/// transition row at any given step time, so evolving a single accumulator
/// and re-injecting a unit of mass at the birth degree after each of the
/// first `b − a` steps reproduces the sum exactly. Total mass is the node
/// count `b − a + 1` (minus truncation).
pub fn accumulate_segment(
    model: &GrowthModel,
    segment: &Segment,
    t: u64,
    eps: f64,
) -> Result<ProbVector> {
    let Segment {
        start: a,
        end: b,
        initial_degree: m_seg,
    } = *segment;
    if a < 1 || a > b || b > t {
        return Err(Error::EmptyRange {
            start: a,
            end: b.min(t),
        });
    }
    validate_eps(eps)?;
    if m_seg == 0 {
        return Err(Error::DegenerateSegment { i: a });
    }
    debug_assert_eq!(
        model.initial_degree(a),
        m_seg,
        "segment not from a valid plan"
    );

    let mut acc = ProbVector::point_mass(m_seg);
    let eps_step = eps / (t - a + 1) as f64;
    for s in a..t {
        advance_step(model, &mut acc, s, eps_step)?;
        if s < b {
            // The node arriving at time s+1 starts its chain here, at the
            // segment's shared birth degree.
            acc.values[0] += 1.0;
        }
    }
    Ok(acc)
}

/// The degree distribution of the whole grown network (seed nodes excluded):
/// accumulate every segment of the plan for `[start, t]`, align by absolute
/// degree, and divide by the node count `t − start + 1`.
pub fn degree_distribution(
    model: &GrowthModel,
    start: u64,
    t: u64,
    eps: f64,
) -> Result<DegreeDistribution> {
    let plan = segment_plan(model, start, t)?;
    let nodes = (t - start + 1) as f64;

    // Segments are processed in their plan order and summed into a dense
    // grid keyed by absolute degree, so the result is reproducible
    // bit-for-bit for a given build.
    let k_floor = plan.min_initial_degree();
    let mut dense: Vec<f64> = Vec::new();
    let mut dropped = 0.0;
    for segment in &plan.segments {
        let acc = accumulate_segment(model, segment, t, eps)?;
        dropped += acc.dropped_mass;
        let base = (acc.offset - k_floor) as usize;
        if dense.len() < base + acc.values.len() {
            dense.resize(base + acc.values.len(), 0.0);
        }
        for (j, v) in acc.values.iter().enumerate() {
            dense[base + j] += v;
        }
    }

    // Filter after the division: a subnormal accumulator entry can underflow
    // to exact zero when divided by the node count.
    let entries = dense
        .iter()
        .enumerate()
        .map(|(j, &v)| (k_floor + j as u64, v / nodes))
        .filter(|&(_, p)| p > 0.0)
        .collect();
    Ok(DegreeDistribution {
        model: *model,
        t,
        start,
        entries,
        dropped_mass_fraction: dropped / nodes,
    })
}

/// Exact expectation of the degree chain of the node that arrived at time
/// `i`, evaluated at time `t`.
///
/// Because the advance probability is linear in `k` on the reachable band,
/// the expectation obeys the scalar recursion `E(s+1) = E(s)·(1 + slope(s))`
/// — no vector needed. The same validity check as the vector engine applies:
/// the band top `m_i + s − i` must keep its advance probability ≤ 1.
pub fn expected_degree(model: &GrowthModel, i: u64, t: u64) -> Result<f64> {
    if i < 1 || i > t {
        return Err(Error::EmptyRange { start: i, end: t });
    }
    let m_i = model.initial_degree(i);
    if m_i == 0 {
        return Err(Error::DegenerateSegment { i });
    }
    let mut expectation = m_i as f64;
    for s in i..t {
        let slope = model.rate_slope(s as f64)?;
        let top_degree = m_i + (s - i);
        let p_top = slope * top_degree as f64;
        if p_top > 1.0 {
            return Err(Error::OutOfRangeProbability {
                t: s as f64,
                reason: format!(
                    "degree {top_degree} gives probability {p_top:.6e} > 1; start the run at a later node"
                ),
            });
        }
        expectation *= 1.0 + slope;
    }
    Ok(expectation)
}
