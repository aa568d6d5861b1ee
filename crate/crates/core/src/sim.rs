//! Monte Carlo growing-network simulator: the independent oracle the
//! density-evolution engine is cross-validated against.
//!
//! Growth + preferential attachment, simulated literally: start from a small
//! seed ring, add one node per step, and wire it to distinct existing nodes
//! chosen proportionally to their degrees as of the start of the step.
//! Degree-proportional selection uses the classic repeated-endpoint list —
//! every edge pushes both endpoints onto a flat array, so a uniform draw
//! from the array is a degree-weighted draw over nodes, O(1) per pick.
//! Distinctness is enforced by rejection, which together with the frozen
//! array prefix implements without-replacement sampling (each accepted draw
//! is distributed as if the chosen node's weight had been removed and the
//! rest renormalized).

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::evolve::DegreeDistribution;
use crate::kernel::{Family, GrowthModel};

/// One simulated network replication.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRun {
    pub model: GrowthModel,
    pub t: u64,
    /// The user-facing seed the replication stream was derived from.
    pub seed: u64,
    /// Index of this replication within its batch (0 for a lone run).
    pub rep: u32,
    /// `(arrival time i, final degree)` for every grown node, `i = 1..=t`.
    pub degrees: Vec<(u64, u64)>,
    /// Final degrees of the seed-ring nodes (excluded from distributions).
    pub seed_degrees: Vec<u64>,
    /// Total number of edges, seed ring included.
    pub edges: u64,
}

/// Number of links the node arriving at time `i` brings: the model's step
/// function with a floor of one (a link-less node would be invisible to
/// preferential attachment), capped at the number of nodes already present.
pub fn links_at(model: &GrowthModel, i: u64) -> u64 {
    let desired = match model.family {
        Family::Constant => model.m,
        Family::Power | Family::Logarithmic => model.initial_degree(i).max(1),
    };
    desired.min(model.m0 + i - 1)
}

/// SplitMix64 — the standard 64-bit seed scrambler.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

fn stream_seed(seed: u64, rep: u32) -> u64 {
    splitmix64(seed ^ (rep as u64).wrapping_mul(0x9E3779B97F4A7C15))
}

/// Grow one network for `t` steps. Deterministic in `(model, t, seed)`;
/// equals replication 0 of [`simulate_batch`] with the same seed.
pub fn simulate(model: &GrowthModel, t: u64, seed: u64) -> Result<SimRun> {
    simulate_rep(model, t, seed, 0)
}

/// Grow `reps` independent networks; replication `r` draws from its own
/// generator stream derived from `(seed, r)`.
pub fn simulate_batch(model: &GrowthModel, t: u64, seed: u64, reps: u32) -> Result<Vec<SimRun>> {
    (0..reps)
        .map(|rep| simulate_rep(model, t, seed, rep))
        .collect()
}

fn simulate_rep(model: &GrowthModel, t: u64, seed: u64, rep: u32) -> Result<SimRun> {
    if t < 1 {
        return Err(Error::EmptyRange { start: 1, end: t });
    }
    // Node ids live in the endpoint list as u32.
    if model.m0 + t > u32::MAX as u64 {
        return Err(Error::InvalidModel {
            reason: format!("t = {t} exceeds the simulator's node-id range"),
        });
    }
    let m0 = model.m0 as usize;
    let mut rng = ChaCha12Rng::seed_from_u64(stream_seed(seed, rep));

    // Seed graph: a ring, giving every seed node degree 2 — except m0 = 2,
    // where the "ring" degenerates to a single edge.
    let expected_nodes = m0 + t as usize;
    let mut degrees: Vec<u64> = Vec::with_capacity(expected_nodes);
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * expected_nodes * model.m as usize);
    let mut edges: u64;
    if m0 == 2 {
        degrees.extend([1, 1]);
        endpoints.extend([0, 1]);
        edges = 1;
    } else {
        degrees.resize(m0, 2);
        for node in 0..m0 as u32 {
            let next = (node + 1) % m0 as u32;
            endpoints.push(node);
            endpoints.push(next);
        }
        edges = m0 as u64;
    }

    let mut targets: Vec<u32> = Vec::new();
    let mut seen: HashSet<u32> = HashSet::new();
    for i in 1..=t {
        let existing = m0 as u64 + i - 1;
        let want = links_at(model, i);
        if want > existing {
            return Err(Error::InsufficientNodes {
                i,
                wanted: want,
                available: existing,
            });
        }

        targets.clear();
        if want == existing {
            // Every existing node gets a link; nothing to sample.
            targets.extend(0..existing as u32);
        } else {
            // Draws index the endpoint list as it stood when the step
            // began, so this node's own edges never influence its picks.
            let frozen = endpoints.len();
            if want > 64 {
                seen.clear();
                while (targets.len() as u64) < want {
                    let pick = endpoints[rng.random_range(0..frozen)];
                    if seen.insert(pick) {
                        targets.push(pick);
                    }
                }
            } else {
                while (targets.len() as u64) < want {
                    let pick = endpoints[rng.random_range(0..frozen)];
                    if !targets.contains(&pick) {
                        targets.push(pick);
                    }
                }
            }
        }

        let new_id = (m0 as u64 + i - 1) as u32;
        degrees.push(want);
        for &target in &targets {
            degrees[target as usize] += 1;
            endpoints.push(target);
            endpoints.push(new_id);
        }
        edges += want;
    }

    let seed_degrees = degrees[..m0].to_vec();
    let grown = degrees[m0..]
        .iter()
        .enumerate()
        .map(|(idx, &d)| (idx as u64 + 1, d))
        .collect();
    Ok(SimRun {
        model: *model,
        t,
        seed,
        rep,
        degrees: grown,
        seed_degrees,
        edges,
    })
}

/// Histogram of the final degrees of the nodes that arrived in `[start, t]`,
/// averaged over replications and normalized to a probability distribution.
pub fn empirical_distribution(runs: &[SimRun], start: u64) -> Result<DegreeDistribution> {
    let first = runs.first().ok_or(Error::InsufficientPoints {
        needed: 1,
        found: 0,
    })?;
    for run in runs {
        if run.model != first.model {
            return Err(Error::MismatchedRuns { field: "model" });
        }
        if run.t != first.t {
            return Err(Error::MismatchedRuns { field: "t" });
        }
    }
    if start < 1 || start > first.t {
        return Err(Error::EmptyRange {
            start,
            end: first.t,
        });
    }

    let mut counts: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
    for run in runs {
        for &(i, degree) in &run.degrees[(start - 1) as usize..] {
            debug_assert!(i >= start);
            *counts.entry(degree).or_insert(0) += 1;
        }
    }
    let total = (runs.len() as u64 * (first.t - start + 1)) as f64;
    Ok(DegreeDistribution {
        model: first.model,
        t: first.t,
        start,
        entries: counts
            .into_iter()
            .map(|(k, n)| (k, n as f64 / total))
            .collect(),
        dropped_mass_fraction: 0.0,
    })
}
