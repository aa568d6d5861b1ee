//! Power-law fitting of degree distributions and estimation of the
//! non-stationary exponent `z` (the growth rate of the fitted amplitude
//! with network age, `c(t) ~ t^z`).
//!
//! Fits are unweighted ordinary least squares in log10–log10 space. Two
//! range rules are provided:
//!
//! * [`default_fit_range`] — the widest defensible window: from the first
//!   positive-probability degree up to the expected-count-≥-1 threshold
//!   `p ≥ 1/(t − S + 1)`. Simple and reproducible, but it includes the
//!   curved head of the distribution (and, for varying-`m` families, the
//!   non-monotone bulge below the largest birth degree), so its exponents
//!   read low.
//! * [`tail_fit_range`] — the window used for exponent reporting: anchored
//!   past the head/bulge so only the settled power-law tail is fitted,
//!   still capped at the same threshold, which sits safely left of the
//!   finite-size cliff at every scale. Calibrated choices documented on the
//!   function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::DegreeDistribution;
use crate::kernel::{segment_plan, Family};

/// Result of a power-law fit `p(k) ≈ c·k^(−gamma)` over `[k_min, k_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub gamma: f64,
    pub c: f64,
    pub k_min: u64,
    pub k_max: u64,
    /// Root-mean-square residual in log10 space.
    pub residual_rms: f64,
    pub n_points: usize,
}

fn ols(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let x_bar = points.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let y_bar = points.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in points {
        sxx += (x - x_bar) * (x - x_bar);
        sxy += (x - x_bar) * (y - y_bar);
    }
    let slope = sxy / sxx;
    let intercept = y_bar - slope * x_bar;
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    (slope, intercept, (ss_res / n).sqrt())
}

/// Unweighted log–log least squares over the entries with `p > 0` in
/// `[k_min, k_max]`. Zero-probability entries are skipped; fewer than three
/// usable points is an error.
pub fn fit_power_law(dist: &DegreeDistribution, k_min: u64, k_max: u64) -> Result<FitResult> {
    let points: Vec<(f64, f64)> = dist
        .entries
        .iter()
        .filter(|&&(k, p)| k >= k_min && k <= k_max && p > 0.0)
        .map(|&(k, p)| ((k as f64).log10(), p.log10()))
        .collect();
    if points.len() < 3 {
        return Err(Error::InsufficientPoints {
            needed: 3,
            found: points.len(),
        });
    }
    let (slope, intercept, residual_rms) = ols(&points);
    Ok(FitResult {
        gamma: -slope,
        c: 10f64.powf(intercept),
        k_min,
        k_max,
        residual_rms,
        n_points: points.len(),
    })
}

/// The widest defensible fit window: `k_min` = smallest degree with positive
/// probability, `k_max` = largest degree whose probability corresponds to an
/// expected count of at least one node, `p ≥ 1/(t − S + 1)`.
///
/// Degrees beyond that threshold carry less than one expected node and sit
/// in the finite-size cliff where the numerical curve plunges below any
/// power law.
pub fn default_fit_range(dist: &DegreeDistribution) -> Result<(u64, u64)> {
    let k_min = dist
        .entries
        .iter()
        .find(|&&(_, p)| p > 0.0)
        .map(|&(k, _)| k)
        .ok_or(Error::EmptyDistribution)?;
    let threshold = 1.0 / dist.node_count() as f64;
    let k_max = dist
        .entries
        .iter()
        .rev()
        .find(|&&(_, p)| p >= threshold)
        .or_else(|| dist.entries.iter().rev().find(|&&(_, p)| p > 0.0))
        .map(|&(k, _)| k)
        .expect("nonempty by k_min");
    Ok((k_min, k_max))
}

/// The exponent-reporting window: skip the curved head of the distribution
/// and fit only the settled tail.
///
/// Constant family: the head is the region near the birth degree where the
/// exact curve is visibly convex; the window opens at the first degree past
/// the mode whose probability has fallen 1000× below the peak, and closes
/// at the expected-count threshold of [`default_fit_range`].
///
/// Varying-`m` families: the distribution is not even monotone below the
/// largest covered birth degree `M` (most nodes are born late, at high
/// `m_i`, piling mass up to `k ≈ M`). The window is `[⌊1.5·M⌋, ⌊5·M⌋]`
/// (threshold-capped): past the bulge, inside the settled decay.
///
/// Falls back to the default window when fewer than three positive entries
/// survive — tiny runs have no tail to speak of.
pub fn tail_fit_range(dist: &DegreeDistribution) -> Result<(u64, u64)> {
    let (default_lo, default_hi) = default_fit_range(dist)?;
    let candidate = match dist.model.family {
        Family::Constant => {
            let &(mode_k, mode_p) = dist
                .entries
                .iter()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty by default_fit_range");
            dist.entries
                .iter()
                .find(|&&(k, p)| k > mode_k && p > 0.0 && p < mode_p / 1000.0)
                .map(|&(k, _)| (k, default_hi))
        }
        Family::Power | Family::Logarithmic => segment_plan(&dist.model, dist.start, dist.t)
            .ok()
            .map(|plan| {
                let top_birth = plan.max_initial_degree() as f64;
                let lo = (1.5 * top_birth).floor() as u64;
                let hi = default_hi.min((5.0 * top_birth).floor() as u64);
                (lo, hi)
            }),
    };
    if let Some((lo, hi)) = candidate {
        let usable = dist
            .entries
            .iter()
            .filter(|&&(k, p)| k >= lo && k <= hi && p > 0.0)
            .count();
        if lo < hi && usable >= 3 {
            return Ok((lo, hi));
        }
    }
    Ok((default_lo, default_hi))
}

/// Least-squares slope of `log10 c` against `log10 t` over fits taken at
/// different network ages: the non-stationary exponent `z`.
///
/// The fits must use structurally comparable windows (e.g. all from
/// [`tail_fit_range`] at their own `t`); at least two distinct ages are
/// required.
pub fn estimate_nonstationary_exponent(fits: &[(u64, FitResult)]) -> Result<f64> {
    let mut points: Vec<(f64, f64)> = fits
        .iter()
        .filter(|&&(t, ref f)| t > 0 && f.c > 0.0)
        .map(|&(t, ref f)| ((t as f64).log10(), f.c.log10()))
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let distinct = {
        let mut d = points.iter().map(|&(x, _)| x).collect::<Vec<_>>();
        d.dedup();
        d.len()
    };
    if distinct < 2 {
        return Err(Error::InsufficientPoints {
            needed: 2,
            found: distinct,
        });
    }
    if points.len() == 2 {
        let ((x0, y0), (x1, y1)) = (points[0], points[1]);
        return Ok((y1 - y0) / (x1 - x0));
    }
    let (slope, _, _) = ols(&points);
    Ok(slope)
}
