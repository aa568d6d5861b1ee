//! Closed-form baselines: continuum (mean-field) and master-equation
//! results for the constant family, and the continuum predictions for the
//! power family. These are the convergence references the numerical engine
//! is validated against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Family, GrowthModel};

/// Continuum-theory exponents for a growth model: `P(k, t) ≈ c·t^z·k^(−γ)`
/// and per-node growth `k_i(t) ~ (t/i)^β`.
///
/// `z = 0` means the distribution is stationary (its amplitude does not
/// drift with network age).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticPrediction {
    pub gamma: f64,
    pub c: f64,
    pub z: f64,
    pub beta: f64,
}

/// Mean-field tail density for the constant family: `2m²·k⁻³`.
/// Asymptotic, not normalized.
pub fn mean_field_pk(m: u64, k: u64) -> f64 {
    2.0 * (m * m) as f64 / (k as f64).powi(3)
}

/// Master-equation degree distribution for the constant family:
/// `2m(m+1) / (k(k+1)(k+2))` for `k ≥ m`. Sums to exactly 1 over `k ≥ m`.
pub fn master_equation_pk(m: u64, k: u64) -> f64 {
    let m = m as f64;
    let k = k as f64;
    2.0 * m * (m + 1.0) / (k * (k + 1.0) * (k + 2.0))
}

/// Continuum predictions for the power family:
/// `γ = (3−θ)/(1−θ)`, `z = 2θ/(1−θ)`, `β = (1−θ)/2`, and amplitude
/// `c = (2/(1−θ))·m^(2/(1−θ))` (the time factor `t^z` is reported through
/// `z`, not folded into `c`, so finite-time fits stay comparable).
pub fn power_model_prediction(m: u64, theta: f64) -> Result<AnalyticPrediction> {
    if m == 0 || !(0.0..1.0).contains(&theta) {
        return Err(Error::InvalidModel {
            reason: format!(
                "power prediction needs m ≥ 1 and theta in [0, 1), got m={m}, theta={theta}"
            ),
        });
    }
    let q = 1.0 - theta;
    Ok(AnalyticPrediction {
        gamma: (3.0 - theta) / q,
        c: (2.0 / q) * (m as f64).powf(2.0 / q),
        z: 2.0 * theta / q,
        beta: q / 2.0,
    })
}

/// Total degree of the network at (continuous) time `t`: `2mt` for the
/// constant family, `(2m/(θ+1))·t^(θ+1)` for power, `2mt(ln t − 1)` for
/// logarithmic (defined only for `t > e`).
pub fn total_degree(model: &GrowthModel, t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::NonPositive {
            quantity: "time t",
            value: t,
        });
    }
    let m = model.m as f64;
    match model.family {
        Family::Constant => Ok(2.0 * m * t),
        Family::Power => Ok(2.0 * m / (model.theta + 1.0) * t.powf(model.theta + 1.0)),
        Family::Logarithmic => {
            let total = 2.0 * m * t * (t.ln() - 1.0);
            if total.is_nan() || total <= 0.0 {
                return Err(Error::NonPositive {
                    quantity: "logarithmic total degree (needs t > e)",
                    value: total,
                });
            }
            Ok(total)
        }
    }
}

/// Continuum trajectory of the expected degree of the node that arrived at
/// time `i`, evaluated at time `t ≥ i`: `m(t/i)^(1/2)` for the constant
/// family and `m·t^θ·(t/i)^((1−θ)/2)` for power.
///
/// No closed-form trajectory is known for the logarithmic family.
pub fn continuum_trajectory(model: &GrowthModel, i: f64, t: f64) -> Result<f64> {
    if !(i >= 1.0 && i <= t) {
        return Err(Error::InvalidModel {
            reason: format!("trajectory needs 1 ≤ i ≤ t, got i={i}, t={t}"),
        });
    }
    let m = model.m as f64;
    match model.family {
        Family::Constant => Ok(m * (t / i).sqrt()),
        Family::Power => Ok(m * t.powf(model.theta) * (t / i).powf((1.0 - model.theta) / 2.0)),
        Family::Logarithmic => Err(Error::Unsupported(
            "no closed-form trajectory exists for the logarithmic family",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn mean_field_values() {
        assert_relative_eq!(mean_field_pk(3, 3), 18.0 / 27.0);
        assert_relative_eq!(mean_field_pk(1, 1), 2.0);
        // Cubic scaling: doubling k divides the density by 8.
        assert_relative_eq!(mean_field_pk(2, 10), 8.0 * mean_field_pk(2, 20));
    }

    #[test]
    fn master_equation_values() {
        assert_relative_eq!(master_equation_pk(1, 1), 4.0 / 6.0);
        assert_relative_eq!(master_equation_pk(3, 3), 24.0 / 60.0);
    }

    #[test]
    fn master_equation_sums_to_one() {
        for m in [1u64, 2, 5] {
            let mut sum = 0.0;
            let mut prev = 0.0;
            for k in m..1_000_000 {
                sum += master_equation_pk(m, k);
                assert!(sum >= prev, "partial sums must grow monotonically");
                prev = sum;
            }
            assert!(sum < 1.0);
            assert_relative_eq!(sum, 1.0, max_relative = 1e-5);
            // The partial-fraction telescope gives the remainder exactly.
            let k_last = 1_000_000f64;
            let m_f = m as f64;
            let tail = m_f * (m_f + 1.0) / (k_last * (k_last + 1.0));
            assert_relative_eq!(sum + tail, 1.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn master_to_mean_field_ratio() {
        // Both decay ~k⁻³; the coefficient ratio is (m+1)/m.
        for m in [1u64, 3, 7] {
            let k = 100_000;
            let ratio = master_equation_pk(m, k) / mean_field_pk(m, k);
            assert_relative_eq!(ratio, (m as f64 + 1.0) / m as f64, max_relative = 1e-4);
        }
    }

    #[test]
    fn power_prediction_values() {
        let p = power_model_prediction(1, 0.2).unwrap();
        assert_relative_eq!(p.gamma, 3.5);
        assert_relative_eq!(p.z, 0.5);
        assert_relative_eq!(p.beta, 0.4);

        let ba = power_model_prediction(2, 0.0).unwrap();
        assert_relative_eq!(ba.gamma, 3.0);
        assert_relative_eq!(ba.z, 0.0);
        assert_relative_eq!(ba.beta, 0.5);
        assert_relative_eq!(ba.c, 8.0); // 2m² at θ = 0

        let steep = power_model_prediction(1, 0.5).unwrap();
        assert_relative_eq!(steep.gamma, 5.0);
        assert_relative_eq!(steep.z, 2.0);
    }

    #[test]
    fn power_prediction_is_continuous_near_zero_theta() {
        let at_zero = power_model_prediction(3, 0.0).unwrap();
        let near_zero = power_model_prediction(3, 1e-9).unwrap();
        assert_relative_eq!(at_zero.gamma, near_zero.gamma, max_relative = 1e-8);
        assert_relative_eq!(at_zero.c, near_zero.c, max_relative = 1e-7);
        assert!(power_model_prediction(3, 1.0).is_err());
    }

    #[test]
    fn total_degree_values() {
        let constant = GrowthModel::constant(3).unwrap();
        assert_relative_eq!(total_degree(&constant, 100.0).unwrap(), 600.0);

        let power = GrowthModel::power(1, 0.2).unwrap();
        assert_relative_eq!(total_degree(&power, 1.0).unwrap(), 2.0 / 1.2);

        let log = GrowthModel::logarithmic(1).unwrap();
        let e2 = std::f64::consts::E * std::f64::consts::E;
        assert_relative_eq!(
            total_degree(&log, e2).unwrap(),
            2.0 * e2,
            max_relative = 1e-12
        );
        assert!(matches!(
            total_degree(&log, 2.0),
            Err(Error::NonPositive { .. })
        ));
    }

    #[test]
    fn trajectory_values() {
        let constant = GrowthModel::constant(2).unwrap();
        assert_relative_eq!(continuum_trajectory(&constant, 7.0, 7.0).unwrap(), 2.0);

        let ba = GrowthModel::constant(1).unwrap();
        assert_relative_eq!(continuum_trajectory(&ba, 100.0, 10_000.0).unwrap(), 10.0);

        let power = GrowthModel::power(1, 0.2).unwrap();
        let t = 123.0;
        assert_relative_eq!(continuum_trajectory(&power, t, t).unwrap(), t.powf(0.2));

        let log = GrowthModel::logarithmic(1).unwrap();
        assert!(matches!(
            continuum_trajectory(&log, 10.0, 100.0),
            Err(Error::Unsupported(_))
        ));
        assert!(continuum_trajectory(&ba, 200.0, 100.0).is_err());
    }
}
