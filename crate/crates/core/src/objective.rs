//! Effectiveness of a truth-spreading strategy under a per-unit-time budget.
//!
//! A strategy `(γ1, γ2)` costs `c1 γ1 + c2 γ2` per unit time and must spend
//! exactly the budget `B`. Its effectiveness is the expected number of
//! conversions to the truth over `[0, T]`:
//! `E = γ1 ∫ Σ U_i Σ b_ji T_j + γ2 ∫ Σ R_i Σ b_ji T_j`, and its cost
//! effectiveness is `E / (B T)`.

use serde::{Deserialize, Serialize};

use crate::dynamics::{default_dt, integrate_endpoint, ExpectedState, UrtuParams};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Relative tolerance for lying on the budget line.
pub const BUDGET_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    pub gamma1: f64,
    pub gamma2: f64,
}

/// One containment problem: both networks, the uncontrollable rates, the
/// horizon, the budget with its two cost coefficients and the initial
/// expected state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RcInstance {
    pub rumor_network: DirectedGraph,
    pub truth_network: DirectedGraph,
    pub beta1: f64,
    pub beta2: f64,
    pub delta: f64,
    pub horizon: f64,
    pub budget: f64,
    pub c1: f64,
    pub c2: f64,
    pub init: ExpectedState,
}

impl RcInstance {
    pub fn n(&self) -> usize {
        self.init.n()
    }

    /// Checks shapes and signs. A zero budget is accepted; it makes the
    /// admissible set the single point `(0, 0)`.
    pub fn validate(&self) -> Result<()> {
        self.init.validate()?;
        let n = self.n();
        if self.rumor_network.n() != n || self.truth_network.n() != n {
            return Err(Error::domain(format!(
                "networks have {} and {} nodes but the initial state has {n}",
                self.rumor_network.n(),
                self.truth_network.n()
            )));
        }
        for (name, v) in [
            ("beta1", self.beta1),
            ("beta2", self.beta2),
            ("delta", self.delta),
            ("budget", self.budget),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!("{name} = {v} must be finite and >= 0")));
            }
        }
        for (name, v) in [("horizon", self.horizon), ("c1", self.c1), ("c2", self.c2)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::domain(format!("{name} = {v} must be finite and > 0")));
            }
        }
        Ok(())
    }

    /// Largest admissible `γ1`, reached when the whole budget goes to it.
    pub fn gamma1_max(&self) -> f64 {
        self.budget / self.c1
    }

    pub fn params(&self, strategy: Strategy) -> UrtuParams {
        UrtuParams {
            beta1: self.beta1,
            beta2: self.beta2,
            gamma1: strategy.gamma1,
            gamma2: strategy.gamma2,
            delta: self.delta,
        }
    }

    pub fn on_budget_line(&self, s: Strategy) -> bool {
        let spend = self.c1 * s.gamma1 + self.c2 * s.gamma2;
        s.gamma1 >= 0.0
            && s.gamma2 >= 0.0
            && (spend - self.budget).abs() <= BUDGET_TOL * self.budget.max(f64::MIN_POSITIVE)
    }

    /// The admissible strategy with the given `γ1`.
    pub fn strategy_at(&self, gamma1: f64) -> Result<Strategy> {
        Ok(Strategy {
            gamma1,
            gamma2: gamma2_of(self, gamma1)?,
        })
    }

    pub fn default_dt(&self) -> f64 {
        default_dt(self.horizon)
    }
}

/// `γ2 = (B - c1 γ1) / c2`, the rate the remaining budget buys.
pub fn gamma2_of(instance: &RcInstance, gamma1: f64) -> Result<f64> {
    let hi = instance.gamma1_max();
    if !gamma1.is_finite() || gamma1 < 0.0 || gamma1 > hi * (1.0 + BUDGET_TOL) {
        return Err(Error::domain(format!("gamma1 = {gamma1} outside [0, {hi}]")));
    }
    Ok(((instance.budget - instance.c1 * gamma1) / instance.c2).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectivenessReport {
    pub gamma1: f64,
    pub gamma2: f64,
    /// Conversions of uncertain persons.
    #[serde(rename = "eU")]
    pub e_uncertain: f64,
    /// Conversions of rumor-believers.
    #[serde(rename = "eR")]
    pub e_rumor: f64,
    #[serde(rename = "eTotal")]
    pub e_total: f64,
    #[serde(rename = "costEffectiveness")]
    pub cost_effectiveness: f64,
    pub dt: f64,
}

impl EffectivenessReport {
    pub fn strategy(&self) -> Strategy {
        Strategy {
            gamma1: self.gamma1,
            gamma2: self.gamma2,
        }
    }
}

/// `E / (B T)`, taken as 0 for a zero budget with no effect.
pub fn cost_effectiveness(e_total: f64, budget: f64, horizon: f64) -> f64 {
    let spend = budget * horizon;
    if spend == 0.0 && e_total == 0.0 {
        0.0
    } else {
        e_total / spend
    }
}

/// Integrates the dynamics under `strategy` and turns the accumulated
/// integrals into conversion counts. `dt = None` uses the default step.
pub fn effectiveness(
    instance: &RcInstance,
    strategy: Strategy,
    dt: Option<f64>,
) -> Result<EffectivenessReport> {
    instance.validate()?;
    if !instance.on_budget_line(strategy) {
        return Err(Error::domain(format!(
            "strategy ({}, {}) spends {} but the budget is {}",
            strategy.gamma1,
            strategy.gamma2,
            instance.c1 * strategy.gamma1 + instance.c2 * strategy.gamma2,
            instance.budget
        )));
    }
    let dt = dt.unwrap_or_else(|| instance.default_dt());
    let end = integrate_endpoint(
        &instance.init,
        &instance.params(strategy),
        &instance.rumor_network,
        &instance.truth_network,
        instance.horizon,
        dt,
    )?;
    let e_uncertain = strategy.gamma1 * end.acc_uncertain;
    let e_rumor = strategy.gamma2 * end.acc_rumor;
    let e_total = e_uncertain + e_rumor;
    Ok(EffectivenessReport {
        gamma1: strategy.gamma1,
        gamma2: strategy.gamma2,
        e_uncertain,
        e_rumor,
        e_total,
        cost_effectiveness: cost_effectiveness(e_total, instance.budget, instance.horizon),
        dt,
    })
}
