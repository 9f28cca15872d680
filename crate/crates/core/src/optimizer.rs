//! Most effective strategy on the budget line.
//!
//! Eliminating `γ2 = (B - c1 γ1) / c2` leaves a scalar problem over
//! `γ1 ∈ [0, B/c1]`. The objective is not assumed unimodal: a uniform grid
//! (endpoints included) locates the best cell, then golden-section search
//! refines inside the two grid cells around it. Grid evaluations run on the
//! current rayon pool; the outcome does not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{effectiveness, EffectivenessReport, RcInstance, Strategy};

pub const DEFAULT_GRID_POINTS: usize = 101;

/// `(√5 - 1) / 2`
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub grid_points: usize,
    /// Final golden-section bracket width; `None` means `1e-6 * B / c1`.
    pub refine_tol: Option<f64>,
    /// Integration step; `None` means `min(0.01, T / 1000)`.
    pub dt: Option<f64>,
    /// Keep the `(γ1, E)` grid values in the result.
    pub profile: bool,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            refine_tol: None,
            dt: None,
            profile: false,
        }
    }
}

impl SolverSettings {
    pub fn refine_tol_for(&self, instance: &RcInstance) -> f64 {
        self.refine_tol
            .unwrap_or_else(|| 1e-6 * instance.gamma1_max())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StrategyResult {
    #[serde(flatten)]
    pub report: EffectivenessReport,
    pub evaluations: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid_profile: Option<Vec<(f64, f64)>>,
}

impl StrategyResult {
    pub fn best(&self) -> Strategy {
        self.report.strategy()
    }

    pub fn e_total(&self) -> f64 {
        self.report.e_total
    }

    pub fn cost_effectiveness(&self) -> f64 {
        self.report.cost_effectiveness
    }
}

/// Is `a` a better point than `b`: larger effectiveness, ties to smaller `γ1`.
fn better(a: &EffectivenessReport, b: &EffectivenessReport) -> bool {
    a.e_total > b.e_total || (a.e_total == b.e_total && a.gamma1 < b.gamma1)
}

/// Maximizes effectiveness over the admissible strategies of `instance`.
pub fn solve_rc(instance: &RcInstance, settings: &SolverSettings) -> Result<StrategyResult> {
    instance.validate()?;
    if settings.grid_points < 2 {
        return Err(Error::domain(format!(
            "grid_points = {} must be >= 2",
            settings.grid_points
        )));
    }
    let tol = settings.refine_tol_for(instance);
    let dt = settings.dt;

    if instance.budget == 0.0 {
        let report = effectiveness(instance, Strategy { gamma1: 0.0, gamma2: 0.0 }, dt)?;
        return Ok(StrategyResult {
            report,
            evaluations: 1,
            grid_profile: settings.profile.then(|| vec![(0.0, report.e_total)]),
        });
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::domain(format!("refine_tol = {tol} must be > 0")));
    }

    let hi = instance.gamma1_max();
    let last = settings.grid_points - 1;
    let grid_x = |k: usize| {
        if k == last {
            hi
        } else {
            hi * k as f64 / last as f64
        }
    };
    let eval = |g1: f64| effectiveness(instance, instance.strategy_at(g1)?, dt);

    let grid: Vec<EffectivenessReport> = (0..=last)
        .into_par_iter()
        .map(|k| eval(grid_x(k)))
        .collect::<Result<_>>()?;
    let mut evaluations = grid.len();

    let k_best = (1..grid.len()).fold(0, |best, k| if better(&grid[k], &grid[best]) { k } else { best });
    let mut best = grid[k_best];

    let mut a = grid_x(k_best.saturating_sub(1));
    let mut b = grid_x((k_best + 1).min(last));
    if b - a > tol {
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = eval(c)?;
        let mut fd = eval(d)?;
        evaluations += 2;
        for r in [&fc, &fd] {
            if better(r, &best) {
                best = *r;
            }
        }
        while b - a > tol {
            if fc.e_total >= fd.e_total {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = eval(c)?;
                if better(&fc, &best) {
                    best = fc;
                }
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = eval(d)?;
                if better(&fd, &best) {
                    best = fd;
                }
            }
            evaluations += 1;
        }
    }

    Ok(StrategyResult {
        report: best,
        evaluations,
        grid_profile: settings
            .profile
            .then(|| grid.iter().map(|r| (r.gamma1, r.e_total)).collect()),
    })
}

/// Cost effectiveness of the most effective strategy under default settings.
pub fn highest_cost_effectiveness(instance: &RcInstance) -> Result<f64> {
    Ok(solve_rc(instance, &SolverSettings::default())?.cost_effectiveness())
}
