//! Batch solving and one-parameter sweeps of the highest cost effectiveness.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::ExpectedState;
use crate::error::{Error, Result};
use crate::graph::{barabasi_albert, named_small_graph, realistic_network, watts_strogatz, DirectedGraph};
use crate::objective::RcInstance;
use crate::optimizer::{solve_rc, SolverSettings, StrategyResult};

/// Seed used for the canonical small-world and scale-free networks.
pub const CANONICAL_SEED: u64 = 1;

/// Instance parameter that a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Beta1,
    Beta2,
    Delta,
    Horizon,
    Budget,
    C1,
    C2,
}

impl SweepParam {
    pub const ALL: [SweepParam; 7] = [
        SweepParam::Beta1,
        SweepParam::Beta2,
        SweepParam::Delta,
        SweepParam::Horizon,
        SweepParam::Budget,
        SweepParam::C1,
        SweepParam::C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Beta1 => "beta1",
            SweepParam::Beta2 => "beta2",
            SweepParam::Delta => "delta",
            SweepParam::Horizon => "horizon",
            SweepParam::Budget => "budget",
            SweepParam::C1 => "c1",
            SweepParam::C2 => "c2",
        }
    }

    /// Copy of `base` with this parameter set to `value`.
    pub fn substitute(self, base: &RcInstance, value: f64) -> RcInstance {
        let mut inst = base.clone();
        let slot = match self {
            SweepParam::Beta1 => &mut inst.beta1,
            SweepParam::Beta2 => &mut inst.beta2,
            SweepParam::Delta => &mut inst.delta,
            SweepParam::Horizon => &mut inst.horizon,
            SweepParam::Budget => &mut inst.budget,
            SweepParam::C1 => &mut inst.c1,
            SweepParam::C2 => &mut inst.c2,
        };
        *slot = value;
        inst
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = SweepParam::ALL.iter().map(|p| p.name()).collect();
                Error::Config(format!(
                    "unknown sweep parameter `{s}`; valid names: {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: RcInstance,
    pub parameter: SweepParam,
    pub values: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::domain("sweep needs at least one value"));
        }
        if self.values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain("sweep values must be strictly ascending"));
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: Result<StrategyResult>,
}

#[derive(Debug)]
pub struct SweepResult {
    pub parameter: SweepParam,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Cost effectiveness per row, `None` where the row failed.
    pub fn cost_effectiveness(&self) -> Vec<Option<f64>> {
        self.rows
            .iter()
            .map(|r| r.outcome.as_ref().ok().map(StrategyResult::cost_effectiveness))
            .collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = (f64, &Error)> {
        self.rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().err().map(|e| (r.value, e)))
    }

    /// `param,value,gamma1,gamma2,eTotal,costEffectiveness`, one line per
    /// row. Failed rows carry `NaN` in the result columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,value,gamma1,gamma2,eTotal,costEffectiveness\n");
        for row in &self.rows {
            let _ = write!(out, "{},{}", self.parameter, row.value);
            match &row.outcome {
                Ok(r) => {
                    let rep = &r.report;
                    let _ = writeln!(
                        out,
                        ",{},{},{},{}",
                        rep.gamma1, rep.gamma2, rep.e_total, rep.cost_effectiveness
                    );
                }
                Err(_) => out.push_str(",NaN,NaN,NaN,NaN\n"),
            }
        }
        out
    }
}

/// Solves every instance; a failure is reported in its own slot.
pub fn run_experiment_table(
    instances: &[RcInstance],
    settings: &SolverSettings,
) -> Vec<Result<StrategyResult>> {
    instances
        .par_iter()
        .map(|inst| solve_rc(inst, settings))
        .collect()
}

/// Solves `spec.base` once per sweep value, in input order.
pub fn run_sweep(spec: &SweepSpec, settings: &SolverSettings) -> Result<SweepResult> {
    spec.validate()?;
    let rows = spec
        .values
        .par_iter()
        .map(|&value| {
            let inst = spec.parameter.substitute(&spec.base, value);
            SweepRow {
                value,
                outcome: inst.validate().and_then(|_| solve_rc(&inst, settings)),
            }
        })
        .collect();
    Ok(SweepResult {
        parameter: spec.parameter,
        rows,
    })
}

/// Shape a sequence of cost effectivenesses is expected to follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    NonDecreasing,
    NonIncreasing,
    /// Rises, then falls: exactly one sign change `+ -` in the successive
    /// differences once differences within the tolerance are dropped.
    SinglePeaked,
}

impl Trend {
    pub fn holds(self, values: &[f64], tol: f64) -> bool {
        let diffs = values.windows(2).map(|w| w[1] - w[0]);
        match self {
            Trend::NonDecreasing => diffs.into_iter().all(|d| d >= -tol),
            Trend::NonIncreasing => diffs.into_iter().all(|d| d <= tol),
            Trend::SinglePeaked => {
                let signs: Vec<bool> = diffs.filter(|d| d.abs() > tol).map(|d| d > 0.0).collect();
                let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
                changes == 1 && signs.first() == Some(&true)
            }
        }
    }
}

/// Networks the built-in experiments are defined on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Network {
    /// One of the nine small connected graphs, 1-based.
    Small(usize),
    /// Watts–Strogatz, n = 50, k = 4, p = 0.1.
    SmallWorld,
    /// Barabási–Albert, n = 50, m = 2.
    ScaleFree,
    /// The bundled 49-node network.
    Realistic,
}

impl Network {
    pub fn build(self) -> DirectedGraph {
        match self {
            Network::Small(i) => named_small_graph(i).expect("index in 1..=9"),
            Network::SmallWorld => watts_strogatz(50, 4, 0.1, CANONICAL_SEED).expect("valid parameters"),
            Network::ScaleFree => barabasi_albert(50, 2, CANONICAL_SEED).expect("valid parameters"),
            Network::Realistic => realistic_network(),
        }
    }

    pub fn short_name(self) -> String {
        match self {
            Network::Small(i) => format!("g{i}"),
            Network::SmallWorld => "sw".into(),
            Network::ScaleFree => "sf".into(),
            Network::Realistic => "re".into(),
        }
    }
}

/// Instance with every node starting at `R_i = T_i = 0.1`.
#[allow(clippy::too_many_arguments)]
pub fn uniform_instance(
    rumor: Network,
    truth: Network,
    beta1: f64,
    beta2: f64,
    delta: f64,
    horizon: f64,
    budget: f64,
    c1: f64,
    c2: f64,
) -> RcInstance {
    let rumor_network = rumor.build();
    let n = rumor_network.n();
    RcInstance {
        rumor_network,
        truth_network: truth.build(),
        beta1,
        beta2,
        delta,
        horizon,
        budget,
        c1,
        c2,
        init: ExpectedState::uniform(n, 0.1, 0.1).expect("0.1 + 0.1 <= 1"),
    }
}

/// The nine problems on pairs of small connected graphs.
pub fn small_graph_table() -> Vec<RcInstance> {
    use Network::Small as G;
    // (rumor, truth, β1, β2, δ, T, c1, c2, B)
    let rows: [(usize, usize, f64, f64, f64, f64, f64, f64, f64); 9] = [
        (1, 1, 0.7, 0.1, 0.1, 35.0, 8.0, 3.0, 10.0),
        (2, 3, 0.7, 0.6, 0.7, 55.0, 4.0, 8.0, 6.0),
        (3, 2, 0.4, 0.3, 0.3, 35.0, 4.0, 6.0, 6.0),
        (4, 5, 0.9, 0.7, 0.7, 50.0, 3.0, 3.0, 6.0),
        (5, 6, 0.1, 0.8, 0.4, 50.0, 5.0, 5.0, 6.0),
        (6, 7, 0.5, 0.8, 0.5, 70.0, 2.0, 4.0, 6.0),
        (7, 8, 0.1, 0.4, 0.2, 40.0, 4.0, 3.0, 4.0),
        (8, 9, 0.5, 0.5, 0.7, 70.0, 9.0, 9.0, 12.0),
        (9, 4, 0.9, 0.6, 0.1, 45.0, 3.0, 3.0, 6.0),
    ];
    rows.iter()
        .map(|&(r, t, b1, b2, d, h, c1, c2, b)| uniform_instance(G(r), G(t), b1, b2, d, h, b, c1, c2))
        .collect()
}

/// The three problems on the 50- and 49-node networks.
pub fn large_network_table() -> Vec<RcInstance> {
    use Network::*;
    vec![
        uniform_instance(SmallWorld, ScaleFree, 0.4, 0.7, 0.5, 30.0, 18.0, 3.0, 9.0),
        uniform_instance(ScaleFree, SmallWorld, 0.6, 0.8, 0.2, 50.0, 2.0, 2.0, 2.0),
        uniform_instance(Realistic, Realistic, 0.3, 0.4, 0.4, 70.0, 2.0, 5.0, 6.0),
    ]
}

/// A built-in sweep together with the trend its results should show.
#[derive(Debug, Clone)]
pub struct TrendSweep {
    /// e.g. `beta1/sw-sf`
    pub id: String,
    pub rumor: Network,
    pub truth: Network,
    pub spec: SweepSpec,
    pub expected: Trend,
}

fn range(start: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start + k as f64 * step).collect()
}

/// The 21 one-parameter sweeps: three network pairs for each of the seven
/// instance parameters.
pub fn trend_sweeps() -> Vec<TrendSweep> {
    use Network::*;
    use SweepParam::*;
    let pairs = [(SmallWorld, ScaleFree), (ScaleFree, SmallWorld), (Realistic, Realistic)];
    let rates = range(0.1, 0.1, 9);
    let units = range(1.0, 1.0, 9);

    // Per parameter: the values, the expected trend, and for each network
    // pair the remaining (β1, β2, δ, T, B, c1, c2), with the swept slot's
    // entry ignored.
    type Row = [f64; 7];
    let table: [(SweepParam, Vec<f64>, Trend, [Row; 3]); 7] = [
        (
            Beta1,
            rates.clone(),
            Trend::NonDecreasing,
            [
                [0.0, 0.1, 0.3, 10.0, 6.0, 1.0, 2.0],
                [0.0, 0.2, 0.2, 15.0, 8.0, 2.0, 3.0],
                [0.0, 0.3, 0.1, 20.0, 10.0, 3.0, 4.0],
            ],
        ),
        (
            Beta2,
            rates.clone(),
            Trend::NonDecreasing,
            [
                [0.4, 0.0, 0.1, 10.0, 6.0, 1.0, 2.0],
                [0.5, 0.0, 0.2, 15.0, 8.0, 2.0, 3.0],
                [0.6, 0.0, 0.3, 20.0, 10.0, 3.0, 4.0],
            ],
        ),
        (
            Delta,
            rates,
            Trend::NonIncreasing,
            [
                [0.2, 0.4, 0.0, 10.0, 6.0, 1.0, 2.0],
                [0.3, 0.5, 0.0, 15.0, 8.0, 2.0, 3.0],
                [0.4, 0.3, 0.0, 20.0, 10.0, 3.0, 4.0],
            ],
        ),
        (
            Horizon,
            range(10.0, 2.0, 11),
            Trend::NonDecreasing,
            [
                [0.3, 0.5, 0.1, 0.0, 6.0, 1.0, 2.0],
                [0.4, 0.6, 0.2, 0.0, 8.0, 2.0, 3.0],
                [0.6, 0.4, 0.3, 0.0, 10.0, 3.0, 4.0],
            ],
        ),
        (
            Budget,
            range(2.0, 2.0, 9),
            Trend::SinglePeaked,
            [
                [0.4, 0.2, 0.8, 60.0, 0.0, 7.0, 9.0],
                [0.8, 0.6, 0.8, 70.0, 0.0, 8.0, 8.0],
                [0.9, 0.2, 0.5, 65.0, 0.0, 5.0, 7.0],
            ],
        ),
        (
            C1,
            units.clone(),
            Trend::NonIncreasing,
            [
                [0.5, 0.4, 0.8, 50.0, 2.0, 0.0, 5.0],
                [0.3, 0.9, 0.6, 30.0, 12.0, 0.0, 5.0],
                [0.4, 0.8, 0.2, 50.0, 14.0, 0.0, 8.0],
            ],
        ),
        (
            C2,
            units,
            Trend::NonDecreasing,
            [
                [0.7, 0.3, 0.9, 55.0, 12.0, 2.0, 0.0],
                [0.3, 0.1, 0.2, 30.0, 16.0, 7.0, 0.0],
                [0.4, 0.2, 0.4, 50.0, 4.0, 5.0, 0.0],
            ],
        ),
    ];

    let mut out = Vec::with_capacity(21);
    for (param, values, trend, rows) in table {
        for ((rumor, truth), row) in pairs.iter().zip(rows) {
            let [b1, b2, d, h, b, c1, c2] = row;
            let base = param.substitute(
                &uniform_instance(*rumor, *truth, b1, b2, d, h, b, c1, c2),
                values[0],
            );
            out.push(TrendSweep {
                id: format!("{param}/{}-{}", rumor.short_name(), truth.short_name()),
                rumor: *rumor,
                truth: *truth,
                spec: SweepSpec {
                    base,
                    parameter: param,
                    values: values.clone(),
                },
                expected: trend,
            });
        }
    }
    out
}
