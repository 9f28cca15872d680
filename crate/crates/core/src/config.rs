//! JSON run configuration: one containment problem plus solver settings.
//!
//! ```json
//! {
//!   "rumorNetwork": {"model": "named", "index": 1},
//!   "truthNetwork": {"model": "ws", "n": 50, "k": 4, "p": 0.1, "seed": 1},
//!   "beta1": 0.7, "beta2": 0.1, "delta": 0.1,
//!   "horizon": 35, "budget": 10, "c1": 8, "c2": 3,
//!   "initialState": 0.1
//! }
//! ```
//!
//! Optional keys (`dt`, `gridPoints`, `refineTol`, `seed`, and the
//! generator parameters) are filled in by [`RunConfig::resolved`], which is
//! what output files echo.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::{default_dt, ExpectedState};
use crate::error::{Error, Result};
use crate::graph::{barabasi_albert, load_graph, named_small_graph, realistic_network, watts_strogatz, DirectedGraph};
use crate::harness::CANONICAL_SEED;
use crate::objective::RcInstance;
use crate::optimizer::{SolverSettings, DEFAULT_GRID_POINTS};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum GraphSpec {
    Named {
        index: usize,
    },
    Ws {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    Ba {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    /// Edge-list or graph-JSON file; relative paths resolve against the
    /// directory of the config file.
    Edgelist {
        path: PathBuf,
        #[serde(default)]
        symmetric: bool,
    },
    /// The bundled 49-node network.
    Realistic,
}

impl GraphSpec {
    fn resolved(&self, seed: u64) -> Self {
        match self.clone() {
            GraphSpec::Ws { n, k, p, seed: s } => GraphSpec::Ws {
                n,
                k: Some(k.unwrap_or(4)),
                p: Some(p.unwrap_or(0.1)),
                seed: Some(s.unwrap_or(seed)),
            },
            GraphSpec::Ba { n, m, seed: s } => GraphSpec::Ba {
                n,
                m: Some(m.unwrap_or(2)),
                seed: Some(s.unwrap_or(seed)),
            },
            other => other,
        }
    }

    pub fn build(&self, seed: u64, base_dir: &Path) -> Result<DirectedGraph> {
        match self.resolved(seed) {
            GraphSpec::Named { index } => named_small_graph(index),
            GraphSpec::Ws { n, k, p, seed } => {
                watts_strogatz(n, k.unwrap_or(4), p.unwrap_or(0.1), seed.unwrap_or(CANONICAL_SEED))
            }
            GraphSpec::Ba { n, m, seed } => barabasi_albert(n, m.unwrap_or(2), seed.unwrap_or(CANONICAL_SEED)),
            GraphSpec::Edgelist { path, symmetric } => load_graph(base_dir.join(path), symmetric),
            GraphSpec::Realistic => Ok(realistic_network()),
        }
    }
}

/// Either one value for every node or one value per node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeValues {
    Uniform(f64),
    PerNode(Vec<f64>),
}

impl NodeValues {
    fn expand(&self, n: usize, what: &str) -> Result<Vec<f64>> {
        match self {
            NodeValues::Uniform(v) => Ok(vec![*v; n]),
            NodeValues::PerNode(v) if v.len() == n => Ok(v.clone()),
            NodeValues::PerNode(v) => Err(Error::Config(format!(
                "{what} has {} entries for {n} nodes",
                v.len()
            ))),
        }
    }
}

/// A bare number sets both `R_i(0)` and `T_i(0)` at every node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialState {
    Uniform(f64),
    Split {
        rumor: NodeValues,
        truth: NodeValues,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub rumor_network: GraphSpec,
    pub truth_network: GraphSpec,
    pub beta1: f64,
    pub beta2: f64,
    pub delta: f64,
    pub horizon: f64,
    pub budget: f64,
    pub c1: f64,
    pub c2: f64,
    pub initial_state: InitialState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refine_tol: Option<f64>,
    /// Default seed for generated networks that do not name their own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_json_str(text: &str, origin: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            line: e.line(),
            msg: format!("column {}: {e}", e.column()),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text, path)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(CANONICAL_SEED)
    }

    /// Copy with every default written out.
    pub fn resolved(&self) -> Self {
        let seed = self.seed();
        let gamma1_max = self.budget / self.c1;
        Self {
            rumor_network: self.rumor_network.resolved(seed),
            truth_network: self.truth_network.resolved(seed),
            dt: Some(self.dt.unwrap_or_else(|| default_dt(self.horizon))),
            grid_points: Some(self.grid_points.unwrap_or(DEFAULT_GRID_POINTS)),
            refine_tol: Some(self.refine_tol.unwrap_or(1e-6 * gamma1_max)),
            seed: Some(seed),
            ..self.clone()
        }
    }

    /// Builds the problem; `base_dir` anchors relative edge-list paths.
    pub fn to_instance(&self, base_dir: &Path) -> Result<RcInstance> {
        let seed = self.seed();
        let rumor_network = self.rumor_network.build(seed, base_dir)?;
        let truth_network = self.truth_network.build(seed, base_dir)?;
        let n = rumor_network.n();
        let init = match &self.initial_state {
            InitialState::Uniform(v) => ExpectedState::uniform(n, *v, *v),
            InitialState::Split { rumor, truth } => {
                ExpectedState::new(rumor.expand(n, "initialState.rumor")?, truth.expand(n, "initialState.truth")?)
            }
        }
        .map_err(|e| Error::Config(format!("initialState: {e}")))?;
        let inst = RcInstance {
            rumor_network,
            truth_network,
            beta1: self.beta1,
            beta2: self.beta2,
            delta: self.delta,
            horizon: self.horizon,
            budget: self.budget,
            c1: self.c1,
            c2: self.c2,
            init,
        };
        inst.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(inst)
    }

    pub fn solver_settings(&self) -> SolverSettings {
        SolverSettings {
            grid_points: self.grid_points.unwrap_or(DEFAULT_GRID_POINTS),
            refine_tol: self.refine_tol,
            dt: self.dt,
            profile: false,
        }
    }
}
