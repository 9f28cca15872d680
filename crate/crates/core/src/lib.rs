//! Rumor containment on networks.
//!
//! A false rumor and the truth against it spread over two directed networks
//! on the same population. This crate integrates the per-individual
//! expected-state dynamics of that mixed process, scores truth-spreading
//! strategies by the expected number of people they convert, and finds the
//! most effective strategy a fixed per-unit-time budget can buy.
//!
//! * [`graph`]: the networks (small catalog, Watts–Strogatz,
//!   Barabási–Albert, edge lists).
//! * [`dynamics`]: RK4 integration of the expected state.
//! * [`objective`]: effectiveness and cost effectiveness of a strategy.
//! * [`optimizer`]: grid plus golden-section search over the budget line.
//! * [`harness`]: batch tables and one-parameter sweeps.
//! * [`config`] and [`cli`]: the JSON run configuration and the command line.

pub mod cli;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod harness;
pub mod objective;
pub mod optimizer;

pub use dynamics::{derivative, integrate, ExpectedState, Trajectory, UrtuParams};
pub use error::{Error, Result};
pub use graph::DirectedGraph;
pub use objective::{effectiveness, gamma2_of, EffectivenessReport, RcInstance, Strategy};
pub use optimizer::{highest_cost_effectiveness, solve_rc, SolverSettings, StrategyResult};

/// Crate version, embedded in every output file.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
