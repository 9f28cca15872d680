//! Builds a problem from a JSON run configuration, the same format the
//! `rumor-contain` binary reads, and solves it.

use std::path::Path;

use rumor_contain::config::RunConfig;
use rumor_contain::solve_rc;

const CONFIG: &str = r#"{
  "rumorNetwork": {"model": "ws", "n": 30, "k": 4, "p": 0.2},
  "truthNetwork": {"model": "ba", "n": 30, "m": 2},
  "beta1": 0.5, "beta2": 0.3, "delta": 0.2,
  "horizon": 20, "budget": 6, "c1": 2, "c2": 3,
  "initialState": {"rumor": 0.1, "truth": 0.05},
  "seed": 7
}"#;

pub fn run_example() {
    let cfg = RunConfig::from_json_str(CONFIG, Path::new("inline.json")).expect("valid config");
    let inst = cfg.to_instance(Path::new(".")).expect("buildable");
    let r = solve_rc(&inst, &cfg.solver_settings()).expect("solves");
    println!("resolved config:\n{}", cfg.resolved().to_json_pretty());
    println!("result:\n{}", serde_json::to_string_pretty(&r).unwrap());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
