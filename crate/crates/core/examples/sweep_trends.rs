//! Highest cost effectiveness as one parameter varies. By default runs one
//! budget sweep; `--all` runs every built-in sweep (several minutes).

use rumor_contain::harness::{run_sweep, trend_sweeps, TrendSweep};
use rumor_contain::SolverSettings;

fn show(sweep: &TrendSweep, settings: &SolverSettings) {
    let res = run_sweep(&sweep.spec, settings).expect("valid sweep");
    let ce: Vec<f64> = res.cost_effectiveness().into_iter().map(|v| v.unwrap_or(f64::NAN)).collect();
    let verdict = if sweep.expected.holds(&ce, 1e-6) { "as expected" } else { "differs" };
    println!("{} ({:?}, {verdict})", sweep.id, sweep.expected);
    for (v, c) in sweep.spec.values.iter().zip(&ce) {
        println!("    {v:>6.2}  {c:.6}");
    }
}

pub fn run_example() {
    let all = std::env::args().any(|a| a == "--all");
    let settings = SolverSettings::default();
    let sweeps = trend_sweeps();
    if all {
        sweeps.iter().for_each(|s| show(s, &settings));
    } else {
        let budget = sweeps.iter().find(|s| s.id == "budget/sw-sf").unwrap();
        show(budget, &SolverSettings { grid_points: 21, ..settings });
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
