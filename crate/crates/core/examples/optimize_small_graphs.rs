//! Most effective strategy for each of the nine small-graph problems.

use rumor_contain::harness::{run_experiment_table, small_graph_table};
use rumor_contain::SolverSettings;

pub fn run_example() {
    let table = small_graph_table();
    let results = run_experiment_table(&table, &SolverSettings::default());
    println!("{:>3} {:>9} {:>9} {:>10} {:>9} {:>5}", "#", "γ1*", "γ2*", "E*", "E*/(BT)", "evals");
    for (i, (inst, r)) in table.iter().zip(results).enumerate() {
        let r = r.expect("catalog problems solve");
        assert!(inst.on_budget_line(r.best()));
        println!(
            "{:>3} {:>9.5} {:>9.5} {:>10.5} {:>9.6} {:>5}",
            i + 1,
            r.best().gamma1,
            r.best().gamma2,
            r.e_total(),
            r.cost_effectiveness(),
            r.evaluations
        );
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
