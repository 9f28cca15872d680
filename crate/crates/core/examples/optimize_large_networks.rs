//! Most effective strategy on the small-world, scale-free and bundled
//! networks. Pass `--profile` to also print the objective along the budget
//! line.

use rumor_contain::harness::large_network_table;
use rumor_contain::{solve_rc, SolverSettings};

pub fn run_example() {
    let profile = std::env::args().any(|a| a == "--profile");
    let names = ["small-world -> scale-free", "scale-free -> small-world", "bundled -> bundled"];
    let settings = SolverSettings {
        profile,
        ..Default::default()
    };
    for (name, inst) in names.iter().zip(large_network_table()) {
        let r = solve_rc(&inst, &settings).expect("catalog problems solve");
        println!(
            "{name:<27} γ* = ({:.5}, {:.5})  E* = {:.4}  E*/(BT) = {:.6}",
            r.best().gamma1,
            r.best().gamma2,
            r.e_total(),
            r.cost_effectiveness()
        );
        if let Some(prof) = &r.grid_profile {
            for (g1, e) in prof.iter().step_by(10) {
                println!("    γ1 {g1:>8.4}  E {e:.4}");
            }
        }
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
