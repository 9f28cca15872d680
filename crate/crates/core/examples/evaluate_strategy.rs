//! Effectiveness of a few strategies on the budget line of one problem.

use rumor_contain::harness::{uniform_instance, Network};
use rumor_contain::effectiveness;

pub fn run_example() {
    let inst = uniform_instance(Network::Small(1), Network::Small(1), 0.7, 0.1, 0.1, 35.0, 10.0, 8.0, 3.0);
    println!("budget line: {}·γ1 + {}·γ2 = {}", inst.c1, inst.c2, inst.budget);
    println!("{:>7} {:>7} {:>9} {:>9} {:>9} {:>9}", "γ1", "γ2", "E_U", "E_R", "E", "E/(BT)");
    for k in 0..=5 {
        let g1 = inst.gamma1_max() * k as f64 / 5.0;
        let r = effectiveness(&inst, inst.strategy_at(g1).unwrap(), None).unwrap();
        println!(
            "{:>7.3} {:>7.3} {:>9.4} {:>9.4} {:>9.4} {:>9.5}",
            r.gamma1, r.gamma2, r.e_uncertain, r.e_rumor, r.e_total, r.cost_effectiveness
        );
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
