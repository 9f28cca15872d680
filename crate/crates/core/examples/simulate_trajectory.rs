//! Expected rumor and truth prevalence over time on a 4-cycle spreading the
//! rumor and a complete graph spreading the truth.

use rumor_contain::graph::named_small_graph;
use rumor_contain::{integrate, ExpectedState, UrtuParams};

pub fn run_example() {
    let rumor = named_small_graph(6).unwrap();
    let truth = named_small_graph(9).unwrap();
    let init = ExpectedState::new(vec![0.4, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.2, 0.0]).unwrap();
    let params = UrtuParams {
        beta1: 0.6,
        beta2: 0.2,
        gamma1: 0.3,
        gamma2: 0.4,
        delta: 0.1,
    };
    let tr = integrate(&init, &params, &rumor, &truth, 20.0, 0.01).expect("stable step");

    println!("{:>6} {:>8} {:>8} {:>8}", "t", "mean R", "mean T", "mean U");
    for k in (0..tr.times.len()).step_by(250) {
        let s = &tr.states[k];
        let n = s.n() as f64;
        let r: f64 = s.rumor.iter().sum::<f64>() / n;
        let t: f64 = s.truth.iter().sum::<f64>() / n;
        println!("{:>6.2} {r:>8.4} {t:>8.4} {:>8.4}", tr.times[k], 1.0 - r - t);
    }
    let header = tr.to_csv().lines().next().unwrap().to_string();
    println!("CSV columns: {header}");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
