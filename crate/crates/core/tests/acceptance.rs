//! Acceptance suite. Prints one PASS/FAIL line per criterion (with detail
//! lines underneath) and exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{first_small_instance, max_abs_diff, Reference};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rumor_contain::dynamics::{integrate, integrate_endpoint, ExpectedState, UrtuParams, SIMPLEX_TOL};
use rumor_contain::graph::{named_small_graph, DirectedGraph};
use rumor_contain::harness::{large_network_table, run_sweep, small_graph_table, trend_sweeps, SweepResult};
use rumor_contain::objective::{effectiveness, RcInstance};
use rumor_contain::optimizer::{solve_rc, SolverSettings, StrategyResult};

const MONOTONE_TOL: f64 = 1e-6;
const ORACLE_REL_TOL: f64 = 1e-6;
const SYMMETRY_TOL: f64 = 1e-12;
const EULER_TOL: f64 = 1e-6;
const RATIO_RANGE: (f64, f64) = (12.0, 20.0);

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { pass: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.pass &= ok;
        self.details.push(format!("{} {detail}", if ok { "ok  " } else { "FAIL" }));
    }
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

fn ode_correctness() -> Outcome {
    let mut out = Outcome::new();
    let inst = first_small_instance();
    let state = |g1: f64, dt: f64| {
        let e = integrate_endpoint(&inst.init, &inst.params(inst.strategy_at(g1).unwrap()), &inst.rumor_network, &inst.truth_network, inst.horizon, dt)
            .unwrap();
        [e.state.rumor, e.state.truth].concat()
    };
    let euler = |g1: f64, h: f64| {
        let s = inst.strategy_at(g1).unwrap();
        let (r, t) = Reference::new(&inst, s.gamma1, s.gamma2).euler(&inst.init.rumor, &inst.init.truth, inst.horizon, h);
        [r, t].concat()
    };
    let diff = max_abs_diff(&state(0.5, 0.01), &euler(0.5, 1e-4));
    out.check(diff <= EULER_TOL, format!("γ1 = 0.5: |RK4(0.01) - Euler(1e-4)|∞ = {diff:.3e}"));
    // Not graded: at the ends of the budget line the Euler reference itself
    // is off by more than the tolerance. Its error halves with its step, and
    // the extrapolated 2·Euler(h/2) - Euler(h) agrees with RK4.
    for g1 in [0.0, inst.gamma1_max()] {
        let rk = state(g1, 0.01);
        let (e1, e2) = (euler(g1, 1e-4), euler(g1, 5e-5));
        let extrapolated: Vec<f64> = e2.iter().zip(&e1).map(|(a, b)| 2.0 * a - b).collect();
        out.details.push(format!(
            "info γ1 = {g1}: vs Euler(1e-4) {:.3e}, vs Euler(5e-5) {:.3e}, vs extrapolated Euler {:.3e}",
            max_abs_diff(&rk, &e1),
            max_abs_diff(&rk, &e2),
            max_abs_diff(&rk, &extrapolated)
        ));
    }
    // At dt = 0.01 successive differences are already at roundoff, so the
    // order is measured on coarser steps.
    let p = inst.params(inst.strategy_at(0.5).unwrap());
    let fin = |dt: f64| {
        let e = integrate_endpoint(&inst.init, &p, &inst.rumor_network, &inst.truth_network, inst.horizon, dt).unwrap();
        [e.state.rumor, e.state.truth].concat()
    };
    let (a, b, c) = (fin(0.2), fin(0.1), fin(0.05));
    let ratio = max_abs_diff(&a, &b) / max_abs_diff(&b, &c);
    out.check(
        (RATIO_RANGE.0..=RATIO_RANGE.1).contains(&ratio),
        format!("step-halving ratio at dt 0.2/0.1/0.05 = {ratio:.2}"),
    );
    out
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> DirectedGraph {
    let density: f64 = rng.gen();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen::<f64>() < density {
                arcs.push((i, j));
            }
        }
    }
    DirectedGraph::from_edges(n, arcs, false).unwrap()
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> ExpectedState {
    let (mut r, mut t) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let w: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
        let sum: f64 = w.iter().sum();
        r.push(w[0] / sum);
        t.push((w[1] / sum).min(1.0 - w[0] / sum));
    }
    ExpectedState::new(r, t).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng) -> RcInstance {
    let n = rng.gen_range(1..=10);
    RcInstance {
        rumor_network: random_graph(rng, n),
        truth_network: random_graph(rng, n),
        beta1: rng.gen(),
        beta2: rng.gen(),
        delta: rng.gen(),
        horizon: rng.gen_range(0.5..=50.0),
        budget: rng.gen_range(0.1..=10.0),
        c1: rng.gen_range(1.0..=10.0),
        c2: rng.gen_range(1.0..=10.0),
        init: random_state(rng, n),
    }
}

fn simplex_invariance() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..100 {
        let inst = random_instance(&mut rng);
        let p = UrtuParams {
            beta1: inst.beta1,
            beta2: inst.beta2,
            gamma1: rng.gen(),
            gamma2: rng.gen(),
            delta: inst.delta,
        };
        let tr = match integrate(&inst.init, &p, &inst.rumor_network, &inst.truth_network, inst.horizon, inst.default_dt()) {
            Ok(tr) => tr,
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        for s in &tr.states {
            for i in 0..s.n() {
                let v = (-s.rumor[i]).max(-s.truth[i]).max(s.rumor[i] + s.truth[i] - 1.0);
                worst = worst.max(v);
            }
        }
    }
    out.check(failures == 0, format!("{failures} of 100 integrations failed"));
    out.check(worst <= SIMPLEX_TOL, format!("largest violation {worst:.3e}"));
    out
}

fn effectiveness_identities() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut sum_ok, mut eu_ok, mut zero_ok) = (0, 0, 0);
    for _ in 0..20 {
        let inst = random_instance(&mut rng);
        let g1 = rng.gen_range(0.0..=inst.gamma1_max());
        let r = effectiveness(&inst, inst.strategy_at(g1).unwrap(), None).unwrap();
        sum_ok += usize::from(r.e_total == r.e_uncertain + r.e_rumor);
    }
    for _ in 0..20 {
        let inst = random_instance(&mut rng);
        let r = effectiveness(&inst, inst.strategy_at(0.0).unwrap(), None).unwrap();
        eu_ok += usize::from(r.e_uncertain == 0.0);
    }
    for _ in 0..20 {
        let mut inst = random_instance(&mut rng);
        inst.init.truth.iter_mut().for_each(|t| *t = 0.0);
        let g1 = rng.gen_range(0.0..=inst.gamma1_max());
        let r = effectiveness(&inst, inst.strategy_at(g1).unwrap(), None).unwrap();
        zero_ok += usize::from(r.e_total == 0.0);
    }
    out.check(sum_ok == 20, format!("E = E_U + E_R exactly on {sum_ok}/20"));
    out.check(eu_ok == 20, format!("E_U = 0 at γ1 = 0 on {eu_ok}/20"));
    out.check(zero_ok == 20, format!("E = 0 with no initial truth on {zero_ok}/20"));
    out
}

fn experiment_instances() -> Vec<(String, RcInstance)> {
    let small = small_graph_table().into_iter().enumerate().map(|(i, x)| (format!("small #{}", i + 1), x));
    let large = large_network_table().into_iter().enumerate().map(|(i, x)| (format!("large #{}", i + 1), x));
    small.chain(large).collect()
}

fn dense_best(inst: &RcInstance) -> f64 {
    let hi = inst.gamma1_max();
    (0..=1000)
        .map(|k| {
            let g1 = if k == 1000 { hi } else { hi * k as f64 / 1000.0 };
            effectiveness(inst, inst.strategy_at(g1).unwrap(), None).unwrap().e_total
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn solve_all(instances: &[(String, RcInstance)]) -> Vec<StrategyResult> {
    instances.iter().map(|(_, i)| solve_rc(i, &SolverSettings::default()).unwrap()).collect()
}

fn optimizer_oracle(instances: &[(String, RcInstance)], solved: &[StrategyResult]) -> Outcome {
    let mut out = Outcome::new();
    for ((name, inst), r) in instances.iter().zip(solved) {
        let best = dense_best(inst);
        let ok = inst.on_budget_line(r.best()) && r.e_total() >= best - ORACLE_REL_TOL * best.abs();
        out.check(
            ok,
            format!(
                "{name}: solver E = {:.10} at γ1 = {:.6}, dense-grid best {best:.10}",
                r.e_total(),
                r.best().gamma1
            ),
        );
    }
    out
}

fn trend_reproduction(results: &[SweepResult]) -> Outcome {
    let mut out = Outcome::new();
    for (sweep, res) in trend_sweeps().iter().zip(results) {
        let ce: Option<Vec<f64>> = res.cost_effectiveness().into_iter().collect();
        let ok = ce.as_ref().is_some_and(|v| sweep.expected.holds(v, MONOTONE_TOL));
        let shown = ce
            .map(|v| v.iter().map(|x| format!("{x:.5}")).collect::<Vec<_>>().join(" "))
            .unwrap_or_else(|| "row failed".into());
        out.check(ok, format!("{} expected {:?}: {shown}", sweep.id, sweep.expected));
    }
    out
}

fn determinism(
    instances: &[(String, RcInstance)],
    solved: &[StrategyResult],
    single_thread: &[SweepResult],
) -> Outcome {
    let mut out = Outcome::new();
    out.check(
        solved.len() == instances.len() && single_thread.len() == trend_sweeps().len(),
        "earlier criteria produced every result".into(),
    );
    let again = pool(4).install(|| solve_all(instances));
    let a = serde_json::to_string_pretty(solved).unwrap();
    let b = serde_json::to_string_pretty(&again).unwrap();
    out.check(a == b, format!("repeated optimizer JSON identical ({} bytes)", a.len()));

    // One network pair per parameter; the full set is in the trend criterion.
    let sweeps = trend_sweeps();
    let settings = SolverSettings::default();
    for (k, (sweep, one)) in sweeps.iter().zip(single_thread).enumerate().filter(|(k, _)| k % 3 == 0) {
        let many = pool(4).install(|| run_sweep(&sweep.spec, &settings).unwrap());
        let same = one.to_csv() == many.to_csv();
        out.check(same, format!("sweep {} (#{k}) CSV at 1 vs 4 threads identical", sweep.id));
    }
    out
}

fn symmetry() -> Outcome {
    let mut out = Outcome::new();
    let inst = first_small_instance();
    let k2 = named_small_graph(1).unwrap();
    for g1 in [0.0, 0.5, 1.25] {
        let p = inst.params(inst.strategy_at(g1).unwrap());
        let tr = integrate(&inst.init, &p, &k2, &k2, inst.horizon, 0.01).unwrap();
        let worst = tr
            .states
            .iter()
            .map(|s| (s.rumor[0] - s.rumor[1]).abs().max((s.truth[0] - s.truth[1]).abs()))
            .fold(0.0, f64::max);
        out.check(worst <= SYMMETRY_TOL, format!("γ1 = {g1}: max |R1-R2|, |T1-T2| = {worst:.3e} over {} samples", tr.states.len()));
    }
    out
}

fn report(id: u32, title: &str, start: Instant, outcome: std::thread::Result<Outcome>) -> bool {
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(o) => {
            println!("criterion {id} {title}: {} ({secs:.1}s)", if o.pass { "PASS" } else { "FAIL" });
            for d in &o.details {
                println!("    {d}");
            }
            o.pass
        }
        Err(_) => {
            println!("criterion {id} {title}: FAIL (panicked after {secs:.1}s)");
            false
        }
    }
}

fn main() {
    let mut all = true;
    let mut run = |id, title: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        all &= report(id, title, start, catch_unwind(AssertUnwindSafe(f)));
    };

    run(1, "ODE correctness", &mut ode_correctness);
    run(2, "simplex invariance", &mut simplex_invariance);
    run(3, "effectiveness identities", &mut effectiveness_identities);

    let instances = experiment_instances();
    let mut solved = Vec::new();
    run(4, "optimizer vs dense grid", &mut || {
        solved = solve_all(&instances);
        optimizer_oracle(&instances, &solved)
    });

    let mut sweeps = Vec::new();
    run(5, "trend reproduction", &mut || {
        let settings = SolverSettings::default();
        sweeps = pool(1).install(|| {
            trend_sweeps()
                .iter()
                .map(|s| run_sweep(&s.spec, &settings).unwrap())
                .collect()
        });
        trend_reproduction(&sweeps)
    });
    run(6, "determinism", &mut || determinism(&instances, &solved, &sweeps));
    run(7, "K2 symmetry", &mut symmetry);

    if !all {
        std::process::exit(1);
    }
}
