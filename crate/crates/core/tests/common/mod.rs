//! Reference computations shared by the integration tests. Nothing here
//! calls into the crate's integrator; the vector field is rewritten from
//! the model equations over dense 0/1 matrices.
#![allow(dead_code)]

use rumor_contain::dynamics::ExpectedState;
use rumor_contain::graph::{named_small_graph, DirectedGraph};
use rumor_contain::objective::RcInstance;

pub struct Reference {
    pub n: usize,
    /// a[j][i] = 1 iff j passes the rumor to i
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    pub beta1: f64,
    pub beta2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub delta: f64,
}

fn dense(g: &DirectedGraph) -> Vec<Vec<f64>> {
    (0..g.n())
        .map(|j| (0..g.n()).map(|i| if g.has_arc(j, i) { 1.0 } else { 0.0 }).collect())
        .collect()
}

impl Reference {
    pub fn new(inst: &RcInstance, gamma1: f64, gamma2: f64) -> Self {
        Self {
            n: inst.n(),
            a: dense(&inst.rumor_network),
            b: dense(&inst.truth_network),
            beta1: inst.beta1,
            beta2: inst.beta2,
            gamma1,
            gamma2,
            delta: inst.delta,
        }
    }

    /// (dR, dT, flux into T from U without γ1, flux into T from R without γ2)
    pub fn field(&self, r: &[f64], t: &[f64]) -> (Vec<f64>, Vec<f64>, f64, f64) {
        let n = self.n;
        let mut dr = vec![0.0; n];
        let mut dt = vec![0.0; n];
        let (mut fu, mut fr) = (0.0, 0.0);
        for i in 0..n {
            let mut sa = 0.0;
            let mut sb = 0.0;
            for j in 0..n {
                sa += self.a[j][i] * r[j];
                sb += self.b[j][i] * t[j];
            }
            let u = 1.0 - r[i] - t[i];
            dr[i] = self.beta1 * u * sa + self.beta2 * t[i] * sa - self.gamma2 * r[i] * sb - self.delta * r[i];
            dt[i] = self.gamma1 * u * sb + self.gamma2 * r[i] * sb - self.beta2 * t[i] * sa - self.delta * t[i];
            fu += u * sb;
            fr += r[i] * sb;
        }
        (dr, dt, fu, fr)
    }

    /// Forward Euler; returns the final (R, T).
    pub fn euler(&self, r0: &[f64], t0: &[f64], horizon: f64, h: f64) -> (Vec<f64>, Vec<f64>) {
        let steps = (horizon / h).round() as usize;
        let (mut r, mut t) = (r0.to_vec(), t0.to_vec());
        for _ in 0..steps {
            let (dr, dt, _, _) = self.field(&r, &t);
            for i in 0..self.n {
                r[i] += h * dr[i];
                t[i] += h * dt[i];
            }
        }
        (r, t)
    }

    /// Heun's method for the state, trapezoid rule on the sampled fluxes
    /// for the two conversion integrals. Returns (R, T, ∫U-flux, ∫R-flux).
    pub fn heun_trapezoid(&self, r0: &[f64], t0: &[f64], horizon: f64, h: f64) -> (Vec<f64>, Vec<f64>, f64, f64) {
        let steps = (horizon / h).round() as usize;
        let (mut r, mut t) = (r0.to_vec(), t0.to_vec());
        let (mut iu, mut ir) = (0.0, 0.0);
        let (_, _, mut fu, mut fr) = self.field(&r, &t);
        for _ in 0..steps {
            let (dr1, dt1, _, _) = self.field(&r, &t);
            let rp: Vec<f64> = (0..self.n).map(|i| r[i] + h * dr1[i]).collect();
            let tp: Vec<f64> = (0..self.n).map(|i| t[i] + h * dt1[i]).collect();
            let (dr2, dt2, _, _) = self.field(&rp, &tp);
            for i in 0..self.n {
                r[i] += 0.5 * h * (dr1[i] + dr2[i]);
                t[i] += 0.5 * h * (dt1[i] + dt2[i]);
            }
            let (_, _, fu2, fr2) = self.field(&r, &t);
            iu += 0.5 * h * (fu + fu2);
            ir += 0.5 * h * (fr + fr2);
            fu = fu2;
            fr = fr2;
        }
        (r, t, iu, ir)
    }
}

/// (G1, G1, β1 0.7, β2 0.1, δ 0.1, T 35, c1 8, c2 3, B 10, all 0.1),
/// built here by hand rather than taken from the harness catalog.
pub fn first_small_instance() -> RcInstance {
    let g = named_small_graph(1).unwrap();
    RcInstance {
        rumor_network: g.clone(),
        truth_network: g,
        beta1: 0.7,
        beta2: 0.1,
        delta: 0.1,
        horizon: 35.0,
        budget: 10.0,
        c1: 8.0,
        c2: 3.0,
        init: ExpectedState::uniform(2, 0.1, 0.1).unwrap(),
    }
}

/// (G2, G3, β1 0.7, β2 0.6, δ 0.7, T 55, c1 4, c2 8, B 6, all 0.1).
pub fn second_small_instance() -> RcInstance {
    RcInstance {
        rumor_network: named_small_graph(2).unwrap(),
        truth_network: named_small_graph(3).unwrap(),
        beta1: 0.7,
        beta2: 0.6,
        delta: 0.7,
        horizon: 55.0,
        budget: 6.0,
        c1: 4.0,
        c2: 8.0,
        init: ExpectedState::uniform(3, 0.1, 0.1).unwrap(),
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Breadth-first reachability over the undirected view.
pub fn bfs_connected(g: &DirectedGraph) -> bool {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if !seen[v] && (g.has_arc(u, v) || g.has_arc(v, u)) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}
