//! Expected-state dynamics of the mixed rumor/truth spreading process.
//!
//! Every individual `i` is uncertain, rumor-believing or truth-believing
//! with probabilities `U_i`, `R_i`, `T_i` (`U_i = 1 - R_i - T_i`, never
//! stored). With `a` the rumor adjacency and `b` the truth adjacency:
//!
//! ```text
//! dR_i/dt = β1 U_i Σ_j a_ji R_j + β2 T_i Σ_j a_ji R_j - γ2 R_i Σ_j b_ji T_j - δ R_i
//! dT_i/dt = γ1 U_i Σ_j b_ji T_j + γ2 R_i Σ_j b_ji T_j - β2 T_i Σ_j a_ji R_j - δ T_i
//! ```
//!
//! Two extra channels integrate `Σ_i U_i Σ_j b_ji T_j` and
//! `Σ_i R_i Σ_j b_ji T_j` alongside the state, so the conversion counts
//! come out of the same RK4 solve.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Violations of the probability simplex up to this size are treated as
/// roundoff and clamped; anything larger aborts the integration.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// Spreading and forgetting rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UrtuParams {
    /// Uncertain -> rumor, per rumor-believing in-neighbour.
    pub beta1: f64,
    /// Truth -> rumor, per rumor-believing in-neighbour.
    pub beta2: f64,
    /// Uncertain -> truth, per truth-believing in-neighbour.
    pub gamma1: f64,
    /// Rumor -> truth, per truth-believing in-neighbour.
    pub gamma2: f64,
    /// Forgetting rate of both kinds of believers.
    pub delta: f64,
}

impl UrtuParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("beta1", self.beta1),
            ("beta2", self.beta2),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("delta", self.delta),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!("{name} = {v} must be finite and >= 0")));
            }
        }
        Ok(())
    }

    pub fn max_rate(&self) -> f64 {
        [self.beta1, self.beta2, self.gamma1, self.gamma2, self.delta]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Per-node probabilities of believing the rumor and the truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedState {
    pub rumor: Vec<f64>,
    pub truth: Vec<f64>,
}

impl ExpectedState {
    pub fn new(rumor: Vec<f64>, truth: Vec<f64>) -> Result<Self> {
        let s = Self { rumor, truth };
        s.validate()?;
        Ok(s)
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            rumor: vec![0.0; n],
            truth: vec![0.0; n],
        }
    }

    /// Every node at `R_i = rumor`, `T_i = truth`.
    pub fn uniform(n: usize, rumor: f64, truth: f64) -> Result<Self> {
        Self::new(vec![rumor; n], vec![truth; n])
    }

    pub fn n(&self) -> usize {
        self.rumor.len()
    }

    pub fn uncertain(&self, i: usize) -> f64 {
        1.0 - self.rumor[i] - self.truth[i]
    }

    pub fn validate(&self) -> Result<()> {
        if self.rumor.len() != self.truth.len() {
            return Err(Error::domain(format!(
                "state has {} rumor entries but {} truth entries",
                self.rumor.len(),
                self.truth.len()
            )));
        }
        if self.rumor.is_empty() {
            return Err(Error::domain("state must cover at least one node"));
        }
        for (i, (&r, &t)) in self.rumor.iter().zip(&self.truth).enumerate() {
            if !(r.is_finite() && t.is_finite()) || r < 0.0 || t < 0.0 || r + t > 1.0 {
                return Err(Error::domain(format!(
                    "node {i}: (R, T) = ({r}, {t}) outside the probability simplex"
                )));
            }
        }
        Ok(())
    }
}

/// Time-sampled solution with the running conversion integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<ExpectedState>,
    /// `∫ Σ_i U_i Σ_j b_ji T_j` up to each sample time.
    pub acc_uncertain: Vec<f64>,
    /// `∫ Σ_i R_i Σ_j b_ji T_j` up to each sample time.
    pub acc_rumor: Vec<f64>,
}

impl Trajectory {
    pub fn final_state(&self) -> &ExpectedState {
        self.states.last().expect("trajectory has at least one sample")
    }

    /// CSV with header `t,R_0..R_{n-1},T_0..T_{n-1},accU,accR` and 17
    /// significant digits per value.
    pub fn to_csv(&self) -> String {
        let n = self.states.first().map_or(0, ExpectedState::n);
        let mut out = String::from("t");
        for i in 0..n {
            let _ = write!(out, ",R_{i}");
        }
        for i in 0..n {
            let _ = write!(out, ",T_{i}");
        }
        out.push_str(",accU,accR\n");
        for (k, t) in self.times.iter().enumerate() {
            let _ = write!(out, "{t:.16e}");
            let s = &self.states[k];
            for v in s.rumor.iter().chain(&s.truth) {
                let _ = write!(out, ",{v:.16e}");
            }
            let _ = writeln!(out, ",{:.16e},{:.16e}", self.acc_uncertain[k], self.acc_rumor[k]);
        }
        out
    }
}

/// Time derivative of the state and of both accumulator channels.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivative {
    pub rumor: Vec<f64>,
    pub truth: Vec<f64>,
    pub acc_uncertain: f64,
    pub acc_rumor: f64,
}

/// Final values of an integration, without the intermediate samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Endpoint {
    pub state: ExpectedState,
    pub acc_uncertain: f64,
    pub acc_rumor: f64,
}

/// Step used when none is given: `min(0.01, horizon / 1000)`.
pub fn default_dt(horizon: f64) -> f64 {
    (horizon / 1000.0).min(0.01)
}

/// Right-hand side over the augmented vector `[R, T, accU, accR]`.
/// In-neighbour lists are ascending so every sum has a fixed order.
struct UrtuSystem {
    n: usize,
    params: UrtuParams,
    rumor_in: Vec<Vec<usize>>,
    truth_in: Vec<Vec<usize>>,
}

impl UrtuSystem {
    fn new(params: UrtuParams, g_rumor: &DirectedGraph, g_truth: &DirectedGraph, n: usize) -> Result<Self> {
        params.validate()?;
        if g_rumor.n() != n || g_truth.n() != n {
            return Err(Error::domain(format!(
                "dimension mismatch: rumor network {}, truth network {}, state {n}",
                g_rumor.n(),
                g_truth.n()
            )));
        }
        Ok(Self {
            n,
            params,
            rumor_in: (0..n).map(|i| g_rumor.in_neighbors(i)).collect(),
            truth_in: (0..n).map(|i| g_truth.in_neighbors(i)).collect(),
        })
    }

    fn eval(&self, y: &[f64], dy: &mut [f64]) {
        let n = self.n;
        let UrtuParams {
            beta1,
            beta2,
            gamma1,
            gamma2,
            delta,
        } = self.params;
        let (r, rest) = y.split_at(n);
        let t = &rest[..n];
        let mut acc_u = 0.0;
        let mut acc_r = 0.0;
        for i in 0..n {
            let rumor_push: f64 = self.rumor_in[i].iter().map(|&j| r[j]).sum();
            let truth_push: f64 = self.truth_in[i].iter().map(|&j| t[j]).sum();
            let u = 1.0 - r[i] - t[i];
            dy[i] = beta1 * u * rumor_push + beta2 * t[i] * rumor_push
                - gamma2 * r[i] * truth_push
                - delta * r[i];
            dy[n + i] = gamma1 * u * truth_push + gamma2 * r[i] * truth_push
                - beta2 * t[i] * rumor_push
                - delta * t[i];
            acc_u += u * truth_push;
            acc_r += r[i] * truth_push;
        }
        dy[2 * n] = acc_u;
        dy[2 * n + 1] = acc_r;
    }
}

/// Evaluates the vector field at `state`. The accumulator rates carry no
/// `γ` factor; that is applied when the integrals are turned into counts.
pub fn derivative(
    state: &ExpectedState,
    params: &UrtuParams,
    g_rumor: &DirectedGraph,
    g_truth: &DirectedGraph,
) -> Result<Derivative> {
    state.validate()?;
    let n = state.n();
    let sys = UrtuSystem::new(*params, g_rumor, g_truth, n)?;
    let mut y = Vec::with_capacity(2 * n + 2);
    y.extend_from_slice(&state.rumor);
    y.extend_from_slice(&state.truth);
    y.extend([0.0, 0.0]);
    let mut dy = vec![0.0; 2 * n + 2];
    sys.eval(&y, &mut dy);
    Ok(Derivative {
        rumor: dy[..n].to_vec(),
        truth: dy[n..2 * n].to_vec(),
        acc_uncertain: dy[2 * n],
        acc_rumor: dy[2 * n + 1],
    })
}

/// Projects roundoff-sized simplex violations back and rejects larger ones.
fn settle(y: &mut [f64], n: usize, time: f64) -> Result<()> {
    for i in 0..n {
        let (r, t) = (y[i], y[n + i]);
        if !(r.is_finite() && t.is_finite())
            || r < -SIMPLEX_TOL
            || t < -SIMPLEX_TOL
            || r + t > 1.0 + SIMPLEX_TOL
        {
            return Err(Error::Integration {
                time,
                detail: format!("node {i}: (R, T) = ({r}, {t}); reduce the step size"),
            });
        }
        let (r, t) = (r.max(0.0), t.max(0.0));
        let s = r + t;
        if s > 1.0 {
            y[i] = r / s;
            y[n + i] = t / s;
        } else {
            y[i] = r;
            y[n + i] = t;
        }
    }
    Ok(())
}

/// Classical fixed-step RK4 from `t = 0` to `horizon`, calling `observe`
/// with the augmented vector at `t = 0` and after every step. The final
/// step is shortened so the last sample lands exactly on `horizon`.
fn run<F>(
    init: &ExpectedState,
    params: &UrtuParams,
    g_rumor: &DirectedGraph,
    g_truth: &DirectedGraph,
    horizon: f64,
    dt: f64,
    mut observe: F,
) -> Result<()>
where
    F: FnMut(f64, &[f64]),
{
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::domain(format!("horizon {horizon} must be > 0")));
    }
    if !(dt.is_finite() && dt > 0.0 && dt <= horizon) {
        return Err(Error::domain(format!("step {dt} must lie in (0, horizon]")));
    }
    init.validate()?;
    let n = init.n();
    let sys = UrtuSystem::new(*params, g_rumor, g_truth, n)?;
    let dim = 2 * n + 2;

    let mut y = Vec::with_capacity(dim);
    y.extend_from_slice(&init.rumor);
    y.extend_from_slice(&init.truth);
    y.extend([0.0, 0.0]);
    observe(0.0, &y);

    let full_steps = (horizon / dt * (1.0 + 1e-12)).floor() as usize;
    let tail = horizon - full_steps as f64 * dt;
    let has_tail = tail > horizon * 1e-12;
    let total = full_steps + usize::from(has_tail);

    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    for step in 0..total {
        let h = if step < full_steps { dt } else { tail };
        sys.eval(&y, &mut k1);
        for ((x, &y0), &k) in tmp.iter_mut().zip(&y).zip(&k1) {
            *x = y0 + 0.5 * h * k;
        }
        sys.eval(&tmp, &mut k2);
        for ((x, &y0), &k) in tmp.iter_mut().zip(&y).zip(&k2) {
            *x = y0 + 0.5 * h * k;
        }
        sys.eval(&tmp, &mut k3);
        for ((x, &y0), &k) in tmp.iter_mut().zip(&y).zip(&k3) {
            *x = y0 + h * k;
        }
        sys.eval(&tmp, &mut k4);
        for d in 0..dim {
            y[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
        }

        let time = if step + 1 == total {
            horizon
        } else {
            (step + 1) as f64 * dt
        };
        settle(&mut y, n, time)?;
        observe(time, &y);
    }
    Ok(())
}

/// Integrates from `init` over `[0, horizon]` with step `dt`, recording a
/// sample after every step.
pub fn integrate(
    init: &ExpectedState,
    params: &UrtuParams,
    g_rumor: &DirectedGraph,
    g_truth: &DirectedGraph,
    horizon: f64,
    dt: f64,
) -> Result<Trajectory> {
    let n = init.n();
    let mut traj = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
        acc_uncertain: Vec::new(),
        acc_rumor: Vec::new(),
    };
    run(init, params, g_rumor, g_truth, horizon, dt, |t, y| {
        traj.times.push(t);
        traj.states.push(ExpectedState {
            rumor: y[..n].to_vec(),
            truth: y[n..2 * n].to_vec(),
        });
        traj.acc_uncertain.push(y[2 * n]);
        traj.acc_rumor.push(y[2 * n + 1]);
    })?;
    Ok(traj)
}

/// Same computation as [`integrate`] but keeps only the final values.
pub fn integrate_endpoint(
    init: &ExpectedState,
    params: &UrtuParams,
    g_rumor: &DirectedGraph,
    g_truth: &DirectedGraph,
    horizon: f64,
    dt: f64,
) -> Result<Endpoint> {
    let n = init.n();
    let mut last = Vec::new();
    run(init, params, g_rumor, g_truth, horizon, dt, |_, y| {
        last.clear();
        last.extend_from_slice(y);
    })?;
    Ok(Endpoint {
        state: ExpectedState {
            rumor: last[..n].to_vec(),
            truth: last[n..2 * n].to_vec(),
        },
        acc_uncertain: last[2 * n],
        acc_rumor: last[2 * n + 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_small_graph;

    fn params(beta1: f64, beta2: f64, gamma1: f64, gamma2: f64, delta: f64) -> UrtuParams {
        UrtuParams {
            beta1,
            beta2,
            gamma1,
            gamma2,
            delta,
        }
    }

    #[test]
    fn derivative_vanishes_at_zero_state() {
        let g = named_small_graph(9).unwrap();
        let d = derivative(&ExpectedState::zeros(4), &params(0.7, 0.1, 0.3, 0.5, 0.1), &g, &g).unwrap();
        assert!(d.rumor.iter().chain(&d.truth).all(|&v| v == 0.0));
        assert_eq!((d.acc_uncertain, d.acc_rumor), (0.0, 0.0));
    }

    #[test]
    fn pure_forgetting() {
        let g = named_small_graph(3).unwrap();
        let s = ExpectedState::uniform(3, 0.5, 0.2).unwrap();
        let d = derivative(&s, &params(0.0, 0.0, 0.0, 0.0, 0.1), &g, &g).unwrap();
        for i in 0..3 {
            assert!((d.rumor[i] + 0.05).abs() < 1e-15);
            assert!((d.truth[i] + 0.02).abs() < 1e-15);
        }
    }

    #[test]
    fn k2_hand_evaluation() {
        // 0.7*0.8*0.1 + 0.1*0.1*0.1 - 0.5*0.1*0.1 - 0.1*0.1
        let g = named_small_graph(1).unwrap();
        let s = ExpectedState::uniform(2, 0.1, 0.1).unwrap();
        let d = derivative(&s, &params(0.7, 0.1, 0.0, 0.5, 0.1), &g, &g).unwrap();
        assert!((d.rumor[0] - 0.042).abs() < 1e-15, "{}", d.rumor[0]);
        assert!((d.rumor[1] - 0.042).abs() < 1e-15);
    }

    #[test]
    fn derivative_dimension_mismatch() {
        let g2 = named_small_graph(1).unwrap();
        let g3 = named_small_graph(2).unwrap();
        let s = ExpectedState::zeros(2);
        let p = params(0.1, 0.1, 0.1, 0.1, 0.1);
        assert!(matches!(derivative(&s, &p, &g2, &g3), Err(Error::Domain(_))));
        assert!(matches!(derivative(&ExpectedState::zeros(3), &p, &g2, &g2), Err(Error::Domain(_))));
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(ExpectedState::uniform(2, 0.6, 0.5).is_err());
        assert!(ExpectedState::uniform(2, -0.1, 0.5).is_err());
        assert!(ExpectedState::new(vec![0.1], vec![0.1, 0.2]).is_err());
        assert!(params(0.1, -1.0, 0.0, 0.0, 0.0).validate().is_err());
        assert!(params(f64::NAN, 0.0, 0.0, 0.0, 0.0).validate().is_err());
    }

    #[test]
    fn last_step_is_shortened() {
        let g = named_small_graph(1).unwrap();
        let s = ExpectedState::uniform(2, 0.1, 0.1).unwrap();
        let tr = integrate(&s, &params(0.3, 0.1, 0.2, 0.2, 0.1), &g, &g, 1.0, 0.3).unwrap();
        assert_eq!(tr.times.len(), 5);
        assert_eq!(tr.times[0], 0.0);
        assert_eq!(*tr.times.last().unwrap(), 1.0);
        assert!((tr.times[3] - 0.9).abs() < 1e-15);

        let tr = integrate(&s, &params(0.3, 0.1, 0.2, 0.2, 0.1), &g, &g, 1.0, 0.1).unwrap();
        assert_eq!(tr.times.len(), 11);
        assert_eq!(*tr.times.last().unwrap(), 1.0);
    }

    #[test]
    fn step_validation() {
        let g = named_small_graph(1).unwrap();
        let s = ExpectedState::zeros(2);
        let p = params(0.1, 0.1, 0.1, 0.1, 0.1);
        assert!(integrate(&s, &p, &g, &g, 1.0, 2.0).is_err());
        assert!(integrate(&s, &p, &g, &g, 0.0, 0.1).is_err());
        assert!(integrate(&s, &p, &g, &g, 1.0, 0.0).is_err());
    }

    #[test]
    fn oversized_step_is_an_integration_error() {
        let g = named_small_graph(9).unwrap();
        let s = ExpectedState::uniform(4, 0.3, 0.3).unwrap();
        let p = params(50.0, 50.0, 50.0, 50.0, 50.0);
        match integrate(&s, &p, &g, &g, 1.0, 0.5) {
            Err(e @ Error::Integration { .. }) => assert!(e.is_numerical()),
            other => panic!("expected integration error, got {other:?}"),
        }
    }

    #[test]
    fn endpoint_matches_full_trajectory() {
        let g = named_small_graph(7).unwrap();
        let h = named_small_graph(8).unwrap();
        let s = ExpectedState::uniform(4, 0.1, 0.1).unwrap();
        let p = params(0.5, 0.8, 0.4, 0.3, 0.5);
        let tr = integrate(&s, &p, &g, &h, 7.0, 0.01).unwrap();
        let ep = integrate_endpoint(&s, &p, &g, &h, 7.0, 0.01).unwrap();
        assert_eq!(&ep.state, tr.final_state());
        assert_eq!(ep.acc_uncertain, *tr.acc_uncertain.last().unwrap());
        assert_eq!(ep.acc_rumor, *tr.acc_rumor.last().unwrap());
    }

    #[test]
    fn csv_layout() {
        let g = named_small_graph(2).unwrap();
        let s = ExpectedState::uniform(3, 0.1, 0.1).unwrap();
        let tr = integrate(&s, &params(0.3, 0.1, 0.2, 0.2, 0.1), &g, &g, 0.05, 0.01).unwrap();
        let csv = tr.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,R_0,R_1,R_2,T_0,T_1,T_2,accU,accR");
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 2 * 3 + 3);
        assert_eq!(row[1], "1.0000000000000001e-1");
        assert_eq!(csv.lines().count(), 1 + 6);
    }
}
