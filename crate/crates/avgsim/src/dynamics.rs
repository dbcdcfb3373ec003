//! The asynchronous averaging process: one uniformly random edge activates
//! per round and its endpoints pull their values toward each other with
//! weight `delta`.
//!
//! A single run is strictly sequential; concurrency lives one level up, in
//! [`crate::trials`], where independent runs with derived seeds execute in
//! parallel.

use rand::Rng as _;

use crate::graph::ClusteredGraph;
use crate::rng::{derive_seed, rng_from_seed};

#[derive(Debug, thiserror::Error)]
pub enum DynamicsError {
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(u32, u32),
    #[error("node {node} has only {have} activations, needs {want}")]
    NotYetReached { node: u32, have: u64, want: u64 },
    #[error("run was not configured with the required observer: {0}")]
    MissingObserver(&'static str),
    #[error("history mode was not enabled for this run")]
    NoHistory,
}

/// Sign with the deterministic tie rule `sgn(0) = +1`.
#[inline]
pub fn sign(v: f64) -> i8 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

/// Draw an initial state with independent uniform `{-1, +1}` coordinates.
pub fn init_random_state(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(seed);
    (0..n)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect()
}

/// One pairwise update: both endpoints move toward each other by `delta`.
/// The coordinate sum is conserved exactly as an identity of the update.
#[inline]
pub fn step(x: &mut [f64], u: u32, v: u32, delta: f64) -> Result<(), DynamicsError> {
    if u == v || u as usize >= x.len() || v as usize >= x.len() {
        return Err(DynamicsError::InvalidEdge(u, v));
    }
    let (ui, vi) = (u as usize, v as usize);
    let xu = x[ui];
    let xv = x[vi];
    x[ui] = (1.0 - delta) * xu + delta * xv;
    x[vi] = (1.0 - delta) * xv + delta * xu;
    Ok(())
}

/// Orthogonal decomposition of a state against the all-ones direction and
/// the partition indicator.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Coefficient along `1/sqrt(n)`.
    pub a_par: f64,
    /// Coefficient along `chi/sqrt(n)`.
    pub a_y: f64,
    /// Residual orthogonal to both directions.
    pub z: Vec<f64>,
    pub y_norm_sq: f64,
    pub z_norm_sq: f64,
}

pub fn decompose(x: &[f64], chi: &[i8]) -> Decomposition {
    let n = x.len();
    let sqrt_n = (n as f64).sqrt();
    let mut dot_ones = 0.0;
    let mut dot_chi = 0.0;
    for i in 0..n {
        dot_ones += x[i];
        dot_chi += x[i] * chi[i] as f64;
    }
    let a_par = dot_ones / sqrt_n;
    let a_y = dot_chi / sqrt_n;
    let mut z = vec![0.0; n];
    let mut z_norm_sq = 0.0;
    for i in 0..n {
        let zi = x[i] - a_par / sqrt_n - a_y * chi[i] as f64 / sqrt_n;
        z[i] = zi;
        z_norm_sq += zi * zi;
    }
    Decomposition {
        a_par,
        a_y,
        z,
        y_norm_sq: a_y * a_y,
        z_norm_sq,
    }
}

/// Recompose a state from its decomposition (test support for the
/// round-trip invariant).
pub fn recompose(dec: &Decomposition, chi: &[i8]) -> Vec<f64> {
    let n = chi.len();
    let sqrt_n = (n as f64).sqrt();
    (0..n)
        .map(|i| dec.a_par / sqrt_n + dec.a_y * chi[i] as f64 / sqrt_n + dec.z[i])
        .collect()
}

/// Bookkeeping for the random edge stream: per-node local activation
/// counters, the running cross-edge count, and (optionally) full history.
///
/// Global rounds are 1-indexed; `local_to_global(u, tau)` is the first round
/// at which `u` has seen `tau` activations, with expectation `0.5 n tau`.
#[derive(Debug, Clone)]
pub struct ActivationSchedule {
    pub seed: u64,
    pub step: u64,
    pub local_counts: Vec<u64>,
    pub cross_count: u64,
    /// Per-node activation rounds, present in history mode.
    pub activation_times: Option<Vec<Vec<u64>>>,
    /// Full edge sequence, present in history mode.
    pub edge_history: Option<Vec<(u32, u32)>>,
}

impl ActivationSchedule {
    pub fn new(n: usize, seed: u64, history: bool) -> Self {
        ActivationSchedule {
            seed,
            step: 0,
            local_counts: vec![0; n],
            cross_count: 0,
            activation_times: history.then(|| vec![Vec::new(); n]),
            edge_history: history.then(Vec::new),
        }
    }

    #[inline]
    pub fn record(&mut self, u: u32, v: u32, is_cross: bool) {
        self.step += 1;
        self.local_counts[u as usize] += 1;
        self.local_counts[v as usize] += 1;
        if is_cross {
            self.cross_count += 1;
        }
        if let Some(times) = &mut self.activation_times {
            times[u as usize].push(self.step);
            times[v as usize].push(self.step);
        }
        if let Some(hist) = &mut self.edge_history {
            hist.push((u, v));
        }
    }

    /// First global round with at least `tau` activations of `u`.
    pub fn local_to_global(&self, u: u32, tau: u64) -> Result<u64, DynamicsError> {
        if tau == 0 {
            return Ok(0);
        }
        let times = self
            .activation_times
            .as_ref()
            .ok_or(DynamicsError::NoHistory)?;
        let list = &times[u as usize];
        list.get(tau as usize - 1).copied().ok_or_else(|| {
            DynamicsError::NotYetReached {
                node: u,
                have: list.len() as u64,
                want: tau,
            }
        })
    }
}

/// Configuration for an averaging run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub delta: f64,
    pub rounds: u64,
    pub observe_every: u64,
    /// Enables the deviation-set observer with this threshold parameter.
    pub eps: Option<f64>,
    /// Enables the signed-threshold-set observer at this cutoff.
    pub eta: Option<f64>,
    /// Retain per-node activation times and the edge sequence.
    pub history: bool,
    /// Co-evolve the partition indicator under the same edge sequence and
    /// record its squared drift (the cross-edge verification mode).
    pub track_indicator_drift: bool,
}

impl RunConfig {
    pub fn new(delta: f64, rounds: u64) -> Self {
        RunConfig {
            delta,
            rounds,
            observe_every: rounds.max(1),
            eps: None,
            eta: None,
            history: false,
            track_indicator_drift: false,
        }
    }

    pub fn observe_every(mut self, every: u64) -> Self {
        self.observe_every = every.max(1);
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = Some(eta);
        self
    }

    pub fn with_history(mut self) -> Self {
        self.history = true;
        self
    }

    pub fn with_indicator_drift(mut self) -> Self {
        self.track_indicator_drift = true;
        self
    }
}

/// One observation of the running state.
#[derive(Debug, Clone)]
pub struct ObservationRow {
    pub t: u64,
    pub a_par: f64,
    pub a_y: f64,
    pub y_norm_sq: f64,
    pub z_norm_sq: f64,
    /// Nodes outside the frozen deviation tolerance, when `eps` is set.
    pub bad_count: Option<usize>,
    /// Nodes at or above the signed threshold, when `eta` is set.
    pub r_eta_count: Option<usize>,
    /// Complement count, when `eta` is set.
    pub r_eta_bar_count: Option<usize>,
    pub cross_count: u64,
    /// Squared drift of the co-evolved indicator, in drift-tracking mode.
    pub indicator_drift_sq: Option<f64>,
}

/// Everything a run produces: the observation series, the schedule
/// bookkeeping, and the initial/final states.
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub rows: Vec<ObservationRow>,
    pub schedule: ActivationSchedule,
    pub x0: Vec<f64>,
    pub x_final: Vec<f64>,
    pub delta: f64,
}

/// Run the process from a random initial state derived from `seed`.
pub fn run(g: &ClusteredGraph, cfg: &RunConfig, seed: u64) -> RunTrace {
    let x0 = init_random_state(g.n, derive_seed(seed, 0));
    run_from(g, &x0, cfg, derive_seed(seed, 1))
}

/// Run the process from a fixed initial state with the given edge-stream
/// seed. Fully deterministic in its arguments.
pub fn run_from(g: &ClusteredGraph, x0: &[f64], cfg: &RunConfig, edge_seed: u64) -> RunTrace {
    assert!(g.m() > 0, "graph has no edges");
    assert!(
        cfg.delta > 0.0 && cfg.delta < 1.0,
        "delta must lie in (0, 1)"
    );
    let n = g.n;
    let sqrt_n = (n as f64).sqrt();
    let mut x = x0.to_vec();
    let mut rng = rng_from_seed(edge_seed);
    let mut schedule = ActivationSchedule::new(n, edge_seed, cfg.history);

    // Frozen references from the initial state.
    let dec0 = decompose(&x, &g.chi);
    let x_par_coord = dec0.a_par / sqrt_n;
    let y0: Vec<f64> = g
        .chi
        .iter()
        .map(|&c| dec0.a_y * c as f64 / sqrt_n)
        .collect();
    let y0_norm_sq = dec0.y_norm_sq;

    let mut indicator: Option<Vec<f64>> = cfg
        .track_indicator_drift
        .then(|| g.chi.iter().map(|&c| c as f64).collect());

    let mut rows = Vec::new();
    let observe = |x: &[f64],
                   t: u64,
                   schedule: &ActivationSchedule,
                   indicator: &Option<Vec<f64>>|
     -> ObservationRow {
        let dec = decompose(x, &g.chi);
        let bad_count = cfg.eps.map(|eps| {
            let budget = eps * eps * y0_norm_sq / n as f64;
            (0..n)
                .filter(|&u| {
                    let dev = x[u] - (x_par_coord + y0[u]);
                    dev * dev > budget
                })
                .count()
        });
        let r_eta_count = cfg.eta.map(|eta| {
            (0..n)
                .filter(|&u| g.chi[u] as f64 * (x[u] - x_par_coord) >= eta)
                .count()
        });
        let indicator_drift_sq = indicator.as_ref().map(|w| {
            w.iter()
                .zip(&g.chi)
                .map(|(&wi, &c)| (wi - c as f64).powi(2))
                .sum()
        });
        ObservationRow {
            t,
            a_par: dec.a_par,
            a_y: dec.a_y,
            y_norm_sq: dec.y_norm_sq,
            z_norm_sq: dec.z_norm_sq,
            bad_count,
            r_eta_count,
            r_eta_bar_count: r_eta_count.map(|c| n - c),
            cross_count: schedule.cross_count,
            indicator_drift_sq,
        }
    };

    rows.push(observe(&x, 0, &schedule, &indicator));
    let m = g.m();
    for t in 1..=cfg.rounds {
        let idx = rng.random_range(0..m);
        let (u, v) = g.edges[idx];
        schedule.record(u, v, g.is_cross_edge(u, v));
        step(&mut x, u, v, cfg.delta).expect("edge list is valid");
        if let Some(w) = indicator.as_mut() {
            step(w, u, v, cfg.delta).expect("edge list is valid");
        }
        if t % cfg.observe_every == 0 || t == cfg.rounds {
            rows.push(observe(&x, t, &schedule, &indicator));
        }
    }

    RunTrace {
        rows,
        schedule,
        x0: x0.to_vec(),
        x_final: x,
        delta: cfg.delta,
    }
}

impl RunTrace {
    /// Largest absolute drift of the conserved sum coefficient across the
    /// observation series.
    pub fn a_par_drift(&self) -> f64 {
        let first = self.rows.first().map(|r| r.a_par).unwrap_or(0.0);
        self.rows
            .iter()
            .map(|r| (r.a_par - first).abs())
            .fold(0.0, f64::max)
    }
}
