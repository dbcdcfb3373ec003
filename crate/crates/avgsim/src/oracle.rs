//! Exact and analytic reference computations: the expected dynamics, the
//! one-step expectation by full edge enumeration, the first-moment
//! decomposition, and the second-moment recursion envelopes. Simulation
//! results are validated against these.

use crate::dynamics::{decompose, sign};
use crate::graph::{ClusteredGraph, GraphKind};
use crate::spectral::GraphSpectrum;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("second and third update-matrix eigenvalues coincide (gap = {gap})")]
    DegenerateGap { gap: f64 },
    #[error("alpha2 is zero; the monotone and sign windows are undefined")]
    ZeroAlpha2,
}

/// Kahan-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    #[inline]
    fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Apply the expected one-step update matrix `I - delta L / m` exactly,
/// via the edge list.
fn expected_update_apply(g: &ClusteredGraph, x: &[f64], delta: f64) -> Vec<f64> {
    let m = g.m() as f64;
    let mut lx = vec![0.0; g.n];
    for &(u, v) in &g.edges {
        let (u, v) = (u as usize, v as usize);
        let diff = x[u] - x[v];
        lx[u] += diff;
        lx[v] -= diff;
    }
    (0..g.n).map(|i| x[i] - delta * lx[i] / m).collect()
}

/// Expected state after `t` rounds, `(I - delta L / m)^t x0`, computed by
/// repeated matrix-vector products.
pub fn expected_state(g: &ClusteredGraph, x0: &[f64], t: u64, delta: f64) -> Vec<f64> {
    let mut x = x0.to_vec();
    for _ in 0..t {
        x = expected_update_apply(g, &x, delta);
    }
    x
}

/// Exact single-update expectations of the three squared norms, averaged
/// over all `m` equally likely edges.
#[derive(Debug, Clone, Copy)]
pub struct OneStepExpectation {
    pub ey2: f64,
    pub ez2: f64,
    pub eyz2: f64,
}

/// Enumerate every edge once. Only two coordinates change per edge, so each
/// edge contributes in O(1) given the state's decomposition.
pub fn one_step_expectation_exact(
    g: &ClusteredGraph,
    x: &[f64],
    delta: f64,
) -> OneStepExpectation {
    let n = g.n;
    let sqrt_n = (n as f64).sqrt();
    let dec = decompose(x, &g.chi);
    // w = x minus its all-ones component; the update acts on w the same way.
    let w: Vec<f64> = (0..n).map(|i| x[i] - dec.a_par / sqrt_n).collect();
    let w_norm_sq: f64 = dec.y_norm_sq + dec.z_norm_sq;

    let mut ey2 = Kahan::default();
    let mut eyz2 = Kahan::default();
    for &(u, v) in &g.edges {
        let (ui, vi) = (u as usize, v as usize);
        let gdiff = w[ui] - w[vi];
        // |w'|^2 = |w|^2 - 2 delta (1 - delta) (w_u - w_v)^2
        let wprime_sq = w_norm_sq - 2.0 * delta * (1.0 - delta) * gdiff * gdiff;
        let chi_diff = (g.chi[ui] - g.chi[vi]) as f64;
        let a_y_prime = dec.a_y - delta * gdiff * chi_diff / sqrt_n;
        ey2.add(a_y_prime * a_y_prime);
        eyz2.add(wprime_sq);
    }
    let m = g.m() as f64;
    let ey2 = ey2.sum / m;
    let eyz2 = eyz2.sum / m;
    OneStepExpectation {
        ey2,
        ez2: eyz2 - ey2,
        eyz2,
    }
}

#[derive(Debug, Clone)]
pub struct InequalityCheck {
    pub name: &'static str,
    /// Bound minus achieved value; nonnegative (up to float noise) when the
    /// inequality holds.
    pub slack: f64,
}

/// The general-weight one-step bounds on the two projected squared norms.
/// Requires a clustered regular graph (the constants use `b/d`).
pub fn one_step_inequality_slacks(
    g: &ClusteredGraph,
    lambda3: f64,
    x: &[f64],
    delta: f64,
) -> Vec<InequalityCheck> {
    assert_eq!(g.kind, GraphKind::ClusteredRegular);
    let n = g.n as f64;
    let (b, d) = (g.b as f64, g.d as f64);
    let dec = decompose(x, &g.chi);
    let (y2, z2) = (dec.y_norm_sq, dec.z_norm_sq);
    let got = one_step_expectation_exact(g, x, delta);

    let a11 = 1.0 - 8.0 * delta * b / (d * n) + 16.0 * delta * delta * b / (d * n * n);
    let a12 = 16.0 * delta * delta * b / (d * n * n);
    let a21 = 8.0 * delta * delta * b / (d * n);
    let a22 = 1.0 - 4.0 * delta * (1.0 - delta) * lambda3 / n;

    vec![
        InequalityCheck {
            name: "y-upper",
            slack: a11 * y2 + a12 * z2 - got.ey2,
        },
        InequalityCheck {
            name: "y-lower",
            slack: got.ey2 - a11 * y2,
        },
        InequalityCheck {
            name: "z-upper",
            slack: a21 * y2 + a22 * z2 - got.ez2,
        },
    ]
}

/// The exact-average (`delta = 1/2`) one-step bounds.
pub fn one_step_half_delta_slacks(
    g: &ClusteredGraph,
    lambda3: f64,
    x: &[f64],
) -> Vec<InequalityCheck> {
    assert_eq!(g.kind, GraphKind::ClusteredRegular);
    let n = g.n as f64;
    let lambda2 = 2.0 * g.b as f64 / g.d as f64;
    let dec = decompose(x, &g.chi);
    let (y2, z2) = (dec.y_norm_sq, dec.z_norm_sq);
    let got = one_step_expectation_exact(g, x, 0.5);

    vec![
        InequalityCheck {
            name: "yz-upper-half",
            slack: (1.0 - lambda2 / n) * y2 + (1.0 - lambda3 / n) * z2 - got.eyz2,
        },
        InequalityCheck {
            name: "y-lower-half",
            slack: got.ey2 - (1.0 - 2.0 * lambda2 / n) * y2,
        },
        InequalityCheck {
            name: "y-upper-half",
            slack: (1.0 - 2.0 * lambda2 / n) * y2 + 2.0 * lambda2 / (n * n) * (y2 + z2)
                - got.ey2,
        },
        InequalityCheck {
            name: "z-upper-half",
            slack: lambda2 / n * y2 + (1.0 - lambda3 / n) * z2 - got.ez2,
        },
    ]
}

/// First-moment decomposition coefficients of an initial state.
#[derive(Debug, Clone, Copy)]
pub struct FirstMomentDecomposition {
    pub alpha1: f64,
    pub alpha2: f64,
    /// Community means of the initial state.
    pub mu1: f64,
    pub mu2: f64,
}

impl FirstMomentDecomposition {
    /// Residual budget for the expected state at time `t`.
    pub fn e_norm_bound(&self, spec: &GraphSpectrum, t: u64) -> f64 {
        spec.wbar_lambdas[2].abs().powi(t as i32) * (spec.n as f64).sqrt()
    }
}

pub fn first_moment_decomposition(
    g: &ClusteredGraph,
    spec: &GraphSpectrum,
    x0: &[f64],
) -> FirstMomentDecomposition {
    let n = g.n;
    let half = n / 2;
    let mu1 = 2.0 / n as f64
        * x0.iter()
            .zip(&g.chi)
            .filter(|(_, &c)| c == 1)
            .map(|(&v, _)| v)
            .sum::<f64>();
    let mu2 = 2.0 / n as f64
        * x0.iter()
            .zip(&g.chi)
            .filter(|(_, &c)| c == -1)
            .map(|(&v, _)| v)
            .sum::<f64>();
    debug_assert_eq!(g.chi.iter().filter(|&&c| c == 1).count(), half);
    let f_minus_perp_sq: f64 = spec
        .f
        .iter()
        .zip(&spec.f_perp)
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum();
    let x_dot_perp: f64 = x0.iter().zip(&spec.f_perp).map(|(&a, &b)| a * b).sum();
    let alpha2 =
        ((mu1 - mu2) / 2.0 - x_dot_perp / (n as f64).sqrt()) / f_minus_perp_sq;
    FirstMomentDecomposition {
        alpha1: (mu1 + mu2) / 2.0,
        alpha2,
        mu1,
        mu2,
    }
}

#[derive(Debug, Clone)]
pub struct FirstMomentResidual {
    pub t: u64,
    pub residual: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Validate that the expected state at each sampled time decomposes into
/// the all-ones component plus the decayed second-eigenspace component,
/// with the remainder below the third-eigenvalue envelope.
pub fn validate_first_moment(
    g: &ClusteredGraph,
    spec: &GraphSpectrum,
    x0: &[f64],
    ts: &[u64],
) -> Vec<FirstMomentResidual> {
    let n = g.n;
    let fm = first_moment_decomposition(g, spec, x0);
    let block0 = spec.project_second_block(x0);
    let lam2 = spec.wbar_lambdas[1];
    let mut results = Vec::new();
    let mut sorted = ts.to_vec();
    sorted.sort_unstable();
    let mut x = x0.to_vec();
    let mut cur_t = 0u64;
    for &t in &sorted {
        while cur_t < t {
            x = expected_update_apply(g, &x, 0.5);
            cur_t += 1;
        }
        let decay = lam2.powi(t as i32);
        let mut resid_sq = 0.0;
        for i in 0..n {
            let e = x[i] - fm.alpha1 - decay * block0[i];
            resid_sq += e * e;
        }
        let residual = resid_sq.sqrt();
        let bound = fm.e_norm_bound(spec, t);
        results.push(FirstMomentResidual {
            t,
            residual,
            bound,
            ok: residual <= bound + 1e-9,
        });
    }
    results
}

/// Expected indicator coefficient after `t` rounds:
/// `(1 - 4 delta b / (d n))^t * a_y(0)`.
pub fn mu_expected(a_y0: f64, t: u64, delta: f64, b: usize, d: usize, n: usize) -> f64 {
    let rate = 1.0 - 4.0 * delta * b as f64 / (d as f64 * n as f64);
    rate.powi(t as i32) * a_y0
}

#[derive(Debug, Clone)]
pub struct SignWindows {
    /// From this round on, consecutive expected values move monotonically
    /// toward consensus in the community-revealing direction.
    pub t_mono: u64,
    /// Rounds where the sign of the expected value reveals the community;
    /// `None` when the coefficient condition fails outright.
    pub window: Option<(u64, u64)>,
}

/// Cap used for the open-ended window of mean-zero starts.
fn window_cap(n: usize) -> u64 {
    (n as u64).saturating_mul(n as u64)
}

pub fn monotonicity_and_sign_windows(
    spec: &GraphSpectrum,
    alpha1: f64,
    alpha2: f64,
    eps: f64,
) -> Result<SignWindows, OracleError> {
    let lam2 = spec.wbar_lambdas[1];
    let lam3 = spec.wbar_lambdas[2];
    let gap = lam2 - lam3;
    if gap <= spec.eig_tolerance {
        return Err(OracleError::DegenerateGap { gap });
    }
    if alpha2 == 0.0 {
        return Err(OracleError::ZeroAlpha2);
    }
    let n = spec.n as f64;
    let log_ratio = (lam2 / lam3).ln();
    let t_mono = (3.0 * (n / (1.0 - eps)).ln() / log_ratio).ceil().max(0.0) as u64;

    let window = if alpha1 == 0.0 {
        // Mean-zero start: the upper limit diverges; cap at n^2 rounds.
        Some((t_mono, window_cap(spec.n)))
    } else if alpha2.abs() > 2.0 * alpha1.abs() / (1.0 - eps) {
        let t_lo = ((n / alpha1.abs()).ln() / (1.0 / lam3).ln()).ceil() as u64;
        let t_hi = ((alpha2.abs() * (1.0 - eps) / (2.0 * alpha1.abs())).ln()
            / (1.0 / lam2).ln())
        .floor() as u64;
        (t_lo <= t_hi).then_some((t_lo, t_hi))
    } else {
        None
    };
    Ok(SignWindows { t_mono, window })
}

#[derive(Debug, Clone)]
pub struct SignPropertyReport {
    pub monotonicity_ok: bool,
    pub sign_ok: bool,
    pub excluded_bad_nodes: usize,
}

/// Verify, on the expected dynamics, that for nodes outside the bad set the
/// step-to-step movement (at rounds in `mono_ts`) and the value sign (at
/// rounds in `window_ts`) both point at the community.
pub fn verify_sign_windows(
    g: &ClusteredGraph,
    spec: &GraphSpectrum,
    x0: &[f64],
    eps: f64,
    mono_ts: &[u64],
    window_ts: &[u64],
) -> Result<SignPropertyReport, crate::spectral::SpectralError> {
    let bad = crate::spectral::bad_node_set(spec, eps)?;
    let is_bad: Vec<bool> = {
        let mut v = vec![false; g.n];
        for &u in &bad.nodes {
            v[u] = true;
        }
        v
    };
    let fm = first_moment_decomposition(g, spec, x0);
    let mut all: Vec<u64> = mono_ts.iter().chain(window_ts).copied().collect();
    all.sort_unstable();
    all.dedup();

    let mut monotonicity_ok = true;
    let mut sign_ok = true;
    let mut x = x0.to_vec();
    let mut prev;
    let mut cur_t = 0u64;
    for &t in &all {
        while cur_t < t {
            prev = x.clone();
            x = expected_update_apply(g, &x, 0.5);
            cur_t += 1;
            if cur_t == t {
                if mono_ts.contains(&t) {
                    for u in 0..g.n {
                        if is_bad[u] {
                            continue;
                        }
                        let diff = prev[u] - x[u];
                        if sign(diff) != sign(fm.alpha2 * g.chi[u] as f64) {
                            monotonicity_ok = false;
                        }
                    }
                }
                if window_ts.contains(&t) {
                    for u in 0..g.n {
                        if is_bad[u] {
                            continue;
                        }
                        if sign(x[u]) != sign(fm.alpha2 * g.chi[u] as f64) {
                            sign_ok = false;
                        }
                    }
                }
            }
        }
    }
    Ok(SignPropertyReport {
        monotonicity_ok,
        sign_ok,
        excluded_bad_nodes: bad.nodes.len(),
    })
}

/// The 2x2 second-moment recursion iterated exactly, together with the
/// closed-form envelope scalars it is checked against.
#[derive(Debug, Clone)]
pub struct RecursionEnvelope {
    pub a: [[f64; 2]; 2],
    /// One-round squared decay of the expected indicator coefficient.
    pub xi: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub kappa: f64,
    pub beta: f64,
    /// Shorthand `delta / (lambda3 - lambda2)`.
    pub eps_param: f64,
    /// `(y_hat_t, z_hat_t)` for `t = 0..=t_max`.
    pub series: Vec<(f64, f64)>,
    pub y0_sq: f64,
    /// Whether the closed-bound comparison preconditions were met.
    pub closed_bounds_applicable: bool,
    /// Iterated envelope stayed below the closed bounds at every step
    /// (meaningful only when applicable).
    pub closed_bounds_hold: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn recursion_envelope(
    y0_sq: f64,
    z0_sq: f64,
    delta: f64,
    b: usize,
    d: usize,
    lambda3: f64,
    n: usize,
    t_max: u64,
) -> RecursionEnvelope {
    assert!((0.0..1.0).contains(&delta), "delta must lie in [0, 1)");
    let nf = n as f64;
    let (bf, df) = (b as f64, d as f64);
    let lambda2 = 2.0 * bf / df;

    let a11 = 1.0 - 8.0 * delta * bf / (df * nf) + 16.0 * delta * delta * bf / (df * nf * nf);
    let a12 = 16.0 * delta * delta * bf / (df * nf * nf);
    let a21 = 8.0 * delta * delta * bf / (df * nf);
    let a22 = 1.0 - 4.0 * delta * (1.0 - delta) * lambda3 / nf;

    let xi = (1.0 - 4.0 * delta * bf / (df * nf)).powi(2);
    let xi1 = 1.0 - 8.0 * delta * bf / (df * nf) + 336.0 * delta * delta * bf / (df * nf * nf);
    let xi2 = a22;
    let eps_param = if lambda3 > lambda2 {
        delta / (lambda3 - lambda2)
    } else {
        f64::INFINITY
    };
    let beta = if y0_sq > 0.0 {
        (z0_sq / (nf * y0_sq)).max(1.0)
    } else {
        1.0
    };
    let kappa = 1.0 + 40.0 * eps_param.min(1e12) * bf / df * beta;

    let mut series = Vec::with_capacity(t_max as usize + 1);
    series.push((y0_sq, z0_sq));
    let (mut y, mut z) = (y0_sq, z0_sq);
    for _ in 0..t_max {
        let ny = a11 * y + a12 * z;
        let nz = a21 * y + a22 * z;
        y = ny;
        z = nz;
        series.push((y, z));
    }

    let closed_bounds_applicable = lambda3 > lambda2
        && delta > 0.0
        && delta <= 0.8 * (lambda3 - lambda2)
        && beta <= df / (eps_param * bf)
        && y0_sq > 0.0;
    let mut closed_bounds_hold = true;
    if closed_bounds_applicable {
        let mut xi1_pow = 1.0;
        let mut xi2_pow = 1.0;
        for &(yt, zt) in &series {
            let y_closed = kappa * xi1_pow * y0_sq;
            let z_closed =
                (20.0 * eps_param * bf / df * kappa * xi1_pow + beta * nf * xi2_pow) * y0_sq;
            if yt > y_closed * (1.0 + 1e-12) + 1e-12 || zt > z_closed * (1.0 + 1e-12) + 1e-12 {
                closed_bounds_hold = false;
                break;
            }
            xi1_pow *= xi1;
            xi2_pow *= xi2;
        }
    }

    RecursionEnvelope {
        a: [[a11, a12], [a21, a22]],
        xi,
        xi1,
        xi2,
        kappa,
        beta,
        eps_param,
        series,
        y0_sq,
        closed_bounds_applicable,
        closed_bounds_hold,
    }
}

impl RecursionEnvelope {
    pub fn y_hat(&self, t: u64) -> f64 {
        self.series[t as usize].0
    }

    pub fn z_hat(&self, t: u64) -> f64 {
        self.series[t as usize].1
    }

    /// Expected indicator coefficient envelope `xi^{t/2} * sqrt(y0_sq)`.
    pub fn mu(&self, t: u64) -> f64 {
        self.xi.powf(t as f64 / 2.0) * self.y0_sq.sqrt()
    }
}

/// Second-moment theorem bound `3 lambda2 t / n` on the expected squared
/// distance from the initial indicator component.
pub fn mom_bound_rhs(lambda2: f64, t: u64, n: usize) -> f64 {
    3.0 * lambda2 * t as f64 / n as f64
}

/// The theorem's validity window `[3 n ln n / lambda3, n / (4 lambda2)]`,
/// reported for checking, not enforced.
pub fn mom_bound_window(lambda2: f64, lambda3: f64, n: usize) -> (u64, u64) {
    let nf = n as f64;
    let lo = (3.0 * nf * nf.ln() / lambda3).ceil() as u64;
    let hi = (nf / (4.0 * lambda2)).floor() as u64;
    (lo, hi)
}
