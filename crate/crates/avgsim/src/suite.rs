//! The built-in verification suite: eleven numbered criteria covering graph
//! structure, conservation, first- and second-moment oracles, the one-step
//! inequalities, both labeling protocols, and schedule statistics. Each
//! criterion is a pure function of frozen constants (instances, seeds,
//! thresholds, runtime budgets) and reports pass/fail with measured values.
//!
//! `avgsim verify` prints one line per criterion; the `acceptance`
//! integration test asserts each one.

use std::time::Instant;

use crate::dynamics::{decompose, init_random_state, run, run_from, RunConfig};
use crate::graph::{generate_clustered_regular, verify_clustered_invariants};
use crate::metrics::{csl_evaluate, stopping_time_coverage, weak_reconstruction_error};
use crate::oracle::{
    expected_state, mom_bound_rhs, mu_expected, one_step_half_delta_slacks,
    one_step_inequality_slacks, recursion_envelope,
};
use crate::protocols::{
    boosted_jump_run, jump_labeling_run, jump_scaled_parameters, sign_labeling_run,
    sign_theorem_parameters,
};
use crate::rng::{derive_seed, rng_from_seed};
use crate::spectral::{compute_spectrum, normalized_laplacian, DEFAULT_EIG_TOL};
use crate::trials::{run_trials, RunningStats};

use rand::Rng as _;

/// Activation-budget multiplier for the jump protocol's auto parameters on
/// the suite's desk instance; frozen from the pilot sweep (0.005-0.02 all
/// reconstruct, 0.02 has the best tail).
pub const JUMP_BUDGET_SCALE: f64 = 0.02;

/// Frozen constant for the initial-projection tail bound; the exact
/// binomial computation gives ratios at most 0.69 against this budget.
pub const PROJECTION_C: f64 = 1.0;

/// Weight used for the envelope ratio clause: it must respect the
/// concentration theorem's `delta < 0.8 (lambda3 - lambda2)` precondition
/// on the (64,8,1) instance (gap about 0.198), which delta = 0.3 does not.
pub const RATIO_CHECK_DELTA: f64 = 0.1;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub seconds: f64,
}

impl CriterionOutcome {
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {:<28} {:6.2}s  {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.details
        )
    }
}

struct Check {
    passed: bool,
    details: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            passed: true,
            details: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, detail: String) {
        if !ok {
            self.passed = false;
        }
        self.details.push(format!(
            "{}{}",
            if ok { "" } else { "FAILED: " },
            detail
        ));
    }

    fn note(&mut self, detail: String) {
        self.details.push(detail);
    }
}

fn finish(
    id: usize,
    name: &'static str,
    budget_secs: f64,
    started: Instant,
    mut check: Check,
) -> CriterionOutcome {
    let seconds = started.elapsed().as_secs_f64();
    if seconds > budget_secs {
        check.passed = false;
        check
            .details
            .push(format!("FAILED: runtime {seconds:.1}s over budget {budget_secs}s"));
    }
    CriterionOutcome {
        id,
        name,
        passed: check.passed,
        details: check.details.join("; "),
        seconds,
    }
}

/// Criterion 1: structural invariants over a parameter grid, plus the exact
/// indicator eigenvector check.
pub fn criterion_1() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let ns = [8usize, 16, 32, 64, 128, 256];
    let dbs = [
        (3usize, 1usize),
        (4, 1),
        (5, 1),
        (5, 2),
        (6, 1),
        (6, 2),
        (7, 2),
        (8, 1),
        (8, 3),
        (10, 3),
        (12, 1),
        (16, 5),
    ];
    let mut built = 0usize;
    let mut grid_seed = 0u64;
    let mut worst_residual = 0.0f64;
    let mut failures: Vec<String> = Vec::new();
    'outer: for &n in &ns {
        for &(d, b) in &dbs {
            let half = n / 2;
            if 2 * b >= d || d >= n || b > half || d - b > half - 1 || ((d - b) * half) % 2 != 0 {
                continue;
            }
            grid_seed += 1;
            match generate_clustered_regular(n, d, b, grid_seed, 400) {
                Ok(g) => {
                    let report = verify_clustered_invariants(&g);
                    if !report.ok() {
                        failures.push(format!("({n},{d},{b}): {:?}", report.violations));
                    }
                    // indicator eigen-residual on the normalized Laplacian
                    let lap = normalized_laplacian(&g).unwrap();
                    let f: Vec<f64> = g
                        .chi
                        .iter()
                        .map(|&c| c as f64 / (n as f64).sqrt())
                        .collect();
                    let lf = lap.mul_vec(&f);
                    let lam = 2.0 * b as f64 / d as f64;
                    let resid = lf
                        .iter()
                        .zip(&f)
                        .map(|(a, b)| (a - lam * b).powi(2))
                        .sum::<f64>()
                        .sqrt();
                    worst_residual = worst_residual.max(resid);
                    if resid >= 1e-9 {
                        failures.push(format!("({n},{d},{b}) eigen residual {resid:.2e}"));
                    }
                    built += 1;
                    if built >= 50 {
                        break 'outer;
                    }
                }
                Err(e) => failures.push(format!("({n},{d},{b}) generation failed: {e}")),
            }
        }
    }
    check.require(built >= 50, format!("built {built} grid graphs (need 50)"));
    check.require(
        failures.is_empty(),
        format!(
            "zero violations, worst eigen residual {worst_residual:.2e}{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; {:?}", failures)
            }
        ),
    );
    finish(1, "structural invariants", 30.0, started, check)
}

/// Criterion 2: sum conservation and bit-level determinism over a million
/// rounds.
pub fn criterion_2() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let g = generate_clustered_regular(256, 16, 1, 2, 400).unwrap();
    let cfg = RunConfig::new(0.3, 1_000_000).observe_every(50_000);
    let trace = run(&g, &cfg, 424242);
    let drift = trace.a_par_drift();
    check.require(drift < 1e-9, format!("a_par drift {drift:.2e}"));
    let first = crate::report::series_csv(&trace);
    let second = crate::report::series_csv(&run(&g, &cfg, 424242));
    check.require(first == second, "repeated run byte-identical".into());
    finish(2, "conservation & determinism", 10.0, started, check)
}

/// Criterion 3: Monte Carlo mean of the state against the expected-update
/// power iteration, per coordinate.
pub fn criterion_3() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let g = generate_clustered_regular(16, 5, 1, 1, 400).unwrap();
    let n = g.n;
    let x0 = init_random_state(n, derive_seed(3003, 0));
    let ts = [10u64, 100];
    let trials_total: usize = 200_000;
    let chunk = 1000usize;
    let chunks = trials_total / chunk;
    // per (t, coordinate) statistics, merged across parallel chunks
    let stats = run_trials(chunks, 0, |c, _| {
        let mut local = vec![RunningStats::default(); ts.len() * n];
        for i in 0..chunk {
            let trial = c * chunk + i;
            let mut x = x0.clone();
            let mut rng = rng_from_seed(derive_seed(3003, 1 + trial as u64));
            let mut next = 0usize;
            for t in 1..=100u64 {
                let idx = rng.random_range(0..g.m());
                let (u, v) = g.edges[idx];
                crate::dynamics::step(&mut x, u, v, 0.5).unwrap();
                if next < ts.len() && t == ts[next] {
                    for (coord, &val) in x.iter().enumerate() {
                        local[next * n + coord].push(val);
                    }
                    next += 1;
                }
            }
        }
        local
    })
    .into_iter()
    .fold(vec![RunningStats::default(); ts.len() * n], |mut acc, l| {
        for (a, b) in acc.iter_mut().zip(&l) {
            a.merge(b);
        }
        acc
    });
    let mut worst_sigma = 0.0f64;
    for (ti, &t) in ts.iter().enumerate() {
        let predicted = expected_state(&g, &x0, t, 0.5);
        for coord in 0..n {
            let s = &stats[ti * n + coord];
            let dev = (s.mean() - predicted[coord]).abs();
            let se = s.std_error().max(1e-15);
            worst_sigma = worst_sigma.max(dev / se);
            if dev > 4.0 * se {
                check.require(
                    false,
                    format!(
                        "t={t} coord {coord}: mean {:.6} vs predicted {:.6} ({:.1} se)",
                        s.mean(),
                        predicted[coord],
                        dev / se
                    ),
                );
            }
        }
    }
    check.note(format!(
        "{} trials, worst deviation {:.2} se",
        trials_total, worst_sigma
    ));
    finish(3, "first-moment oracle", 300.0, started, check)
}

/// Criterion 4: empirical mean of the indicator coefficient against its
/// exact exponential decay.
pub fn criterion_4() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let g = generate_clustered_regular(32, 6, 1, 2, 400).unwrap();
    let x0 = init_random_state(g.n, derive_seed(4004, 0));
    let a_y0 = decompose(&x0, &g.chi).a_y;
    let ts = [50u64, 500];
    let trials_total = 200_000usize;
    let chunk = 1000usize;
    for &delta in &[0.25f64, 0.5] {
        let stats = run_trials(trials_total / chunk, 0, |c, _| {
            let mut local = [RunningStats::default(); 2];
            let cfg = RunConfig::new(delta, 500).observe_every(50);
            for i in 0..chunk {
                let trial = c * chunk + i;
                let seed = derive_seed(4004 + delta.to_bits(), 1 + trial as u64);
                let trace = run_from(&g, &x0, &cfg, seed);
                for row in &trace.rows {
                    if row.t == ts[0] {
                        local[0].push(row.a_y);
                    }
                    if row.t == ts[1] {
                        local[1].push(row.a_y);
                    }
                }
            }
            local
        })
        .into_iter()
        .fold([RunningStats::default(); 2], |mut acc, l| {
            acc[0].merge(&l[0]);
            acc[1].merge(&l[1]);
            acc
        });
        for (ti, &t) in ts.iter().enumerate() {
            let predicted = mu_expected(a_y0, t, delta, g.b, g.d, g.n);
            let s = &stats[ti];
            let dev = (s.mean() - predicted).abs();
            let se = s.std_error().max(1e-15);
            check.require(
                dev <= 4.0 * se,
                format!(
                    "delta={delta} t={t}: mean {:.5} vs {:.5} ({:.2} se)",
                    s.mean(),
                    predicted,
                    dev / se
                ),
            );
        }
    }
    finish(4, "indicator-coefficient decay", 300.0, started, check)
}

/// Criterion 5: the seven one-step expectation inequalities by exact edge
/// enumeration on 100 random states.
pub fn criterion_5() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let g = generate_clustered_regular(64, 8, 1, 2, 400).unwrap();
    let spec = compute_spectrum(&g, DEFAULT_EIG_TOL).unwrap();
    let lambda3 = spec.lambda3();
    let mut worst = f64::INFINITY;
    for s in 0..100u64 {
        let x = init_random_state(g.n, derive_seed(5005, s));
        for c in one_step_inequality_slacks(&g, lambda3, &x, 0.3)
            .into_iter()
            .chain(one_step_inequality_slacks(&g, lambda3, &x, 0.5))
            .chain(one_step_half_delta_slacks(&g, lambda3, &x))
        {
            worst = worst.min(c.slack);
            if c.slack < -1e-12 {
                check.require(false, format!("state {s}: {} slack {:.2e}", c.name, c.slack));
            }
        }
    }
    check.require(
        worst >= -1e-12,
        format!("minimum slack {worst:.2e} over 100 states x 10 bounds"),
    );
    finish(5, "one-step inequalities", 60.0, started, check)
}

/// Criterion 6: second-moment distance bound at the left edge of the
/// theorem window.
pub fn criterion_6() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let g = generate_clustered_regular(256, 32, 1, 2, 400).unwrap();
    let spec = compute_spectrum(&g, DEFAULT_EIG_TOL).unwrap();
    let lambda2 = 2.0 * g.b as f64 / g.d as f64;
    check.require(
        (spec.lambda2() - 1.0 / 16.0).abs() < 1e-9,
        format!("lambda2 = {:.6}", spec.lambda2()),
    );
    let t = (3.0 * g.n as f64 * (g.n as f64).ln() / spec.lambda3()).ceil() as u64;
    let cfg = RunConfig::new(0.5, t).observe_every(t);
    let stats = run_trials(1000usize, 6006, |_, seed| {
        let trace = run(&g, &cfg, seed);
        let first = &trace.rows[0];
        let last = trace.rows.last().unwrap();
        (last.a_y - first.a_y).powi(2) + last.z_norm_sq
    })
    .into_iter()
    .fold(RunningStats::default(), |mut acc, v| {
        acc.push(v);
        acc
    });
    let rhs = mom_bound_rhs(lambda2, t, g.n);
    check.require(
        stats.mean() <= rhs,
        format!(
            "E|y+z-y0|^2 = {:.4} (se {:.4}) vs bound {:.4} at t={t}",
            stats.mean(),
            stats.std_error(),
            rhs
        ),
    );
    finish(6, "second-moment window bound", 300.0, started, check)
}

/// Criterion 7: the iterated 2x2 envelope dominates the Monte Carlo squared
/// norms, and the envelope ratio drops below the concentration bound inside
/// the theorem window (checked at a weight satisfying the theorem's
/// precondition on this instance).
pub fn criterion_7() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let g = generate_clustered_regular(64, 8, 1, 2, 400).unwrap();
    let spec = compute_spectrum(&g, DEFAULT_EIG_TOL).unwrap();
    let lambda3 = spec.lambda3();
    let lambda2 = spec.lambda2();
    let x0 = init_random_state(g.n, derive_seed(7007, 0));
    let dec0 = decompose(&x0, &g.chi);
    let delta = 0.3;
    let ts = [100u64, 1000, 10_000];
    let env = recursion_envelope(
        dec0.y_norm_sq,
        dec0.z_norm_sq,
        delta,
        g.b,
        g.d,
        lambda3,
        g.n,
        ts[2],
    );

    let trials_total = 10_000usize;
    let chunk = 100usize;
    let cfg = RunConfig::new(delta, ts[2]).observe_every(100);
    let stats = run_trials(trials_total / chunk, 0, |c, _| {
        let mut local = [[RunningStats::default(); 2]; 3];
        for i in 0..chunk {
            let trial = c * chunk + i;
            let trace = run_from(&g, &x0, &cfg, derive_seed(7007, 1 + trial as u64));
            for row in &trace.rows {
                if let Some(ti) = ts.iter().position(|&t| t == row.t) {
                    local[ti][0].push(row.y_norm_sq);
                    local[ti][1].push(row.z_norm_sq);
                }
            }
        }
        local
    })
    .into_iter()
    .fold([[RunningStats::default(); 2]; 3], |mut acc, l| {
        for (a, b) in acc.iter_mut().zip(&l) {
            a[0].merge(&b[0]);
            a[1].merge(&b[1]);
        }
        acc
    });
    for (ti, &t) in ts.iter().enumerate() {
        let (sy, sz) = (&stats[ti][0], &stats[ti][1]);
        check.require(
            sy.mean() <= env.y_hat(t) + 4.0 * sy.std_error(),
            format!("t={t}: E|y|^2 {:.4e} vs envelope {:.4e}", sy.mean(), env.y_hat(t)),
        );
        check.require(
            sz.mean() <= env.z_hat(t) + 4.0 * sz.std_error(),
            format!("t={t}: E|z|^2 {:.4e} vs envelope {:.4e}", sz.mean(), env.z_hat(t)),
        );
    }

    // Ratio clause. The concentration theorem requires
    // delta < 0.8 (lambda3 - lambda2); on this instance that excludes 0.3,
    // so the window is evaluated at RATIO_CHECK_DELTA.
    let gap = lambda3 - lambda2;
    check.note(format!(
        "gap {:.3}: ratio clause at delta={} (0.8 gap = {:.3} excludes 0.3)",
        gap,
        RATIO_CHECK_DELTA,
        0.8 * gap
    ));
    let rd = RATIO_CHECK_DELTA;
    assert!(rd < 0.8 * gap);
    let nf = g.n as f64;
    let t_lo = (nf * nf.ln() / (rd * gap)).ceil() as u64;
    let t_hi = (nf * nf / (rd * gap)).floor() as u64;
    let renv = recursion_envelope(
        dec0.y_norm_sq,
        dec0.z_norm_sq,
        rd,
        g.b,
        g.d,
        lambda3,
        g.n,
        t_hi,
    );
    let bound = (rd * g.b as f64 / (g.d as f64 * gap)).sqrt();
    let mut worst_ratio = 0.0f64;
    for k in 0..=4u64 {
        let t = t_lo + (t_hi - t_lo) * k / 4;
        let ratio = renv.z_hat(t) / renv.y_hat(t);
        worst_ratio = worst_ratio.max(ratio);
    }
    check.require(
        worst_ratio < bound,
        format!(
            "max envelope ratio {:.4} vs bound {:.4} over window [{t_lo},{t_hi}]",
            worst_ratio, bound
        ),
    );
    finish(7, "envelope dominance & ratio", 600.0, started, check)
}

/// Criterion 8: jump labeling reconstructs the partition, and majority
/// boosting does not hurt.
pub fn criterion_8() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let g = generate_clustered_regular(500, 50, 5, 7, 50).unwrap();
    let spec = compute_spectrum(&g, DEFAULT_EIG_TOL).unwrap();
    let delta = 0.3;
    let cfg = jump_scaled_parameters(&g, spec.lambda3(), delta, JUMP_BUDGET_SCALE).unwrap();
    check.note(format!(
        "auto taus ({},{},{},{}) at scale {}",
        cfg.tau_start, cfg.tau_start_max, cfg.tau_end, cfg.tau_end_max, JUMP_BUDGET_SCALE
    ));

    let errors = run_trials(50usize, 8008, |_, seed| {
        let out = jump_labeling_run(&g, &cfg, seed).unwrap();
        weak_reconstruction_error(&out.labels, &g.chi).error_fraction
    });
    let good = errors.iter().filter(|&&e| e <= 0.15).count();
    check.require(
        good * 10 >= errors.len() * 9,
        format!("error <= 0.15 in {good}/50 trials"),
    );

    let paired = run_trials(30usize, 8009, |_, seed| {
        let single = jump_labeling_run(&g, &cfg, seed).unwrap();
        let boosted = boosted_jump_run(&g, &cfg, 11, derive_seed(seed, 1)).unwrap();
        (
            weak_reconstruction_error(&single.labels, &g.chi).error_fraction,
            weak_reconstruction_error(&boosted.labels, &g.chi).error_fraction,
        )
    });
    let median = |mut v: Vec<f64>| {
        v.sort_by(f64::total_cmp);
        v[v.len() / 2]
    };
    let single_median = median(paired.iter().map(|p| p.0).collect());
    let boosted_median = median(paired.iter().map(|p| p.1).collect());
    check.require(
        boosted_median <= single_median,
        format!("boosted median {boosted_median:.4} vs single median {single_median:.4}"),
    );
    finish(8, "jump reconstruction", 900.0, started, check)
}

/// Criterion 9: community-sensitive labeling of the sparse-cut instance
/// with the theorem's own threshold and signature length.
pub fn criterion_9() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let g = generate_clustered_regular(512, 32, 1, 2, 50).unwrap();
    let spec = compute_spectrum(&g, DEFAULT_EIG_TOL).unwrap();
    let eps = 0.2;
    let cfg = sign_theorem_parameters(g.n, spec.lambda3(), eps);
    check.note(format!(
        "lambda3 {:.4} -> T={} ell={}",
        spec.lambda3(),
        cfg.activation_threshold,
        cfg.ell
    ));
    let trials = 20usize;
    let results = run_trials(trials, 9009, |i, seed| {
        let out = sign_labeling_run(&g, &cfg, seed);
        let score = csl_evaluate(&out.labels, cfg.ell, &g.chi, eps, derive_seed(77, i as u64));
        let coverage = stopping_time_coverage(
            &out.freeze_component_rounds,
            cfg.activation_threshold as u64,
            g.n,
        );
        (score.gamma, score.c1_observed, score.c2_observed, coverage)
    });
    let structural = results
        .iter()
        .filter(|(gamma, c1, c2, _)| *gamma <= eps && *c1 <= 4.0 * eps && *c2 >= 1.0 / 6.0)
        .count();
    let mean_c2 = results.iter().map(|r| r.2).sum::<f64>() / trials as f64;
    let min_coverage = results.iter().map(|r| r.3).fold(f64::INFINITY, f64::min);
    check.require(
        structural * 10 >= trials * 8,
        format!(
            "gamma<={eps}, c1<=4eps, c2>=1/6 in {structural}/{trials} trials (mean c2 {mean_c2:.4})"
        ),
    );
    check.require(
        min_coverage >= 1.0 - 1.0 / g.n as f64,
        format!(
            "min freeze coverage {min_coverage:.5} vs 1-1/n = {:.5}",
            1.0 - 1.0 / g.n as f64
        ),
    );
    finish(9, "sign-labeling CSL", 900.0, started, check)
}

/// Criterion 10: schedule statistics (uniform local-time maps and the mean
/// local-to-global conversion).
pub fn criterion_10() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let g = generate_clustered_regular(200, 10, 1, 2, 400).unwrap();
    let rounds = 3000u64;
    let fractions = run_trials(20usize, 1010, |_, seed| {
        let trace = run(&g, &RunConfig::new(0.5, rounds).with_history(), seed);
        crate::metrics::uniformity_fraction(&trace.schedule, 2.0, 4.0, 0.05).unwrap()
    });
    let mean_fraction = fractions.iter().sum::<f64>() / fractions.len() as f64;
    check.require(
        mean_fraction >= 0.95,
        format!("mean uniformity fraction {mean_fraction:.4}"),
    );

    let tau = 100u64;
    let trials = 10_000usize;
    let total: f64 = run_trials(trials, 1011, |_, seed| {
        let mut rng = rng_from_seed(seed);
        let mut count = 0u64;
        let mut t = 0u64;
        while count < tau {
            t += 1;
            let (u, v) = g.edges[rng.random_range(0..g.m())];
            if u == 0 || v == 0 {
                count += 1;
            }
        }
        t as f64
    })
    .into_iter()
    .sum();
    let mean = total / trials as f64;
    let expected = 0.5 * g.n as f64 * tau as f64;
    check.require(
        (mean - expected).abs() / expected <= 0.05,
        format!("E[T_u({tau})] = {mean:.1} vs 0.5 n tau = {expected:.1}"),
    );
    finish(10, "schedule statistics", 120.0, started, check)
}

/// Criterion 11: tail bound on the initial residual-versus-indicator norm
/// ratio, with the constant frozen at 1.
pub fn criterion_11() -> CriterionOutcome {
    let started = Instant::now();
    let mut check = Check::new();
    let n = 1000usize;
    let chi: Vec<i8> = (0..n).map(|i| if i < n / 2 { 1 } else { -1 }).collect();
    let betas = [4.0f64, 16.0, 64.0];
    let trials_total = 100_000usize;
    let chunk = 1000usize;
    let counts = run_trials(trials_total / chunk, 0, |c, _| {
        let mut local = [0u64; 3];
        for i in 0..chunk {
            let x = init_random_state(n, derive_seed(1101, (c * chunk + i) as u64));
            let dec = decompose(&x, &chi);
            for (bi, &beta) in betas.iter().enumerate() {
                if dec.z_norm_sq > n as f64 * beta * dec.y_norm_sq {
                    local[bi] += 1;
                }
            }
        }
        local
    })
    .into_iter()
    .fold([0u64; 3], |mut acc, l| {
        for (a, b) in acc.iter_mut().zip(&l) {
            *a += b;
        }
        acc
    });
    for (bi, &beta) in betas.iter().enumerate() {
        let p = counts[bi] as f64 / trials_total as f64;
        let budget = PROJECTION_C * (1.0 / beta.sqrt() + 1.0 / (n as f64).sqrt());
        check.require(
            p <= budget,
            format!("beta={beta}: P = {p:.4} vs C(1/sqrt(beta)+1/sqrt(n)) = {budget:.4}"),
        );
    }
    finish(11, "initial projection tail", 120.0, started, check)
}

/// Criteria included in the quick subset (each well under a minute).
pub const QUICK_IDS: [usize; 5] = [1, 2, 5, 10, 11];

pub fn run_criterion(id: usize) -> CriterionOutcome {
    match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => panic!("unknown criterion {id}"),
    }
}

pub fn run_all(quick: bool) -> Vec<CriterionOutcome> {
    let ids: Vec<usize> = if quick {
        QUICK_IDS.to_vec()
    } else {
        (1..=11).collect()
    };
    ids.into_iter().map(run_criterion).collect()
}
