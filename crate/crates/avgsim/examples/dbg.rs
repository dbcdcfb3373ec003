use avgsim::dynamics::{decompose, init_random_state};
use avgsim::graph::generate_clustered_regular;
use avgsim::metrics::{csl_evaluate, stopping_time_coverage, weak_reconstruction_error};
use avgsim::oracle::recursion_envelope;
use avgsim::protocols::{
    boosted_jump_run, jump_labeling_run, jump_scaled_parameters, sign_labeling_run,
    sign_theorem_parameters,
};
use avgsim::spectral::{compute_spectrum, DEFAULT_EIG_TOL};
use avgsim::trials::run_trials;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let what = args.get(1).map(String::as_str).unwrap_or("spectra");
    match what {
        "spectra" => spectra(),
        "envelope" => envelope(),
        "jump" => jump_pilot(args.get(2).map(|s| s.parse().unwrap()).unwrap_or(0.005)),
        "sign" => sign_pilot(),
        "signT" => sign_custom_t(args.get(2).map(|s| s.parse().unwrap()).unwrap_or(22)),
        "proj" => projection_constant(),
        "suite" => {
            for o in avgsim::suite::run_all(false) {
                println!("{}", o.summary_line());
            }
        }
        _ => eprintln!("unknown pilot {what}"),
    }
}

fn spectra() {
    for (n, d, b, seed) in [
        (64usize, 8usize, 1usize, 2u64),
        (256, 16, 1, 2),
        (256, 32, 1, 2),
        (500, 50, 5, 7),
        (512, 32, 1, 2),
        (32, 6, 1, 2),
        (16, 5, 1, 1),
    ] {
        let g = generate_clustered_regular(n, d, b, seed, 400).unwrap();
        let t0 = std::time::Instant::now();
        let spec = compute_spectrum(&g, DEFAULT_EIG_TOL).unwrap();
        println!(
            "({n},{d},{b}) seed={seed}: l2={:.6} l3={:.6} 2b/d={:.6} gap={:.6} wgap={:.3e} [{:?}]",
            spec.lambda2(),
            spec.lambda3(),
            2.0 * b as f64 / d as f64,
            spec.lambda3() - spec.lambda2(),
            spec.wbar_gap(),
            t0.elapsed()
        );
    }
}

fn envelope() {
    let (n, d, b, seed) = (64usize, 8usize, 1usize, 2u64);
    let g = generate_clustered_regular(n, d, b, seed, 400).unwrap();
    let spec = compute_spectrum(&g, DEFAULT_EIG_TOL).unwrap();
    let delta = 0.3;
    let lambda3 = spec.lambda3();
    let lambda2 = spec.lambda2();
    let x0 = init_random_state(n, 5);
    let dec = decompose(&x0, &g.chi);
    println!(
        "l2={lambda2:.4} l3={lambda3:.4} gap={:.4} y0={:.4} z0={:.4}",
        lambda3 - lambda2,
        dec.y_norm_sq,
        dec.z_norm_sq
    );
    let t_max = 200_000u64;
    let env = recursion_envelope(
        dec.y_norm_sq,
        dec.z_norm_sq,
        delta,
        b,
        d,
        lambda3,
        n,
        t_max,
    );
    let bound = (delta * b as f64 / (d as f64 * (lambda3 - lambda2))).sqrt();
    println!("ratio bound sqrt(delta b/(d gap)) = {bound:.4}");
    for t in [100u64, 1000, 5917, 10_000, 50_000, 100_000, 200_000] {
        println!(
            "t={t}: y={:.4e} z={:.4e} ratio={:.4}",
            env.y_hat(t),
            env.z_hat(t),
            env.z_hat(t) / env.y_hat(t)
        );
    }
}

fn jump_pilot(scale: f64) {
    let (n, d, b, seed) = (500usize, 50usize, 5usize, 7u64);
    let g = generate_clustered_regular(n, d, b, seed, 50).unwrap();
    let spec = compute_spectrum(&g, DEFAULT_EIG_TOL).unwrap();
    let delta = 0.3;
    let cfg = jump_scaled_parameters(&g, spec.lambda3(), delta, scale).unwrap();
    println!(
        "lambda3={:.4} cfg: ts={} tsm={} te={} tem={}",
        spec.lambda3(),
        cfg.tau_start,
        cfg.tau_start_max,
        cfg.tau_end,
        cfg.tau_end_max
    );
    let t0 = std::time::Instant::now();
    let errors: Vec<f64> = run_trials(50, 1000, |_, s| {
        let out = jump_labeling_run(&g, &cfg, s).unwrap();
        weak_reconstruction_error(&out.labels, &g.chi).error_fraction
    });
    let mut sorted = errors.clone();
    sorted.sort_by(f64::total_cmp);
    println!(
        "scale={scale}: median={:.4} p90={:.4} max={:.4} frac<=0.15={:.2} [{:?}]",
        sorted[25],
        sorted[45],
        sorted[49],
        errors.iter().filter(|&&e| e <= 0.15).count() as f64 / 50.0,
        t0.elapsed()
    );
    // paired boosted comparison on fewer trials
    let t0 = std::time::Instant::now();
    let paired: Vec<(f64, f64)> = run_trials(10, 2000, |_, s| {
        let single = jump_labeling_run(&g, &cfg, s).unwrap();
        let boosted = boosted_jump_run(&g, &cfg, 11, s).unwrap();
        (
            weak_reconstruction_error(&single.labels, &g.chi).error_fraction,
            weak_reconstruction_error(&boosted.labels, &g.chi).error_fraction,
        )
    });
    let med = |v: &mut Vec<f64>| {
        v.sort_by(f64::total_cmp);
        v[v.len() / 2]
    };
    let mut singles: Vec<f64> = paired.iter().map(|p| p.0).collect();
    let mut boosteds: Vec<f64> = paired.iter().map(|p| p.1).collect();
    println!(
        "paired(10): single median={:.4} boosted median={:.4} [{:?}]",
        med(&mut singles),
        med(&mut boosteds),
        t0.elapsed()
    );
}

fn sign_pilot() {
    let (n, d, b, seed) = (512usize, 32usize, 1usize, 2u64);
    let g = generate_clustered_regular(n, d, b, seed, 50).unwrap();
    let spec = compute_spectrum(&g, DEFAULT_EIG_TOL).unwrap();
    let eps = 0.2;
    let cfg = sign_theorem_parameters(n, spec.lambda3(), eps);
    println!(
        "lambda3={:.4} T={} ell={}",
        spec.lambda3(),
        cfg.activation_threshold,
        cfg.ell
    );
    let t0 = std::time::Instant::now();
    let out = sign_labeling_run(&g, &cfg, 42);
    println!("run: {} rounds [{:?}]", out.total_rounds, t0.elapsed());
    let score = csl_evaluate(&out.labels, cfg.ell, &g.chi, eps, 7);
    println!(
        "gamma={:.4} c1={:.4} c2={:.4} refdist={:.4} inliers={}",
        score.gamma,
        score.c1_observed,
        score.c2_observed,
        score.reference_distance,
        score.inlier_set_size
    );
    let cov = stopping_time_coverage(
        &out.freeze_component_rounds,
        cfg.activation_threshold as u64,
        n,
    );
    println!(
        "component-time stopping coverage: {cov:.5} (1-1/n = {:.5})",
        1.0 - 1.0 / n as f64
    );
}

fn sign_custom_t(t_threshold: u32) {
    let (n, d, b, seed) = (512usize, 32usize, 1usize, 2u64);
    let g = generate_clustered_regular(n, d, b, seed, 50).unwrap();
    let eps = 0.2;
    let ell = 312usize;
    let cfg = avgsim::protocols::SignConfig {
        activation_threshold: t_threshold,
        ell,
    };
    let scores: Vec<_> = run_trials(5, 77, |_, s| {
        let out = sign_labeling_run(&g, &cfg, s);
        let sc = csl_evaluate(&out.labels, ell, &g.chi, eps, 7);
        (sc.gamma, sc.c1_observed, sc.c2_observed, sc.reference_distance)
    });
    for (g_, c1, c2, rd) in scores {
        println!("T={t_threshold}: gamma={g_:.4} c1={c1:.4} c2={c2:.4} refdist={rd:.4}");
    }
}

fn projection_constant() {
    // Exact joint law of (x.1, x.chi) from two independent half-sums.
    let n = 1000usize;
    let half = n / 2;
    let mut log_fact = vec![0.0f64; half + 1];
    for k in 1..=half {
        log_fact[k] = log_fact[k - 1] + (k as f64).ln();
    }
    let pmf = |k: usize| -> f64 {
        (log_fact[half] - log_fact[k] - log_fact[half - k]
            - (half as f64) * std::f64::consts::LN_2)
            .exp()
    };
    for beta in [4.0f64, 16.0, 64.0] {
        // event: |z0|^2 > n beta |y0|^2  <=>  A^2 + (1 + beta n) Y^2 < n^2
        // with A = S1 + S2, Y = S1 - S2.
        let mut exact = 0.0;
        for k1 in 0..=half {
            let s1 = (2 * k1) as f64 - half as f64;
            let p1 = pmf(k1);
            for k2 in 0..=half {
                let s2 = (2 * k2) as f64 - half as f64;
                let a = s1 + s2;
                let y = s1 - s2;
                if a * a + (1.0 + beta * n as f64) * y * y < (n * n) as f64 {
                    exact += p1 * pmf(k2);
                }
            }
        }
        let budget = 1.0 / beta.sqrt() + 1.0 / (n as f64).sqrt();
        println!(
            "beta={beta}: exact P = {exact:.6}, 1/sqrt(beta)+1/sqrt(n) = {budget:.6}, ratio = {:.4}",
            exact / budget
        );
    }
}

// appended: full-suite pilot
