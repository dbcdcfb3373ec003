//! Scoring of protocol outputs against the ground-truth partition, and the
//! schedule statistics the analysis quantifies over.
//!
//! Local-time statistics (the stopping window and uniformity conditions) are
//! phrased in activation-slot units: every round activates two endpoints, so
//! slot time is twice the round index. Round-unit quantities such as
//! `E[T_u(tau)] = 0.5 n tau` are unaffected.

use rand::Rng as _;
use serde::Serialize;

use crate::dynamics::{sign, ActivationSchedule, RunTrace};
use crate::rng::rng_from_seed;

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("run was recorded without the {0} observer")]
    MissingObserver(&'static str),
    #[error("schedule has {have} rounds, need at least {need} for these parameters")]
    ScheduleTooShort { have: u64, need: u64 },
    #[error("history mode was not enabled for this schedule")]
    NoHistory,
}

/// Mislabeling score against the partition, minimized over the global flip.
#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionScore {
    pub error_fraction: f64,
    pub flip_used: bool,
    /// Error fraction within each community under the chosen flip.
    pub per_community_errors: (f64, f64),
    /// Correctly labeled node counts per community under the chosen flip.
    pub w1_size: usize,
    pub w2_size: usize,
}

pub fn weak_reconstruction_error(labels: &[i8], chi: &[i8]) -> ReconstructionScore {
    assert_eq!(labels.len(), chi.len());
    let n = labels.len();
    let direct = labels
        .iter()
        .zip(chi)
        .filter(|(&l, &c)| l != c)
        .count();
    let flipped = n - direct;
    let flip_used = flipped < direct;
    let reference_sign = if flip_used { -1 } else { 1 };
    let mut wrong = [0usize; 2];
    let mut sizes = [0usize; 2];
    for (&l, &c) in labels.iter().zip(chi) {
        let community = if c == 1 { 0 } else { 1 };
        sizes[community] += 1;
        if l != c * reference_sign {
            wrong[community] += 1;
        }
    }
    ReconstructionScore {
        error_fraction: direct.min(flipped) as f64 / n as f64,
        flip_used,
        per_community_errors: (
            wrong[0] as f64 / sizes[0].max(1) as f64,
            wrong[1] as f64 / sizes[1].max(1) as f64,
        ),
        w1_size: sizes[0] - wrong[0],
        w2_size: sizes[1] - wrong[1],
    }
}

/// Community-sensitive labeling score built from the per-community majority
/// reference strings.
#[derive(Debug, Clone, Serialize)]
pub struct CslScore {
    /// Outlier fraction: nodes farther than `2 eps` from their reference.
    pub gamma: f64,
    /// Largest intra-community normalized distance over inlier pairs.
    pub c1_observed: f64,
    /// Smallest cross-community normalized distance over inlier pairs.
    pub c2_observed: f64,
    pub inlier_set_size: usize,
    pub reference_strings: (Vec<i8>, Vec<i8>),
    /// Normalized distance between the two reference strings.
    pub reference_distance: f64,
}

/// Above this node count, pairwise distances are estimated on a seeded
/// sample of pairs instead of exactly.
const CSL_EXACT_PAIR_LIMIT: usize = 2000;
const CSL_PAIR_SAMPLES: usize = 100_000;

pub fn csl_evaluate(
    labels: &[i8],
    ell: usize,
    chi: &[i8],
    eps: f64,
    pair_sample_seed: u64,
) -> CslScore {
    let n = chi.len();
    assert_eq!(labels.len(), n * ell);
    assert!(ell >= 1);
    let row = |u: usize| &labels[u * ell..(u + 1) * ell];

    // Componentwise majority per community stands in for the community
    // reference signature.
    let mut reference = [vec![0i8; ell], vec![0i8; ell]];
    for (side, r) in reference.iter_mut().enumerate() {
        let want = if side == 0 { 1i8 } else { -1i8 };
        for (j, slot) in r.iter_mut().enumerate() {
            let total: i32 = (0..n)
                .filter(|&u| chi[u] == want)
                .map(|u| labels[u * ell + j] as i32)
                .sum();
            *slot = sign(total as f64);
        }
    }
    let dist = |a: &[i8], b: &[i8]| -> usize { a.iter().zip(b).filter(|(x, y)| x != y).count() };

    let radius = 2.0 * eps * ell as f64;
    let inliers: Vec<usize> = (0..n)
        .filter(|&u| {
            let r = if chi[u] == 1 { &reference[0] } else { &reference[1] };
            (dist(row(u), r) as f64) <= radius
        })
        .collect();
    let gamma = 1.0 - inliers.len() as f64 / n as f64;

    let mut c1 = 0.0f64;
    let mut c2 = 1.0f64;
    let mut saw_cross = false;
    let check_pair = |u: usize, v: usize, c1: &mut f64, c2: &mut f64, saw: &mut bool| {
        let d = dist(row(u), row(v)) as f64 / ell as f64;
        if chi[u] == chi[v] {
            *c1 = c1.max(d);
        } else {
            *c2 = c2.min(d);
            *saw = true;
        }
    };
    if inliers.len() <= CSL_EXACT_PAIR_LIMIT {
        for (i, &u) in inliers.iter().enumerate() {
            for &v in &inliers[i + 1..] {
                check_pair(u, v, &mut c1, &mut c2, &mut saw_cross);
            }
        }
    } else {
        let mut rng = rng_from_seed(pair_sample_seed);
        for _ in 0..CSL_PAIR_SAMPLES {
            let i = rng.random_range(0..inliers.len());
            let mut j = rng.random_range(0..inliers.len() - 1);
            if j >= i {
                j += 1;
            }
            check_pair(inliers[i], inliers[j], &mut c1, &mut c2, &mut saw_cross);
        }
    }
    if !saw_cross {
        c2 = 1.0;
    }

    let reference_distance = dist(&reference[0], &reference[1]) as f64 / ell as f64;
    CslScore {
        gamma,
        c1_observed: c1,
        c2_observed: c2,
        inlier_set_size: inliers.len(),
        reference_strings: (reference[0].clone(), reference[1].clone()),
        reference_distance,
    }
}

/// Extract the deviation-set size series from a recorded run.
pub fn bad_set_series(trace: &RunTrace) -> Result<Vec<(u64, usize)>, MetricsError> {
    trace
        .rows
        .iter()
        .map(|r| {
            r.bad_count
                .map(|c| (r.t, c))
                .ok_or(MetricsError::MissingObserver("eps"))
        })
        .collect()
}

/// Extract the threshold-set size series (set and complement).
#[allow(clippy::type_complexity)]
pub fn threshold_set_series(
    trace: &RunTrace,
) -> Result<(Vec<(u64, usize)>, Vec<(u64, usize)>), MetricsError> {
    let mut r_series = Vec::with_capacity(trace.rows.len());
    let mut rbar_series = Vec::with_capacity(trace.rows.len());
    for r in &trace.rows {
        let c = r
            .r_eta_count
            .ok_or(MetricsError::MissingObserver("eta"))?;
        let cb = r
            .r_eta_bar_count
            .ok_or(MetricsError::MissingObserver("eta"))?;
        r_series.push((r.t, c));
        rbar_series.push((r.t, cb));
    }
    Ok((r_series, rbar_series))
}

/// Fraction of runs in which the deviation set stays at or below `3 eps n`
/// throughout the window `[6 (n/lambda3) ln n, 12 (n/lambda3) ln n]`.
pub fn window_bad_pass_fraction(
    traces: &[RunTrace],
    n: usize,
    lambda3: f64,
    eps: f64,
) -> Result<f64, MetricsError> {
    let nf = n as f64;
    let lo = 6.0 * nf * nf.ln() / lambda3;
    let hi = 12.0 * nf * nf.ln() / lambda3;
    let budget = (3.0 * eps * nf).floor() as usize;
    let mut passes = 0usize;
    for trace in traces {
        let series = bad_set_series(trace)?;
        let ok = series
            .iter()
            .filter(|&&(t, _)| (t as f64) >= lo && (t as f64) <= hi)
            .all(|&(_, c)| c <= budget);
        if ok {
            passes += 1;
        }
    }
    Ok(passes as f64 / traces.len().max(1) as f64)
}

/// Fraction of nodes whose local-time map is uniform for window parameters
/// `(a, b, zeta)`: the `ceil(a ln n)`-th activation lands after slot
/// `0.4 a n ln n`, the `(ceil(b ln n)+1)`-th lands by slot `0.6 b n ln n`,
/// and at most a `4 sqrt(zeta)` fraction of consecutive activations in the
/// local window arrive closer than `sqrt(zeta) n` slots apart.
pub fn uniformity_fraction(
    schedule: &ActivationSchedule,
    a: f64,
    b_param: f64,
    zeta: f64,
) -> Result<f64, MetricsError> {
    let times = schedule
        .activation_times
        .as_ref()
        .ok_or(MetricsError::NoHistory)?;
    let n = schedule.local_counts.len();
    let nf = n as f64;
    let ln_n = nf.ln();
    let need_slots = 0.6 * b_param * nf * ln_n;
    if ((2 * schedule.step) as f64) < need_slots {
        return Err(MetricsError::ScheduleTooShort {
            have: schedule.step,
            need: (need_slots / 2.0).ceil() as u64,
        });
    }

    let tau_a = (a * ln_n).ceil() as usize;
    let tau_b = (b_param * ln_n).ceil() as usize;
    // Slot time of the tau-th activation (1-indexed tau), 0 for tau = 0.
    let slot = |list: &Vec<u64>, tau: usize| -> Option<f64> {
        if tau == 0 {
            Some(0.0)
        } else {
            list.get(tau - 1).map(|&t| 2.0 * t as f64)
        }
    };

    let mut uniform = 0usize;
    for list in times {
        let first = match slot(list, tau_a) {
            Some(s) => s > 0.4 * a * nf * ln_n,
            None => false,
        };
        let second = match slot(list, tau_b + 1) {
            Some(s) => s <= 0.6 * b_param * nf * ln_n,
            None => false,
        };
        if !(first && second) {
            continue;
        }
        let mut short_gaps = 0usize;
        let mut total = 0usize;
        for tau in tau_a..=tau_b {
            let (Some(cur), Some(next)) = (slot(list, tau), slot(list, tau + 1)) else {
                break;
            };
            total += 1;
            if next < cur + zeta.sqrt() * nf {
                short_gaps += 1;
            }
        }
        let third =
            total == 0 || (short_gaps as f64 / total as f64) <= 4.0 * zeta.sqrt();
        if third {
            uniform += 1;
        }
    }
    Ok(uniform as f64 / nf)
}

/// Fraction of freeze times landing in the stopping window
/// `[3 T n / 4, 3 T n / 2]`, with freeze times given in round units and the
/// window in activation-slot units.
pub fn stopping_time_coverage(freeze_rounds: &[u64], t_threshold: u64, n: usize) -> f64 {
    let lo = 0.75 * t_threshold as f64 * n as f64;
    let hi = 1.5 * t_threshold as f64 * n as f64;
    let hits = freeze_rounds
        .iter()
        .filter(|&&t| {
            let slot = 2.0 * t as f64;
            slot >= lo && slot <= hi
        })
        .count();
    hits as f64 / freeze_rounds.len().max(1) as f64
}

/// The score record exported by the experiment runner.
#[derive(Debug, Clone, Serialize)]
pub struct ScoreSummary {
    pub error_fraction: Option<f64>,
    pub flip_used: Option<bool>,
    pub gamma: Option<f64>,
    pub c1_observed: Option<f64>,
    pub c2_observed: Option<f64>,
    pub window_pass_fraction: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{run, RunConfig};
    use crate::graph::generate_clustered_regular;
    use proptest::prelude::*;

    fn halves_chi(n: usize) -> Vec<i8> {
        (0..n).map(|i| if i < n / 2 { 1 } else { -1 }).collect()
    }

    #[test]
    fn perfect_and_flipped_labelings_have_zero_error() {
        let chi = halves_chi(100);
        let score = weak_reconstruction_error(&chi, &chi);
        assert_eq!(score.error_fraction, 0.0);
        assert!(!score.flip_used);
        assert_eq!((score.w1_size, score.w2_size), (50, 50));

        let neg: Vec<i8> = chi.iter().map(|&c| -c).collect();
        let score = weak_reconstruction_error(&neg, &chi);
        assert_eq!(score.error_fraction, 0.0);
        assert!(score.flip_used);
    }

    #[test]
    fn three_mislabeled_nodes_give_three_percent() {
        let chi = halves_chi(100);
        let mut labels = chi.clone();
        for u in [3usize, 10, 60] {
            labels[u] = -labels[u];
        }
        let score = weak_reconstruction_error(&labels, &chi);
        assert!((score.error_fraction - 0.03).abs() < 1e-12);
        assert_eq!(score.per_community_errors.0, 2.0 / 50.0);
        assert_eq!(score.per_community_errors.1, 1.0 / 50.0);
    }

    #[test]
    fn csl_separated_communities_score_perfectly() {
        let n = 10;
        let ell = 4;
        let chi = halves_chi(n);
        let mut labels = vec![0i8; n * ell];
        for u in 0..n {
            for j in 0..ell {
                labels[u * ell + j] = chi[u];
            }
        }
        let score = csl_evaluate(&labels, ell, &chi, 0.1, 0);
        assert_eq!(score.gamma, 0.0);
        assert_eq!(score.c1_observed, 0.0);
        assert_eq!(score.c2_observed, 1.0);
        assert_eq!(score.reference_distance, 1.0);
    }

    #[test]
    fn fully_flipped_row_is_the_sole_outlier() {
        let n = 10;
        let ell = 8;
        let chi = halves_chi(n);
        let mut labels = vec![0i8; n * ell];
        for u in 0..n {
            for j in 0..ell {
                labels[u * ell + j] = chi[u];
            }
        }
        for j in 0..ell {
            labels[j] = -1; // node 0 fully disagrees with its community
        }
        let score = csl_evaluate(&labels, ell, &chi, 0.2, 0);
        assert!((score.gamma - 0.1).abs() < 1e-12);
        assert_eq!(score.inlier_set_size, 9);
    }

    #[test]
    fn single_component_csl_matches_weak_reconstruction_when_refs_differ() {
        let n = 40;
        let chi = halves_chi(n);
        let mut rng = rng_from_seed(8);
        for _ in 0..50 {
            let labels: Vec<i8> = (0..n)
                .map(|u| {
                    if rng.random::<f64>() < 0.8 {
                        chi[u]
                    } else {
                        -chi[u]
                    }
                })
                .collect();
            let csl = csl_evaluate(&labels, 1, &chi, 0.2, 0);
            if csl.reference_distance == 1.0 {
                let weak = weak_reconstruction_error(&labels, &chi);
                assert!(
                    (csl.gamma - weak.error_fraction).abs() < 1e-12,
                    "gamma {} vs weak {}",
                    csl.gamma,
                    weak.error_fraction
                );
            }
        }
    }

    #[test]
    fn observer_series_degenerate_thresholds() {
        let g = generate_clustered_regular(16, 5, 1, 3, 200).unwrap();
        let cfg = RunConfig::new(0.5, 2000)
            .observe_every(500)
            .with_eps(1e12)
            .with_eta(f64::NEG_INFINITY);
        let trace = run(&g, &cfg, 3);
        for (_, c) in bad_set_series(&trace).unwrap() {
            assert_eq!(c, 0);
        }
        let (r, rbar) = threshold_set_series(&trace).unwrap();
        for (_, c) in r {
            assert_eq!(c, 16);
        }
        for (_, c) in rbar {
            assert_eq!(c, 0);
        }

        let plain = run(&g, &RunConfig::new(0.5, 100), 3);
        assert!(matches!(
            bad_set_series(&plain),
            Err(MetricsError::MissingObserver("eps"))
        ));
    }

    #[test]
    fn uniformity_degenerate_window_parameters() {
        let g = generate_clustered_regular(16, 5, 1, 3, 200).unwrap();
        let cfg = RunConfig::new(0.5, 5000).with_history();
        let trace = run(&g, &cfg, 5);
        // a = 0: the first condition requires slot 0 > 0 and fails for all.
        let frac = uniformity_fraction(&trace.schedule, 0.0, 2.0, 0.05).unwrap();
        assert_eq!(frac, 0.0);
        // schedule shorter than the window errors out
        let short = run(&g, &RunConfig::new(0.5, 3).with_history(), 5);
        assert!(matches!(
            uniformity_fraction(&short.schedule, 2.0, 4.0, 0.05),
            Err(MetricsError::ScheduleTooShort { .. })
        ));
    }

    #[test]
    fn uniformity_with_unit_zeta_is_driven_by_the_landing_conditions() {
        // zeta = 1 makes the short-gap budget 4 (> 1), so only the two
        // landing conditions matter.
        let g = generate_clustered_regular(64, 6, 1, 5, 400).unwrap();
        let rounds = (0.6 * 4.0 * 64.0 * 64f64.ln()) as u64 + 1000;
        let trace = run(&g, &RunConfig::new(0.5, rounds).with_history(), 17);
        let with_unit = uniformity_fraction(&trace.schedule, 2.0, 4.0, 1.0).unwrap();
        // recompute with only conditions 1 and 2 by using a tiny zeta whose
        // short-gap test can fail: unit zeta must never be smaller.
        let with_small = uniformity_fraction(&trace.schedule, 2.0, 4.0, 0.01).unwrap();
        assert!(with_unit >= with_small);
    }

    #[test]
    fn stopping_coverage_window_midpoint_and_first_activation() {
        // all freezes at round T n / 2 (slot T n): full coverage
        let n = 64;
        let t_threshold = 10u64;
        let mid = vec![t_threshold * n as u64 / 2; 20];
        assert_eq!(stopping_time_coverage(&mid, t_threshold, n), 1.0);

        // threshold 1 puts most freezes before the window opens
        let g = generate_clustered_regular(64, 6, 1, 5, 400).unwrap();
        let cfg = crate::protocols::SignConfig {
            activation_threshold: 1,
            ell: 1,
        };
        let outcome = crate::protocols::sign_labeling_run(&g, &cfg, 3);
        let cov = stopping_time_coverage(&outcome.freeze_rounds, 1, 64);
        assert!(cov < 0.6, "coverage {cov}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn reconstruction_error_is_flip_symmetric_and_bounded(
            bits in proptest::collection::vec(any::<bool>(), 64)
        ) {
            let chi = halves_chi(64);
            let labels: Vec<i8> = bits.iter().map(|&b| if b { 1 } else { -1 }).collect();
            let neg: Vec<i8> = labels.iter().map(|&l| -l).collect();
            let a = weak_reconstruction_error(&labels, &chi);
            let b = weak_reconstruction_error(&neg, &chi);
            prop_assert!((a.error_fraction - b.error_fraction).abs() < 1e-15);
            prop_assert!(a.error_fraction <= 0.5);
        }
    }
}
