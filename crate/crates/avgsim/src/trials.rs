//! Deterministic Monte Carlo batching.
//!
//! Each trial gets an independent generator seeded by
//! [`crate::rng::derive_seed`], and results are assembled in trial-index
//! order, so a batch produces identical output whether it runs on one
//! thread or many. With the default `parallel` feature, batches fan out
//! over the rayon pool; without it everything runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::rng::derive_seed;

/// Run `trials` independent computations, each given `(index, seed)`.
pub fn run_trials<T, F>(trials: usize, master_seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, u64) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..trials)
            .into_par_iter()
            .map(|i| f(i, derive_seed(master_seed, i as u64)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_trials_sequential(trials, master_seed, f)
    }
}

/// Sequential reference path, always available; the parallel path must
/// produce identical results.
pub fn run_trials_sequential<T, F>(trials: usize, master_seed: u64, f: F) -> Vec<T>
where
    F: Fn(usize, u64) -> T,
{
    (0..trials)
        .map(|i| f(i, derive_seed(master_seed, i as u64)))
        .collect()
}

/// Configure the global worker pool size. Returns false if the pool was
/// already initialized (rayon allows configuring it only once) or when the
/// crate was built without the `parallel` feature.
pub fn configure_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

/// Streaming mean/variance accumulator for batched observables.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunningStats {
    pub count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, v: f64) {
        self.count += 1;
        let delta = v - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (v - self.mean);
    }

    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2
            + delta * delta * self.count as f64 * other.count as f64 / total as f64;
        self.count = total;
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_batches_agree() {
        let par = run_trials(64, 9, |i, seed| (i, seed, seed.wrapping_mul(i as u64)));
        let seq = run_trials_sequential(64, 9, |i, seed| (i, seed, seed.wrapping_mul(i as u64)));
        assert_eq!(par, seq);
    }

    #[test]
    fn running_stats_match_direct_formulas() {
        let data = [1.0, 2.0, 4.0, 8.0, 16.0];
        let mut stats = RunningStats::default();
        for &v in &data {
            stats.push(v);
        }
        let mean = data.iter().sum::<f64>() / data.len() as f64;
        let var = data.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (data.len() - 1) as f64;
        assert!((stats.mean() - mean).abs() < 1e-12);
        assert!((stats.variance() - var).abs() < 1e-12);

        let mut a = RunningStats::default();
        let mut b = RunningStats::default();
        for &v in &data[..2] {
            a.push(v);
        }
        for &v in &data[2..] {
            b.push(v);
        }
        a.merge(&b);
        assert!((a.mean() - mean).abs() < 1e-12);
        assert!((a.variance() - var).abs() < 1e-12);
    }
}
