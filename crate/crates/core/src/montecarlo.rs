//! Seeded Monte Carlo of binomial error counts, validating the Gaussian
//! closed form against the exact binomial CDF.
//!
//! # Reproducibility contract (`chacha8-invcdf-v1`)
//!
//! Trials are cut into fixed batches of [`TRIALS_PER_BATCH`]. Batch `b`
//! draws from `ChaCha8Rng::seed_from_u64(seed)` switched to stream `b`; each
//! trial consumes exactly one `u64`, mapped to `[0, 1)` at 53-bit resolution
//! (`u = (x >> 11) * 2^-53`) and inverted through a table of the exact
//! binomial CDF. The batch plan depends only on `trials`, never on the
//! worker count, and batch results combine by integer addition, so a report
//! is bit-identical for a given `(parameters, seed)` no matter how many
//! threads ran it. Reference vector: `(m = 1000, e_ab = 0.1, seed = 42)`
//! yields counts `104, 116, 98, 103, 95, 90, 95, 108, ...` in batch 0.
//!
//! Sampling is exact inversion, not a normal approximation — the whole point
//! is to measure the approximation, so it must not be baked into the data.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numerics::{binomial_tail_exact, ln_binomial_pmf, q_tail, Probability};
use crate::{Error, Result};

/// Identifier of the generator scheme recorded in every report.
pub const GENERATOR_ID: &str = "chacha8-invcdf-v1";

/// Fixed batch size of the partition plan.
pub const TRIALS_PER_BATCH: u64 = 8192;

/// Environment variable capping the work per invocation, measured in
/// sampled counts (the CDF table entries, O(sqrt(m)), count toward it).
pub const WORK_CAP_ENV: &str = "CVQKD_RECON_MC_CAP";

/// Default work cap: one billion sampled counts.
pub const DEFAULT_WORK_CAP: u64 = 1_000_000_000;

/// Reads the work cap from [`WORK_CAP_ENV`], falling back to the default on
/// absence or on an unparsable value.
pub fn work_cap() -> u64 {
    std::env::var(WORK_CAP_ENV)
        .ok()
        .and_then(|raw| raw.parse().ok())
        .unwrap_or(DEFAULT_WORK_CAP)
}

/// One Monte Carlo run: empirical, Gaussian and exact success probabilities
/// side by side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    /// Digits per error-correction block.
    pub block_size: u64,
    /// Bit error rate each digit flips with.
    pub ber: Probability,
    /// Correctable error fraction `e_rec`; a block succeeds when its error
    /// count is at most `floor(block_size * e_rec)`.
    pub threshold: Probability,
    pub trials: u64,
    pub successes: u64,
    /// Empirical success probability, `successes / trials`.
    pub beta_hat: Probability,
    /// Gaussian closed form for the same probability.
    pub beta_gaussian: Probability,
    /// Exact binomial CDF at the threshold.
    pub beta_exact: Probability,
    /// Binomial standard error of `beta_hat`.
    pub std_error: f64,
    pub seed: u64,
    pub generator_id: String,
}

impl MonteCarloReport {
    /// A report with zero trials — the identity element of [`merge_reports`].
    pub fn empty(block_size: u64, ber: Probability, threshold: Probability) -> Result<Self> {
        let analytic = analytic_betas(block_size, ber, threshold)?;
        Ok(Self {
            block_size,
            ber,
            threshold,
            trials: 0,
            successes: 0,
            beta_hat: Probability::new_unchecked(0.0),
            beta_gaussian: analytic.gaussian,
            beta_exact: analytic.exact,
            std_error: 0.0,
            seed: 0,
            generator_id: GENERATOR_ID.to_owned(),
        })
    }

    /// Checks the counting invariants.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.successes > self.trials {
            return Err(Error::Domain("more successes than trials".into()));
        }
        let expected_hat = if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        };
        if (self.beta_hat.value() - expected_hat).abs() > tol {
            return Err(Error::Domain("beta_hat is not successes/trials".into()));
        }
        let expected_se = if self.trials == 0 {
            0.0
        } else {
            (expected_hat * (1.0 - expected_hat) / self.trials as f64).sqrt()
        };
        if (self.std_error - expected_se).abs() > tol {
            return Err(Error::Domain("std_error inconsistent".into()));
        }
        Ok(())
    }
}

/// Success probability of a block under the Gaussian approximation of the
/// binomial error count: `1 - Q((m e_rec - m e_ab) / sqrt(m e_ab (1 - e_ab)))`.
///
/// No continuity correction — this is the closed form as written; the exact
/// CDF sits alongside it in every report to quantify the difference.
pub fn beta_gaussian(m: u64, e_ab: Probability, e_rec: Probability) -> Result<Probability> {
    if m == 0 {
        return Err(Error::Domain("block size must be positive".into()));
    }
    let e = e_ab.value();
    if e <= 0.0 || e >= 1.0 {
        return Err(Error::Domain(format!(
            "bit error rate {e} must lie strictly inside (0, 1)"
        )));
    }
    let mf = m as f64;
    let z = (mf * e_rec.value() - mf * e) / (mf * e * (1.0 - e)).sqrt();
    Ok(Probability::new_unchecked(1.0 - q_tail(z)))
}

struct AnalyticBetas {
    gaussian: Probability,
    exact: Probability,
    threshold_count: u64,
}

fn analytic_betas(m: u64, e_ab: Probability, e_rec: Probability) -> Result<AnalyticBetas> {
    let gaussian = beta_gaussian(m, e_ab, e_rec)?;
    let threshold_count = ((m as f64 * e_rec.value()).floor() as u64).min(m);
    let exact = binomial_tail_exact(m, e_ab, threshold_count)?;
    Ok(AnalyticBetas {
        gaussian,
        exact,
        threshold_count,
    })
}

/// Inverse-CDF sampler for `Binomial(m, p)`.
///
/// The CDF table covers the mean +/- 15 sigma (clamped to `[0, m]`); the
/// probability mass outside is far below the 2^-53 resolution of the
/// uniform draw, so truncation is invisible. Table construction costs
/// O(sqrt(m)), each draw is one binary search.
struct BinomialSampler {
    first: u64,
    cdf: Vec<f64>,
}

/// Count window `[lo, hi]` covered by the sampler table.
fn sampler_window(m: u64, p: f64) -> (u64, u64) {
    let mean = m as f64 * p;
    let sd = (mean * (1.0 - p)).sqrt();
    let lo = (mean - 15.0 * sd - 5.0).floor().max(0.0) as u64;
    let hi = (((mean + 15.0 * sd + 5.0).ceil()) as u64).min(m);
    (lo, hi)
}

impl BinomialSampler {
    fn new(m: u64, p: f64) -> Self {
        let (lo, hi) = sampler_window(m, p);
        let mut cdf = Vec::with_capacity((hi - lo + 1) as usize);
        let mut term = ln_binomial_pmf(m, p, lo).exp();
        let mut acc = term;
        cdf.push(acc);
        let q = 1.0 - p;
        for n in lo..hi {
            term *= ((m - n) as f64 * p) / ((n + 1) as f64 * q);
            acc += term;
            cdf.push(acc);
        }
        Self { first: lo, cdf }
    }

    fn sample(&self, u: f64) -> u64 {
        let idx = self.cdf.partition_point(|&c| c <= u);
        if idx >= self.cdf.len() {
            self.first + (self.cdf.len() - 1) as u64
        } else {
            self.first + idx as u64
        }
    }
}

fn batch_successes(
    sampler: &BinomialSampler,
    threshold_count: u64,
    seed: u64,
    batch: u64,
    count: u64,
) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let mut hits = 0_u64;
    for _ in 0..count {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        if sampler.sample(u) <= threshold_count {
            hits += 1;
        }
    }
    hits
}

/// Draws `trials` exact binomial error counts and reports the empirical
/// success probability next to the Gaussian and exact values.
///
/// Deterministic in `(parameters, seed)`; see the module docs for the
/// generator contract. The work cap from [`work_cap`] bounds `trials`.
pub fn simulate_error_counts(
    m: u64,
    e_ab: Probability,
    e_rec: Probability,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloReport> {
    simulate_with_cap(m, e_ab, e_rec, trials, seed, 1, work_cap())
}

/// [`simulate_error_counts`] with batches fanned out over `workers` threads.
/// The result is bit-identical to the sequential run.
pub fn simulate_error_counts_parallel(
    m: u64,
    e_ab: Probability,
    e_rec: Probability,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<MonteCarloReport> {
    simulate_with_cap(m, e_ab, e_rec, trials, seed, workers, work_cap())
}

/// Simulation core with an explicit work cap.
pub fn simulate_with_cap(
    m: u64,
    e_ab: Probability,
    e_rec: Probability,
    trials: u64,
    seed: u64,
    workers: usize,
    cap: u64,
) -> Result<MonteCarloReport> {
    if m == 0 {
        return Err(Error::Domain("block size must be positive".into()));
    }
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    if workers == 0 {
        return Err(Error::Domain("at least one worker is required".into()));
    }
    // work = sampled counts plus the CDF table entries (the table spans
    // O(sqrt(m)) counts, which only matters for extreme block sizes)
    let (window_lo, window_hi) = sampler_window(m, e_ab.value());
    let work = trials.saturating_add(window_hi - window_lo + 1);
    if work > cap {
        return Err(Error::WorkCap {
            requested: work,
            cap,
        });
    }
    let analytic = analytic_betas(m, e_ab, e_rec)?;
    let sampler = BinomialSampler::new(m, e_ab.value());
    let threshold_count = analytic.threshold_count;

    let batches = trials.div_ceil(TRIALS_PER_BATCH);
    let count_of = |batch: u64| {
        if batch + 1 == batches {
            trials - batch * TRIALS_PER_BATCH
        } else {
            TRIALS_PER_BATCH
        }
    };

    let successes: u64 = if workers == 1 {
        (0..batches)
            .map(|b| batch_successes(&sampler, threshold_count, seed, b, count_of(b)))
            .sum()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        pool.install(|| {
            (0..batches)
                .into_par_iter()
                .map(|b| batch_successes(&sampler, threshold_count, seed, b, count_of(b)))
                .sum()
        })
    };

    let beta_hat = successes as f64 / trials as f64;
    Ok(MonteCarloReport {
        block_size: m,
        ber: e_ab,
        threshold: e_rec,
        trials,
        successes,
        beta_hat: Probability::new_unchecked(beta_hat),
        beta_gaussian: analytic.gaussian,
        beta_exact: analytic.exact,
        std_error: (beta_hat * (1.0 - beta_hat) / trials as f64).sqrt(),
        seed,
        generator_id: GENERATOR_ID.to_owned(),
    })
}

/// Pools two reports over the same parameters.
///
/// Counts add; `beta_hat` and `std_error` are recomputed from the pooled
/// counts; the analytic fields carry through unchanged; the merged seed is
/// the XOR of the two seeds (associative and commutative, with 0 — the
/// seed of [`MonteCarloReport::empty`] — as identity).
pub fn merge_reports(a: &MonteCarloReport, b: &MonteCarloReport) -> Result<MonteCarloReport> {
    if a.block_size != b.block_size || a.ber != b.ber || a.threshold != b.threshold {
        return Err(Error::Mismatch(format!(
            "(m, ber, e_rec) differ: ({}, {}, {}) vs ({}, {}, {})",
            a.block_size,
            a.ber.value(),
            a.threshold.value(),
            b.block_size,
            b.ber.value(),
            b.threshold.value()
        )));
    }
    if a.generator_id != b.generator_id {
        return Err(Error::Mismatch(format!(
            "generator ids differ: {} vs {}",
            a.generator_id, b.generator_id
        )));
    }
    let trials = a.trials + b.trials;
    let successes = a.successes + b.successes;
    let beta_hat = if trials == 0 {
        0.0
    } else {
        successes as f64 / trials as f64
    };
    let std_error = if trials == 0 {
        0.0
    } else {
        (beta_hat * (1.0 - beta_hat) / trials as f64).sqrt()
    };
    Ok(MonteCarloReport {
        block_size: a.block_size,
        ber: a.ber,
        threshold: a.threshold,
        trials,
        successes,
        beta_hat: Probability::new_unchecked(beta_hat),
        beta_gaussian: a.beta_gaussian,
        beta_exact: a.beta_exact,
        std_error,
        seed: a.seed ^ b.seed,
        generator_id: a.generator_id.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: f64) -> Probability {
        Probability::new(v).unwrap()
    }

    fn assert_abs(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "{actual} vs {expected}: abs err {:e}",
            (actual - expected).abs()
        );
    }

    #[test]
    fn gaussian_beta_at_the_mean_is_half() {
        assert_eq!(beta_gaussian(100, p(0.29), p(0.29)).unwrap().value(), 0.5);
    }

    #[test]
    fn gaussian_beta_reference() {
        // oracle: Phi((m*e_rec - m*e_ab)/sigma) at 60 digits, f64 inputs
        let b = beta_gaussian(10_000, p(0.29), p(0.30)).unwrap().value();
        assert_abs(b, 0.9862307308617547, 1e-12);
    }

    #[test]
    fn gaussian_beta_concentrates() {
        let mut last = 0.0;
        for m in [100, 1_000, 10_000, 100_000] {
            let b = beta_gaussian(m, p(0.29), p(0.30)).unwrap().value();
            assert!(b > last);
            last = b;
        }
        assert!(last > 0.999_999);
    }

    #[test]
    fn gaussian_beta_domain() {
        assert!(beta_gaussian(0, p(0.29), p(0.3)).is_err());
        assert!(beta_gaussian(10, p(0.0), p(0.3)).is_err());
        assert!(beta_gaussian(10, p(1.0), p(0.3)).is_err());
    }

    #[test]
    fn simulation_matches_exact_cdf() {
        let report = simulate_error_counts(1000, p(0.1), p(0.13), 100_000, 42).unwrap();
        report.validate(1e-12).unwrap();
        // oracle: exact binomial CDF 0.99903...
        assert_abs(report.beta_exact.value(), 0.9990305585092043, 1e-9);
        let err = (report.beta_hat.value() - report.beta_exact.value()).abs();
        assert!(
            err <= 4.0 * report.std_error.max(f64::EPSILON),
            "beta_hat {} vs beta_exact {} outside 4 sigma ({})",
            report.beta_hat.value(),
            report.beta_exact.value(),
            report.std_error
        );
    }

    #[test]
    fn threshold_at_or_above_one_always_succeeds() {
        let report = simulate_error_counts(500, p(0.3), p(1.0), 10_000, 7).unwrap();
        assert_eq!(report.successes, report.trials);
        assert_eq!(report.beta_hat.value(), 1.0);
        assert_eq!(report.beta_exact.value(), 1.0);
    }

    #[test]
    fn zero_threshold_never_succeeds_for_large_blocks() {
        let report = simulate_error_counts(1000, p(0.1), p(0.0), 10_000, 7).unwrap();
        assert_eq!(report.successes, 0);
        assert_eq!(report.beta_hat.value(), 0.0);
    }

    #[test]
    fn deterministic_across_runs_and_workers() {
        let a = simulate_error_counts(1000, p(0.1), p(0.13), 20_000, 42).unwrap();
        let b = simulate_error_counts(1000, p(0.1), p(0.13), 20_000, 42).unwrap();
        assert_eq!(a, b);
        let c = simulate_error_counts_parallel(1000, p(0.1), p(0.13), 20_000, 42, 8).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn reference_counts_pinned() {
        // regression pin of the generator contract; see the module docs
        let sampler = BinomialSampler::new(1000, 0.1);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        rng.set_stream(0);
        let counts: Vec<u64> = (0..8)
            .map(|_| {
                let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                sampler.sample(u)
            })
            .collect();
        assert_eq!(counts, vec![104, 116, 98, 103, 95, 90, 95, 108]);
    }

    #[test]
    fn work_cap_enforced() {
        let err = simulate_with_cap(1000, p(0.1), p(0.13), 2_000, 1, 1, 1_000);
        match err {
            Err(Error::WorkCap { requested, cap }) => {
                assert!(requested >= 2_000);
                assert_eq!(cap, 1_000);
            }
            other => panic!("expected a work-cap error, got {other:?}"),
        }
    }

    #[test]
    fn merge_pools_counts() {
        let a = simulate_error_counts(1000, p(0.1), p(0.13), 10_000, 1).unwrap();
        let b = simulate_error_counts(1000, p(0.1), p(0.13), 30_000, 2).unwrap();
        let merged = merge_reports(&a, &b).unwrap();
        assert_eq!(merged.trials, 40_000);
        assert_eq!(merged.successes, a.successes + b.successes);
        assert_abs(
            merged.beta_hat.value(),
            (a.successes + b.successes) as f64 / 40_000.0,
            0.0,
        );
        assert_eq!(merged.seed, a.seed ^ b.seed);
        merged.validate(1e-12).unwrap();
    }

    #[test]
    fn merge_identity_element() {
        let r = simulate_error_counts(1000, p(0.1), p(0.13), 10_000, 9).unwrap();
        let empty = MonteCarloReport::empty(1000, p(0.1), p(0.13)).unwrap();
        assert_eq!(merge_reports(&r, &empty).unwrap(), r);
        assert_eq!(merge_reports(&empty, &r).unwrap(), r);
    }

    #[test]
    fn merge_rejects_mismatched_parameters() {
        let a = simulate_error_counts(1000, p(0.1), p(0.13), 1_000, 1).unwrap();
        let b = simulate_error_counts(1000, p(0.2), p(0.13), 1_000, 1).unwrap();
        assert!(matches!(merge_reports(&a, &b), Err(Error::Mismatch(_))));
    }
}
