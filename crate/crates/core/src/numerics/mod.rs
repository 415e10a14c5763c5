//! Special functions underpinning every bound in the crate: binary entropy
//! and its inverse, the standard normal upper tail `Q` and its inverse, and
//! the exact binomial CDF evaluated in log space.
//!
//! All operations are pure and stateless.

mod erf;

use std::f64::consts::{LN_2, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// sqrt(2*pi)
const SQRT_2PI: f64 = 2.5066282746310002;
/// ln(sqrt(2*pi))
const LN_SQRT_2PI: f64 = 0.9189385332046727;

/// A probability; guaranteed to lie in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    /// Validates `value` into a probability.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain(format!("probability {value} outside [0, 1]")));
        }
        Ok(Self(value))
    }

    /// Caller guarantees `value` is in `[0, 1]`.
    pub(crate) fn new_unchecked(value: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&value), "bad probability {value}");
        Self(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// An information quantity in bits. Non-negative; whether it is per digit
/// or per key element is stated at each use site.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bits(f64);

impl Bits {
    /// Validates `value` (finite, non-negative) into a bit count.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Domain(format!(
                "bit count {value} is not a finite non-negative real"
            )));
        }
        Ok(Self(value))
    }

    /// Caller guarantees `value >= 0`.
    pub(crate) fn new_unchecked(value: f64) -> Self {
        debug_assert!(value >= 0.0, "negative bit count {value}");
        Self(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Binary (Shannon) entropy `H(p) = -p log2 p - (1-p) log2 (1-p)` in bits,
/// with `H(0) = H(1) = 0` by continuity.
pub fn binary_entropy(p: Probability) -> Bits {
    Bits(h2(p.value()))
}

/// `binary_entropy` on raw floats; caller guarantees `p` in `[0, 1]`.
///
/// Evaluated on `min(p, 1-p)` so the symmetry `H(e) = H(1-e)` is exact.
pub(crate) fn h2(p: f64) -> f64 {
    let q = p.min(1.0 - p);
    if q == 0.0 {
        return 0.0;
    }
    // 1 - q is exact here since q <= 1/2
    -(q * q.ln() + (1.0 - q) * (-q).ln_1p()) / LN_2
}

const BISECT_TOL: f64 = 1e-13;
const BISECT_MAX_ITER: usize = 200;

/// Inverse of [`binary_entropy`] on its increasing branch: the unique
/// `p` in `[0, 1/2]` with `H(p) = h`.
///
/// Bracketed bisection to an interval width of 1e-13 (within the 1e-12
/// contract with margin); monotonicity of `H` on `[0, 1/2]` makes the
/// bracket unconditionally valid.
pub fn inv_binary_entropy(h: Bits) -> Result<Probability> {
    let h = h.value();
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::Domain(format!("entropy {h} outside [0, 1]")));
    }
    Ok(Probability(inv_h2(h)))
}

/// `inv_binary_entropy` on raw floats; caller guarantees `h` in `[0, 1]`.
pub(crate) fn inv_h2(h: f64) -> f64 {
    if h == 0.0 {
        return 0.0;
    }
    if h == 1.0 {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    for _ in 0..BISECT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if h2(mid) < h {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= BISECT_TOL {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Standard normal upper tail `Q(z) = P[N(0,1) > z]`.
///
/// Relative error stays below 1e-9 for every result representable down to
/// 1e-300 (the erfc kernel is accurate to ~1 ulp throughout).
pub fn gaussian_tail(z: f64) -> Result<Probability> {
    if z.is_nan() {
        return Err(Error::Domain("gaussian tail of NaN".into()));
    }
    Ok(Probability(q_tail(z)))
}

/// `gaussian_tail` on raw floats; caller guarantees `z` is not NaN.
pub(crate) fn q_tail(z: f64) -> f64 {
    0.5 * erf::erfc(z / SQRT_2)
}

/// Inverse of [`gaussian_tail`]: the `z` with `Q(z) = p`, for `p` in `(0, 1)`.
///
/// Acklam's rational approximation refined by one Newton step on `Q`;
/// relative error below 1e-9 everywhere in the open interval.
pub fn gaussian_tail_inverse(p: Probability) -> Result<f64> {
    let p = p.value();
    if p <= 0.0 || p >= 1.0 {
        return Err(Error::Domain(format!(
            "gaussian tail inverse needs p in (0, 1), got {p}"
        )));
    }
    Ok(q_inv(p))
}

/// `gaussian_tail_inverse` on raw floats; caller guarantees `p` in `(0, 1)`.
pub(crate) fn q_inv(p: f64) -> f64 {
    if p == 0.5 {
        return 0.0;
    }
    if p > 0.5 {
        // 1 - p is exact for p in [1/2, 1] (Sterbenz), so the reflection
        // loses nothing.
        return -q_inv_lower(1.0 - p);
    }
    q_inv_lower(p)
}

// Acklam (2003) inverse normal CDF coefficients; |relative error| < 1.15e-9
// before refinement. Kept digit-for-digit as published.
#[allow(clippy::excessive_precision)]
const ACKLAM_A: [f64; 6] = [
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.383577518672690e+02,
    -3.066479806614716e+01,
    2.506628277459239e+00,
];
const ACKLAM_B: [f64; 5] = [
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
];
const ACKLAM_C: [f64; 6] = [
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
];
const ACKLAM_D: [f64; 4] = [
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
];
const ACKLAM_P_LOW: f64 = 0.02425;

/// `Q^{-1}` on `(0, 1/2)`: non-negative quantiles.
fn q_inv_lower(p: f64) -> f64 {
    let (a, b, c, d) = (ACKLAM_A, ACKLAM_B, ACKLAM_C, ACKLAM_D);
    // Acklam evaluates the normal CDF inverse, which is -Q^{-1} here.
    let z = if p < ACKLAM_P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        -(((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
    };
    // One Newton step on Q(z) = p; dQ/dz = -phi(z).
    let phi = (-0.5 * z * z).exp() / SQRT_2PI;
    if phi > 0.0 {
        z + (q_tail(z) - p) / phi
    } else {
        z
    }
}

/// Exact binomial CDF `P[X <= k]` for `X ~ Binomial(m, p)`.
///
/// Terms are assembled from log-gamma factors and summed in log space, so
/// the evaluation is overflow-free for any block size. For `k` above the
/// mean the complement is summed instead, which keeps results near 1
/// accurate.
pub fn binomial_tail_exact(m: u64, p: Probability, k: u64) -> Result<Probability> {
    if m == 0 {
        return Err(Error::Domain(
            "binomial needs a positive trial count".into(),
        ));
    }
    if k > m {
        return Err(Error::Domain(format!(
            "binomial tail index k={k} exceeds m={m}"
        )));
    }
    let p = p.value();
    if k == m {
        return Ok(Probability(1.0));
    }
    if p == 0.0 {
        return Ok(Probability(1.0)); // X = 0 always
    }
    if p == 1.0 {
        return Ok(Probability(0.0)); // X = m > k here
    }
    let value = if k as f64 > m as f64 * p {
        1.0 - tail_sum_up(m, p, k + 1)
    } else {
        tail_sum_down(m, p, k)
    };
    Ok(Probability(value.clamp(0.0, 1.0)))
}

/// Stop accumulating once the next term cannot move the running sum.
const SUM_CUTOFF: f64 = 1e-18;

/// `sum_{n<=k} pmf(n)` for `k` at or below the mean: the leading term is the
/// largest, successive ratios are < 1, so accumulate relative to the lead.
fn tail_sum_down(m: u64, p: f64, k: u64) -> f64 {
    let ln_lead = ln_binomial_pmf(m, p, k);
    let q = 1.0 - p;
    let mut rel = 1.0_f64;
    let mut acc = 1.0_f64;
    let mut n = k;
    while n > 0 {
        // pmf(n-1)/pmf(n) = n(1-p) / ((m-n+1) p)
        rel *= (n as f64 * q) / ((m - n + 1) as f64 * p);
        acc += rel;
        n -= 1;
        if rel < acc * SUM_CUTOFF {
            break;
        }
    }
    (ln_lead + acc.ln()).exp()
}

/// `sum_{n>=start} pmf(n)` for `start` above the mean; mirror of
/// [`tail_sum_down`].
fn tail_sum_up(m: u64, p: f64, start: u64) -> f64 {
    let ln_lead = ln_binomial_pmf(m, p, start);
    let q = 1.0 - p;
    let mut rel = 1.0_f64;
    let mut acc = 1.0_f64;
    let mut n = start;
    while n < m {
        // pmf(n+1)/pmf(n) = (m-n) p / ((n+1)(1-p))
        rel *= ((m - n) as f64 * p) / ((n + 1) as f64 * q);
        acc += rel;
        n += 1;
        if rel < acc * SUM_CUTOFF {
            break;
        }
    }
    (ln_lead + acc.ln()).exp()
}

/// `ln P[X = n]` for `X ~ Binomial(m, p)`, `p` in `(0, 1)`.
pub(crate) fn ln_binomial_pmf(m: u64, p: f64, n: u64) -> f64 {
    ln_choose(m, n) + n as f64 * p.ln() + (m - n) as f64 * (-p).ln_1p()
}

fn ln_choose(m: u64, n: u64) -> f64 {
    ln_gamma((m + 1) as f64) - ln_gamma((n + 1) as f64) - ln_gamma((m - n + 1) as f64)
}

// Lanczos approximation, g = 7, 9 terms, coefficients as published.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Log-gamma for `x >= 1` (the only range needed for binomial terms).
fn ln_gamma(x: f64) -> f64 {
    let x = x - 1.0;
    let mut series = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + series.ln()
}
