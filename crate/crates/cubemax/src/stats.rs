//! Statistical plumbing: exact binomial confidence intervals, two-sample
//! Kolmogorov-Smirnov machinery, Gaussian tail helpers, and mergeable
//! success counters for Monte Carlo estimators.

use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Mergeable (successes, trials) pair. Merging is associative and
/// commutative, so worker partials can be combined in any order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinomialCount {
    pub successes: u64,
    pub trials: u64,
}

impl BinomialCount {
    pub fn new(successes: u64, trials: u64) -> Self {
        assert!(successes <= trials, "successes must not exceed trials");
        BinomialCount { successes, trials }
    }

    pub fn merge(self, other: BinomialCount) -> BinomialCount {
        BinomialCount {
            successes: self.successes + other.successes,
            trials: self.trials + other.trials,
        }
    }

    pub fn estimate(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.successes as f64 / self.trials as f64
    }

    /// Exact two-sided Clopper-Pearson interval at the given confidence
    /// level (e.g. 0.95). Exact rather than Wald because tail probabilities
    /// near 0 and 1 are routinely estimated here.
    pub fn clopper_pearson(&self, confidence: f64) -> Result<ConfidenceInterval> {
        if self.trials == 0 {
            return Err(Error::parameter("confidence interval needs trials >= 1"));
        }
        if !(0.0 < confidence && confidence < 1.0) {
            return Err(Error::parameter("confidence must be in (0,1)"));
        }
        let alpha = 1.0 - confidence;
        let k = self.successes as f64;
        let n = self.trials as f64;
        let lo = if self.successes == 0 {
            0.0
        } else {
            beta_quantile(alpha / 2.0, k, n - k + 1.0)?
        };
        let hi = if self.successes == self.trials {
            1.0
        } else {
            beta_quantile(1.0 - alpha / 2.0, k + 1.0, n - k)?
        };
        Ok(ConfidenceInterval {
            lo,
            hi,
            confidence,
        })
    }

    pub fn ci95(&self) -> Result<ConfidenceInterval> {
        self.clopper_pearson(0.95)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfidenceInterval {
    pub lo: f64,
    pub hi: f64,
    pub confidence: f64,
}

fn beta_quantile(p: f64, a: f64, b: f64) -> Result<f64> {
    let dist = Beta::new(a, b)
        .map_err(|e| Error::parameter(format!("beta({a},{b}) for quantile: {e}")))?;
    Ok(dist.inverse_cdf(p))
}

/// Upper tail of the standard Gaussian, P(G > x), via erfc.
pub fn normal_tail(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Lower estimate of the Gaussian tail: (x^-1 - x^-3) phi(x). Valid (and
/// nontrivial) for x > 1; for x <= 1 the algebraic prefactor is <= 0.
pub fn gaussian_tail_lower(x: f64) -> f64 {
    let density = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    (1.0 / x - 1.0 / (x * x * x)) * density
}

/// Survival function of the Kolmogorov distribution,
/// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=200 {
        let term = (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        if term < 1e-18 {
            break;
        }
        sum += sign * term;
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// Two-sample KS test. Sorts copies of the inputs; NaNs are rejected.
pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> Result<KsResult> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::parameter("ks test needs non-empty samples"));
    }
    if xs.iter().chain(ys.iter()).any(|v| v.is_nan()) {
        return Err(Error::parameter("ks test input contains NaN"));
    }
    let mut xs = xs.to_vec();
    let mut ys = ys.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let n = xs.len() as f64;
    let m = ys.len() as f64;
    let mut i = 0usize;
    let mut j = 0usize;
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let n_eff = n * m / (n + m);
    let p = kolmogorov_sf(n_eff.sqrt() * d);
    Ok(KsResult {
        statistic: d,
        p_value: p,
    })
}

/// Running mean/variance accumulator (Welford).
#[derive(Debug, Clone, Copy, Default)]
pub struct OnlineStats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl OnlineStats {
    pub fn add(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.m2 / (self.n - 1) as f64
    }

    /// Standard error of the sample mean.
    pub fn se_mean(&self) -> f64 {
        if self.n == 0 {
            return f64::INFINITY;
        }
        (self.variance() / self.n as f64).sqrt()
    }

    pub fn merge(self, other: OnlineStats) -> OnlineStats {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.n as f64 / n as f64;
        let m2 =
            self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64;
        OnlineStats { n, mean, m2 }
    }
}
