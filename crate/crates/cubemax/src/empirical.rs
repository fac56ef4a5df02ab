//! Uniform sampling on the cube and the empirical process of the folded
//! coordinates.
//!
//! For `x` uniform on `[0,1]^n` the folded coordinates `X_i = 2|x_i - 1/2|`
//! are again i.i.d. uniform on `[0,1]`, and `X_i <= t` exactly when `x_i`
//! lies in the centered interval `[(1-t)/2, (1+t)/2]`. The normalized
//! centered count
//! `alpha_t = (#{X_i <= t} - n t) / sqrt(n)`
//! is the empirical process studied here; it is taken right-continuous at
//! jumps (the indicator uses `<=`).

use crate::error::{Error, Result};
use crate::lattice::SamplePoint;
use crate::rng::StreamRng;
use crate::stats::{BinomialCount, ConfidenceInterval};

/// Sorted folded coordinates `X_(1) <= ... <= X_(n)`; everything about the
/// empirical process is a function of these order statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalPath {
    n: usize,
    sorted: Vec<f64>,
}

impl EmpiricalPath {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted
    }

    /// Number of folded coordinates `<= t`.
    pub fn count_le(&self, t: f64) -> usize {
        self.sorted.partition_point(|&v| v <= t)
    }

    /// `alpha_t = (#{X_i <= t} - n t) / sqrt(n)`.
    pub fn alpha_at(&self, t: f64) -> f64 {
        let n = self.n as f64;
        (self.count_le(t) as f64 - n * t) / n.sqrt()
    }
}

/// The folded-coordinate empirical path of a point.
pub fn alpha_path(x: &SamplePoint) -> EmpiricalPath {
    let mut sorted: Vec<f64> = x
        .coords()
        .iter()
        .map(|&c| 2.0 * (c - 0.5).abs())
        .collect();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    EmpiricalPath {
        n: sorted.len(),
        sorted,
    }
}

/// Membership query for the set of points with an excess of t-centered
/// coordinates: threshold `n t + K sqrt(n t (1-t))`, membership uses `>=`.
/// The threshold is kept as a real; it is not rounded to an integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ESetQuery {
    t: f64,
    k: f64,
}

impl ESetQuery {
    pub fn new(t: f64, k: f64) -> Result<Self> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::parameter("e-set query needs t in (0,1)"));
        }
        if !(k >= 0.0) || !k.is_finite() {
            return Err(Error::parameter("e-set query needs K >= 0"));
        }
        Ok(ESetQuery { t, k })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn threshold(&self, n: usize) -> f64 {
        let n = n as f64;
        n * self.t + self.k * (n * self.t * (1.0 - self.t)).sqrt()
    }
}

/// Does `x` have at least `n t + K sqrt(n t(1-t))` t-centered coordinates?
pub fn e_set_member(x: &SamplePoint, q: &ESetQuery) -> bool {
    let count = crate::lattice::t_centered_count(x, q.t)
        .expect("query t validated at construction");
    count as f64 >= q.threshold(x.dim())
}

/// Draw a uniform point of `[0,1]^n`. Deterministic given the stream state.
pub fn sample_uniform_point(n: usize, rng: &mut StreamRng) -> Result<SamplePoint> {
    if n == 0 {
        return Err(Error::parameter("sample_uniform_point needs n >= 1"));
    }
    let mut coords = vec![0.0; n];
    rng.fill_uniform(&mut coords);
    SamplePoint::new(coords)
}

/// Exact supremum of `alpha_t / sqrt(t(1-t))` over `t in [eps, 1-eps]`.
///
/// Between jumps `alpha_t = (k - n t)/sqrt(n)` with fixed integer `k`, and
/// the normalized segment function `g(t) = (k - n t)/(sqrt(n) sqrt(t(1-t)))`
/// has `g'(t) = 0` reducing (after clearing the positive factor
/// `(t(1-t))^{3/2}`) to the linear equation `t (k - n/2) = k/2`. Each
/// segment is therefore checked at its left endpoint (the jump value, where
/// the process is right-continuous), at the window clamps, and at the
/// interior critical point when it falls inside the segment.
pub fn sup_normalized_alpha(path: &EmpiricalPath, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::parameter("sup_normalized_alpha needs eps in (0, 1/2)"));
    }
    let n = path.n as f64;
    let sqrt_n = n.sqrt();
    let hi = 1.0 - eps;
    let normalized = |t: f64, k: f64| (k - n * t) / (sqrt_n * (t * (1.0 - t)).sqrt());

    let mut best = f64::NEG_INFINITY;
    // walk segment starts: eps, then every jump time inside the window
    let mut k = path.count_le(eps);
    best = best.max(normalized(eps, k as f64));
    let mut idx = k; // first order statistic strictly beyond eps
    while idx < path.n {
        let t_jump = path.sorted[idx];
        if t_jump > hi {
            break;
        }
        // absorb ties: k jumps to the count at this time
        let mut j = idx;
        while j + 1 < path.n && path.sorted[j + 1] == t_jump {
            j += 1;
        }
        k = j + 1;
        if t_jump >= eps {
            best = best.max(normalized(t_jump, k as f64));
        }
        // interior critical point of this segment, if any
        let kf = k as f64;
        let denom = kf - n / 2.0;
        if denom != 0.0 {
            let t_crit = kf / (2.0 * denom);
            let seg_end = if j + 1 < path.n {
                path.sorted[j + 1].min(hi)
            } else {
                hi
            };
            if t_crit > t_jump.max(eps) && t_crit < seg_end {
                best = best.max(normalized(t_crit, kf));
            }
        }
        idx = j + 1;
    }
    // window right end, evaluated with the count in force there
    best = best.max(normalized(hi, path.count_le(hi) as f64));
    Ok(best)
}

/// Monte Carlo estimate with its exact binomial confidence interval.
#[derive(Debug, Clone, Copy)]
pub struct VolumeEstimate {
    pub count: BinomialCount,
    pub ci: ConfidenceInterval,
}

impl VolumeEstimate {
    pub fn estimate(&self) -> f64 {
        self.count.estimate()
    }

    pub fn from_count(count: BinomialCount) -> Result<Self> {
        Ok(VolumeEstimate {
            count,
            ci: count.ci95()?,
        })
    }
}

/// Monte Carlo estimate of the volume of the union over `t in [eps, 1-eps]`
/// of the excess-centered-coordinate sets at height `K`; by the exceedance
/// identity this is the probability that the normalized empirical process
/// supremum reaches `K`.
pub fn estimate_union_volume(
    n: usize,
    k: f64,
    eps: f64,
    trials: u64,
    rng: &mut StreamRng,
) -> Result<VolumeEstimate> {
    if trials == 0 {
        return Err(Error::parameter("estimate_union_volume needs trials >= 1"));
    }
    let count = union_volume_count(n, k, eps, trials, rng)?;
    VolumeEstimate::from_count(count)
}

/// Worker-sized chunk of the union-volume estimator: just the mergeable
/// (successes, trials) pair.
pub fn union_volume_count(
    n: usize,
    k: f64,
    eps: f64,
    trials: u64,
    rng: &mut StreamRng,
) -> Result<BinomialCount> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::parameter("estimate_union_volume needs eps in (0, 1/2)"));
    }
    let mut successes = 0u64;
    let mut coords = vec![0.0; n.max(1)];
    if n == 0 {
        return Err(Error::parameter("estimate_union_volume needs n >= 1"));
    }
    for _ in 0..trials {
        rng.fill_uniform(&mut coords);
        let x = SamplePoint::new(coords.clone())?;
        let path = alpha_path(&x);
        if sup_normalized_alpha(&path, eps)? >= k {
            successes += 1;
        }
    }
    Ok(BinomialCount::new(successes, trials))
}
