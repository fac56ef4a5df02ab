//! Exact evaluation of the centered cubic maximal function of the integer
//! lattice counting measure, in log-space.
//!
//! For a point `x` and radius `r`, the cube `Q(x,r)` is the product of the
//! closed intervals `[x_i - r, x_i + r]` (edge length `2r`). The measure of
//! the cube is the product over coordinates of the number of integers in
//! each interval, so everything is computed as sums of logarithms: counts
//! reach `(2r+1)^n` and would overflow any fixed-width integer long before
//! the dimensions of interest.
//!
//! The supremum over radii restricts to the breakpoint set: the per-axis
//! counts are right-continuous step functions of `r` that only increase when
//! `r` crosses a distance `|x_i - k|` to a lattice hyperplane, while the
//! volume grows continuously, so the density ratio strictly decreases
//! between breakpoints. The sweep sorts the fractional breakpoint offsets
//! once and replays them window by window (`r` in `[m, m+1)`), maintaining
//! the log-count incrementally.
//!
//! Two exact facts make the sweep cheap:
//! * at the end of window `m` every axis has exactly `2(m+1)` lattice
//!   points in range, so the running log-count can be resynchronized to
//!   `n log(2(m+1))` and rounding drift does not accumulate across windows;
//! * within window `m` the ratio is bounded by `n log(1 + 1/(2m))`, so once
//!   that potential falls below the best value already found no later
//!   window can win and the sweep stops. This is the truncation bound in
//!   action: radii beyond `n/(2 log L)` cannot produce a ratio above `L`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the unit cube: the argument of the maximal function and the
/// source of the coordinate statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint {
    coords: Vec<f64>,
}

impl SamplePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::parameter("sample point needs dimension >= 1"));
        }
        for (i, &c) in coords.iter().enumerate() {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::parameter(format!(
                    "coordinate {i} = {c} outside [0,1]"
                )));
            }
        }
        Ok(SamplePoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// A maximal-function value stored as a natural logarithm, with an explicit
/// infinity sentinel for lattice points (where the density ratio blows up
/// as `r -> 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogRatio {
    Finite(f64),
    Infinite,
}

impl LogRatio {
    pub fn is_infinite(&self) -> bool {
        matches!(self, LogRatio::Infinite)
    }

    /// The value as an f64, `+inf` for the sentinel.
    pub fn as_f64(&self) -> f64 {
        match self {
            LogRatio::Finite(v) => *v,
            LogRatio::Infinite => f64::INFINITY,
        }
    }

    /// Does the ratio strictly exceed the level with logarithm `log_level`?
    pub fn exceeds_log(&self, log_level: f64) -> bool {
        match self {
            LogRatio::Finite(v) => *v > log_level,
            LogRatio::Infinite => true,
        }
    }
}

/// How far the radius sweep goes.
///
/// `FromThreshold { l_min }` caps at `n/(2 log l_min)`: beyond that radius
/// the density ratio cannot exceed `l_min`, so the capped supremum decides
/// every level query `> L` with `L >= l_min` exactly. The default threshold
/// is 2 because every experiment in this crate queries levels `L >= 2`; a
/// smaller threshold is available but inflates the breakpoint count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RadiusCapPolicy {
    Explicit { r_max: f64 },
    FromThreshold { l_min: f64 },
}

impl RadiusCapPolicy {
    pub fn explicit(r_max: f64) -> Result<Self> {
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::parameter("explicit radius cap must be positive"));
        }
        Ok(RadiusCapPolicy::Explicit { r_max })
    }

    pub fn from_threshold(l_min: f64) -> Result<Self> {
        if !(l_min > 1.0) || !l_min.is_finite() {
            return Err(Error::parameter("cap threshold must be > 1"));
        }
        Ok(RadiusCapPolicy::FromThreshold { l_min })
    }

    /// Effective radius cap in dimension `n`.
    pub fn effective_cap(&self, n: usize) -> f64 {
        match self {
            RadiusCapPolicy::Explicit { r_max } => *r_max,
            RadiusCapPolicy::FromThreshold { l_min } => radius_cap(n, *l_min)
                .expect("validated at construction"),
        }
    }
}

impl Default for RadiusCapPolicy {
    fn default() -> Self {
        RadiusCapPolicy::FromThreshold { l_min: 2.0 }
    }
}

/// Radius beyond which the lattice density ratio is at most `level`:
/// `n / (2 log level)`.
pub fn radius_cap(n: usize, level: f64) -> Result<f64> {
    if !(level > 1.0) || !level.is_finite() {
        return Err(Error::parameter("radius cap needs level > 1"));
    }
    if n == 0 {
        return Err(Error::parameter("radius cap needs n >= 1"));
    }
    Ok(n as f64 / (2.0 * level.ln()))
}

/// Log of the number of lattice points in `Q(x,r)`: the sum over axes of
/// `log(floor(x_i + r) - ceil(x_i - r) + 1)`. Returns `-inf` when some axis
/// contains no integer.
pub fn count_lattice_points(x: &SamplePoint, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::parameter("count_lattice_points needs r > 0"));
    }
    let mut log_count = 0.0;
    for &c in x.coords() {
        let per_axis = (c + r).floor() - (c - r).ceil() + 1.0;
        if per_axis <= 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        log_count += per_axis.ln();
    }
    Ok(log_count)
}

/// Number of coordinates in the closed centered interval
/// `[(1-t)/2, (1+t)/2]`.
pub fn t_centered_count(x: &SamplePoint, t: f64) -> Result<usize> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::parameter("t_centered_count needs t in (0,1]"));
    }
    let lo = (1.0 - t) / 2.0;
    let hi = (1.0 + t) / 2.0;
    Ok(x.coords().iter().filter(|&&c| c >= lo && c <= hi).count())
}

/// Structured lower bound on `log M(x)` from integer radii `s - (1-t)/2`:
/// with `m` t-centered coordinates each such cube holds exactly `2s` lattice
/// points per centered axis and `2s-1` per non-centered axis, so the log
/// ratio is `m log(2s) + (n-m) log(2s-1) - n log(2s-1+t)`. Returns the max
/// over integer `s` in the given inclusive range.
pub fn structured_lower_bound(
    x: &SamplePoint,
    t: f64,
    s_range: std::ops::RangeInclusive<u64>,
) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::parameter("structured_lower_bound needs t in (0,1)"));
    }
    if s_range.is_empty() || *s_range.start() < 1 {
        return Err(Error::parameter(
            "structured_lower_bound needs a non-empty s range with s >= 1",
        ));
    }
    let n = x.dim() as f64;
    let m = t_centered_count(x, t)? as f64;
    let mut best = f64::NEG_INFINITY;
    for s in s_range {
        let s = s as f64;
        let v = m * (2.0 * s).ln() + (n - m) * (2.0 * s - 1.0).ln()
            - n * (2.0 * s - 1.0 + t).ln();
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Result of a capped radius sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOutcome {
    pub value: LogRatio,
    /// First radius attaining the supremum, in increasing order; `None` for
    /// lattice points and for caps below every breakpoint.
    pub argmax_radius: Option<f64>,
}

/// Reusable scratch space for the breakpoint sweep. One evaluator per
/// worker; all public entry points are pure functions of their inputs.
#[derive(Debug, Default)]
pub struct MaximalEvaluator {
    events: Vec<(f64, u32)>,
    counts: Vec<u32>,
    log_int: Vec<f64>,
}

impl MaximalEvaluator {
    pub fn new() -> Self {
        MaximalEvaluator::default()
    }

    fn ensure_log_table(&mut self, upto: usize) {
        if self.log_int.is_empty() {
            self.log_int.push(f64::NEG_INFINITY); // index 0 unused
        }
        while self.log_int.len() <= upto {
            self.log_int.push((self.log_int.len() as f64).ln());
        }
    }

    /// Supremum of `log mu(Q(x,r)) - n log(2r)` over `0 < r <= r_max`.
    ///
    /// Coordinates may be arbitrary reals; they are reduced mod 1, which
    /// leaves the breakpoint structure unchanged (the measure is the full
    /// lattice, and the map is plainly periodic). Returns the infinity
    /// sentinel when some coordinate sits exactly on the lattice.
    pub fn sweep(&mut self, coords: &[f64], r_max: f64) -> Result<SweepOutcome> {
        if coords.is_empty() {
            return Err(Error::parameter("sweep needs dimension >= 1"));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::parameter("sweep needs finite r_max > 0"));
        }
        let n = coords.len();
        self.events.clear();
        self.events.reserve(2 * n);
        for (i, &c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::parameter("sweep needs finite coordinates"));
            }
            let u = c.rem_euclid(1.0);
            if u == 0.0 {
                return Ok(SweepOutcome {
                    value: LogRatio::Infinite,
                    argmax_radius: None,
                });
            }
            self.events.push((u, i as u32));
            self.events.push((1.0 - u, i as u32));
        }
        self.events
            .sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

        self.counts.clear();
        self.counts.resize(n, 0);
        let nf = n as f64;

        let mut zero_axes = n;
        let mut log_count = 0.0f64; // sum of log counts over covered axes
        let mut best = f64::NEG_INFINITY;
        let mut best_r = None;

        let mut window = 0u64;
        'windows: while (window as f64) <= r_max {
            let base = window as f64;
            if window >= 1 {
                // No radius in [window, r_max] can reach a ratio above
                // n log(1 + 1/(2 window)); later windows only shrink it.
                let potential = nf * (1.0 / (2.0 * base)).ln_1p();
                if potential <= best {
                    break 'windows;
                }
            }
            self.ensure_log_table(2 * (window as usize) + 4);
            // reject threshold: a candidate at distance d >= base can only
            // beat `best` if log_count - n log(2 base) does
            let mut reject = if window >= 1 {
                best + nf * (2.0 * base).ln()
            } else {
                f64::NEG_INFINITY
            };
            let mut truncated = false;
            for &(frac, axis) in &self.events {
                let d = frac + base;
                if d > r_max {
                    truncated = true;
                    break;
                }
                let c = self.counts[axis as usize] + 1;
                self.counts[axis as usize] = c;
                if c == 1 {
                    zero_axes -= 1;
                } else {
                    log_count += self.log_int[c as usize] - self.log_int[(c - 1) as usize];
                }
                if zero_axes == 0 && log_count > reject {
                    let value = log_count - nf * (2.0 * d).ln();
                    if value > best {
                        best = value;
                        best_r = Some(d);
                        if window >= 1 {
                            reject = best + nf * (2.0 * base).ln();
                        }
                    }
                }
            }
            if truncated {
                break 'windows;
            }
            // Exact state at the window boundary: every axis holds
            // 2(window+1) lattice points.
            debug_assert!(self.counts.iter().all(|&c| c as u64 == 2 * (window + 1)));
            log_count = nf * (2.0 * (window + 1) as f64).ln();
            window += 1;
        }

        Ok(SweepOutcome {
            value: LogRatio::Finite(best),
            argmax_radius: best_r,
        })
    }
}

/// Capped supremum of the lattice density ratio for arbitrary real
/// coordinates (reduced mod 1). Lower-level entry point behind
/// [`maximal_function`]; useful for checking lattice symmetries directly.
pub fn sup_log_ratio_capped(coords: &[f64], r_max: f64) -> Result<SweepOutcome> {
    MaximalEvaluator::new().sweep(coords, r_max)
}

/// The centered cubic maximal function of the lattice counting measure at
/// `x`, as a log-ratio, restricted to radii within the cap policy.
pub fn maximal_function(x: &SamplePoint, cap: &RadiusCapPolicy) -> LogRatio {
    maximal_function_with_argmax(x, cap).value
}

/// Same as [`maximal_function`], also reporting the first maximizing radius.
pub fn maximal_function_with_argmax(x: &SamplePoint, cap: &RadiusCapPolicy) -> SweepOutcome {
    let r_max = cap.effective_cap(x.dim());
    MaximalEvaluator::new()
        .sweep(x.coords(), r_max)
        .expect("sample point and cap policy are validated at construction")
}
