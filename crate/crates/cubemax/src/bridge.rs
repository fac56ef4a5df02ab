//! Brownian bridge and discrete Brownian motion simulation.
//!
//! A Brownian bridge is the centered Gaussian process on `[0,1]` with
//! covariance `t(1-u)` for `t <= u`, pinned to zero at both ends. Two exact
//! finite-dimensional constructions are provided: subtracting `t B_1` from a
//! Brownian motion, and the time inversion `(1-t) B_{t/(1-t)}`. Both have
//! the exact bridge law on any grid, which the tests exploit.

use crate::error::{Error, Result};
use crate::rng::StreamRng;
use crate::stats::{gaussian_tail_lower, normal_tail, BinomialCount};

/// Gaussian path values on a fixed time grid in `[0,1]`, pinned to zero at
/// both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgePath {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl BridgePath {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_at_index(&self, i: usize) -> f64 {
        self.values[i]
    }
}

/// Brownian motion values on a fixed increasing time grid (time 0 and value
/// 0 are implicit when the grid starts later).
#[derive(Debug, Clone, PartialEq)]
pub struct MotionPath {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl MotionPath {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// A bridge grid must strictly increase from exactly 0 to exactly 1.
pub fn validate_bridge_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::parameter("bridge grid needs at least two points"));
    }
    if grid[0] != 0.0 || *grid.last().unwrap() != 1.0 {
        return Err(Error::parameter("bridge grid must start at 0 and end at 1"));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::parameter("bridge grid must be strictly increasing"));
        }
    }
    Ok(())
}

/// Simulation grid for normalized-supremum experiments on `[eps, 1-eps]`:
/// geometrically spaced points near both window edges and a uniform
/// interior, plus the exact window endpoints and `{0, 1}`. The normalized
/// statistic is stationary in log-time, so resolution is spent on the
/// logarithmic scales near the edges where the supremum lives.
pub fn bridge_grid(eps: f64, resolution: usize) -> Result<Vec<f64>> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::parameter("bridge grid needs eps in (0, 1/2)"));
    }
    if resolution < 8 {
        return Err(Error::parameter("bridge grid needs resolution >= 8"));
    }
    let mut grid = Vec::with_capacity(resolution + 4);
    grid.push(0.0);
    grid.push(1.0);
    grid.push(eps);
    grid.push(1.0 - eps);
    if eps >= 0.25 {
        for i in 1..resolution {
            let t = eps + (1.0 - 2.0 * eps) * i as f64 / resolution as f64;
            grid.push(t);
        }
    } else {
        let quarter = resolution / 4;
        let ratio = 0.25 / eps;
        for k in 1..quarter {
            let t = eps * ratio.powf(k as f64 / quarter as f64);
            grid.push(t);
            grid.push(1.0 - t);
        }
        let interior = resolution - 2 * quarter;
        for i in 0..=interior {
            grid.push(0.25 + 0.5 * i as f64 / interior as f64);
        }
    }
    grid.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    validate_bridge_grid(&grid)?;
    Ok(grid)
}

/// Sample bridge values on `grid` into `values` (reusable buffer): Brownian
/// increments first, then subtraction of `t B_1`.
pub fn sample_bridge_into(grid: &[f64], rng: &mut StreamRng, values: &mut Vec<f64>) {
    values.clear();
    values.reserve(grid.len());
    let mut b = 0.0;
    values.push(0.0);
    for w in grid.windows(2) {
        b += (w[1] - w[0]).sqrt() * rng.standard_normal();
        values.push(b);
    }
    let b_final = *values.last().unwrap();
    for (v, &t) in values.iter_mut().zip(grid.iter()) {
        *v -= t * b_final;
    }
    // exact zeros at the pinned ends (the subtraction already gives 0 - 0
    // and b - b, but normalize the sign of zero)
    values[0] = 0.0;
    *values.last_mut().unwrap() = 0.0;
}

/// Sample a bridge on the grid via the subtraction construction. The
/// finite-dimensional law is exact: covariance `t(1-u)` for `t <= u`.
pub fn sample_bridge(grid: &[f64], rng: &mut StreamRng) -> Result<BridgePath> {
    validate_bridge_grid(grid)?;
    let mut values = Vec::new();
    sample_bridge_into(grid, rng, &mut values);
    Ok(BridgePath {
        times: grid.to_vec(),
        values,
    })
}

/// Sample Brownian motion at the given strictly increasing times (all > 0,
/// started from `B_0 = 0`).
pub fn sample_motion(times: &[f64], rng: &mut StreamRng) -> Result<MotionPath> {
    if times.is_empty() {
        return Err(Error::parameter("motion path needs at least one time"));
    }
    let mut prev_t = 0.0;
    let mut b = 0.0;
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        if !(t > prev_t) {
            return Err(Error::parameter(
                "motion times must be strictly increasing and positive",
            ));
        }
        b += (t - prev_t).sqrt() * rng.standard_normal();
        values.push(b);
        prev_t = t;
    }
    Ok(MotionPath {
        times: times.to_vec(),
        values,
    })
}

/// Transformed times `t/(1-t)` for every grid point except the final `t=1`.
/// (The `t=0` grid point maps to time 0 and is skipped too: `B_0 = 0`.)
pub fn transformed_times(grid: &[f64]) -> Result<Vec<f64>> {
    validate_bridge_grid(grid)?;
    Ok(grid[1..grid.len() - 1]
        .iter()
        .map(|&t| t / (1.0 - t))
        .collect())
}

/// Build a bridge from a motion path via `(1-t) B_{t/(1-t)}`, with the
/// value at `t=1` set to zero by the explicit convention. The motion must
/// have been sampled exactly on [`transformed_times`] of the grid.
pub fn time_inversion_bridge(grid: &[f64], motion: &MotionPath) -> Result<BridgePath> {
    validate_bridge_grid(grid)?;
    let expected = transformed_times(grid)?;
    if motion.times.len() != expected.len() {
        return Err(Error::parameter(
            "motion path does not cover the transformed grid",
        ));
    }
    for (got, want) in motion.times.iter().zip(expected.iter()) {
        if (got - want).abs() > 1e-12 * want.max(1.0) {
            return Err(Error::parameter(
                "motion times do not match t/(1-t) of the grid",
            ));
        }
    }
    let mut values = Vec::with_capacity(grid.len());
    values.push(0.0);
    for (i, &t) in grid[1..grid.len() - 1].iter().enumerate() {
        values.push((1.0 - t) * motion.values[i]);
    }
    values.push(0.0);
    Ok(BridgePath {
        times: grid.to_vec(),
        values,
    })
}

/// Max of `value / sqrt(t(1-t))` over grid points inside `[eps, 1-eps]`.
/// A grid approximation of the continuum supremum: it can only
/// underestimate, which the experiment designs account for.
pub fn sup_normalized_bridge(path: &BridgePath, eps: f64) -> Result<f64> {
    sup_normalized_grid(&path.times, &path.values, eps)
}

/// Grid/value slice version of [`sup_normalized_bridge`] for mass
/// simulation without per-path allocation.
pub fn sup_normalized_grid(times: &[f64], values: &[f64], eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::parameter("sup_normalized needs eps in (0, 1/2)"));
    }
    let mut best = f64::NEG_INFINITY;
    let mut seen = false;
    for (&t, &v) in times.iter().zip(values.iter()) {
        if t >= eps && t <= 1.0 - eps {
            seen = true;
            let g = v / (t * (1.0 - t)).sqrt();
            if g > best {
                best = g;
            }
        }
    }
    if !seen {
        return Err(Error::parameter(
            "grid has no point inside the supremum window",
        ));
    }
    Ok(best)
}

/// Monte Carlo estimate of `P(max_{1<=k<=N} B_k / sqrt(k) > level)` from
/// partial sums of standard Gaussians.
pub fn discrete_motion_sup(
    n_max: usize,
    level: f64,
    trials: u64,
    rng: &mut StreamRng,
) -> Result<BinomialCount> {
    if n_max == 0 {
        return Err(Error::parameter("discrete_motion_sup needs N >= 1"));
    }
    if trials == 0 {
        return Err(Error::parameter("discrete_motion_sup needs trials >= 1"));
    }
    let mut successes = 0u64;
    for _ in 0..trials {
        let mut b = 0.0;
        for k in 1..=n_max {
            b += rng.standard_normal();
            if b / (k as f64).sqrt() > level {
                successes += 1;
                break;
            }
        }
    }
    Ok(BinomialCount::new(successes, trials))
}

/// Parameters of the iterated-logarithm experiment on the window
/// `[1/A, 1 - 1/A]`.
///
/// `rho = (2-eta)(1+sqrt(alpha))^2/(alpha-1)` must be below 2 for the
/// Gaussian-tail comparison constant to be positive, and the geometric scale
/// count `N = floor(log(A-1)/log(alpha)) - 1` must be >= 1 for the analytic
/// floor to say anything. `N` is clamped at 0 instead of rejected: small
/// windows are still perfectly good Monte Carlo experiments, they just come
/// with a degenerate (zero) floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LilConfig {
    eta: f64,
    a_big: f64,
    alpha: f64,
    rho: f64,
    n_events: u32,
}

impl LilConfig {
    pub fn new(eta: f64, a_big: f64, alpha: f64) -> Result<Self> {
        if !(eta > 0.0 && eta < 2.0) {
            return Err(Error::config("lil config needs eta in (0,2)"));
        }
        if !(a_big >= std::f64::consts::E) {
            return Err(Error::config("lil config needs A >= e"));
        }
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(Error::config("lil config needs alpha > 1"));
        }
        let rho = (2.0 - eta) * (1.0 + alpha.sqrt()).powi(2) / (alpha - 1.0);
        if !(rho < 2.0) {
            return Err(Error::config(format!(
                "alpha = {alpha} gives rho = {rho} >= 2; increase alpha"
            )));
        }
        let raw = ((a_big - 1.0).ln() / alpha.ln()).floor() - 1.0;
        let n_events = if raw >= 1.0 { raw as u32 } else { 0 };
        Ok(LilConfig {
            eta,
            a_big,
            alpha,
            rho,
            n_events,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn a_big(&self) -> f64 {
        self.a_big
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn n_events(&self) -> u32 {
        self.n_events
    }

    pub fn eps(&self) -> f64 {
        1.0 / self.a_big
    }

    /// The iterated-logarithm level `sqrt((2-eta) log log A)`.
    pub fn threshold(&self) -> f64 {
        ((2.0 - self.eta) * self.a_big.ln().ln()).sqrt()
    }
}

/// The Gaussian-tail comparison constant: the infimum over `x >= 2` of
/// `[(x^-1 - x^-3) phi(x)] / exp(-x^2/rho)`.
///
/// The ratio is not monotone over the whole range `rho < 2`: for
/// `rho > 2/(6 - sqrt(24))` (about 1.8166) it dips to an interior minimum
/// near `x ~ sqrt(rho/(2-rho))` before diverging, so the infimum is located
/// by a dense scan rather than assumed to sit at the left endpoint.
pub fn tail_comparison_constant(rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 2.0) {
        return Err(Error::config("tail comparison constant needs rho in (0,2)"));
    }
    let x_hi = (3.0 * (rho / (2.0 - rho)).sqrt()).max(20.0);
    let steps = ((x_hi - 2.0) / 1e-3).ceil() as usize;
    let mut best = f64::INFINITY;
    for i in 0..=steps {
        let x = 2.0 + (x_hi - 2.0) * i as f64 / steps as f64;
        let ratio = gaussian_tail_lower(x) * (x * x / rho).exp();
        if ratio < best {
            best = ratio;
        }
    }
    Ok(best)
}

/// Analytic floor of the iterated-logarithm probability:
/// `(1/2) (1 - exp(-C(rho) N / log A))`, including the symmetry factor 1/2
/// from replacing the one-sided supremum by the two-sided one.
///
/// Returns 0 when the configuration admits no geometric scale (`N = 0`) or
/// when the tail-comparison premise fails at the working threshold, so the
/// returned value is always a genuine lower bound.
pub fn lil_analytic_floor(cfg: &LilConfig) -> Result<f64> {
    if !(cfg.rho < 2.0) {
        return Err(Error::config("lil floor needs rho < 2"));
    }
    if cfg.n_events == 0 {
        return Ok(0.0);
    }
    let c_rho = tail_comparison_constant(cfg.rho)?;
    // the chain uses P(G > x_thr) >= C(rho) exp(-x_thr^2/rho) at
    // x_thr = sqrt(rho log log A); verify it numerically since x_thr can
    // fall below the [2, inf) range the constant was fitted on
    let x_thr = (cfg.rho * cfg.a_big.ln().ln()).sqrt();
    let claimed = c_rho * (-x_thr * x_thr / cfg.rho).exp();
    if claimed > normal_tail(x_thr) {
        return Ok(0.0);
    }
    let log_a = cfg.a_big.ln();
    Ok(0.5 * (1.0 - (-c_rho * cfg.n_events as f64 / log_a).exp()))
}

/// Outcome of one iterated-logarithm Monte Carlo run.
#[derive(Debug, Clone)]
pub struct LilRun {
    pub threshold: f64,
    pub floor: f64,
    pub count: BinomialCount,
    pub eps: f64,
    pub n_events: u32,
}

/// Estimate `P(sup_{eps<=t<=1-eps} beta_t / sqrt(t(1-t)) >= threshold)` with
/// `eps = 1/A`, via bridge sampling on the geometric grid, and report the
/// analytic floor alongside.
pub fn lil_probability(
    cfg: &LilConfig,
    resolution: usize,
    trials: u64,
    rng: &mut StreamRng,
) -> Result<LilRun> {
    if trials == 0 {
        return Err(Error::parameter("lil_probability needs trials >= 1"));
    }
    let eps = cfg.eps();
    let grid = bridge_grid(eps, resolution)?;
    let threshold = cfg.threshold();
    let mut values = Vec::new();
    let mut successes = 0u64;
    for _ in 0..trials {
        sample_bridge_into(&grid, rng, &mut values);
        if sup_normalized_grid(&grid, &values, eps)? >= threshold {
            successes += 1;
        }
    }
    Ok(LilRun {
        threshold,
        floor: lil_analytic_floor(cfg)?,
        count: BinomialCount::new(successes, trials),
        eps,
        n_events: cfg.n_events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::OnlineStats;
    use approx::assert_relative_eq;

    #[test]
    fn grid_validation() {
        assert!(validate_bridge_grid(&[0.0, 0.5, 1.0]).is_ok());
        assert!(validate_bridge_grid(&[0.0, 0.5, 0.5, 1.0]).is_err());
        assert!(validate_bridge_grid(&[0.1, 0.5, 1.0]).is_err());
        assert!(validate_bridge_grid(&[0.0, 0.5]).is_err());
    }

    #[test]
    fn generated_grid_is_valid_and_covers_window() {
        for &eps in &[0.001, 0.05, 0.3, 0.45] {
            let grid = bridge_grid(eps, 128).unwrap();
            validate_bridge_grid(&grid).unwrap();
            assert!(grid.contains(&eps));
            assert!(grid.iter().any(|&t| (t - (1.0 - eps)).abs() < 1e-15));
        }
    }

    #[test]
    fn bridge_endpoints_are_exactly_zero() {
        let grid = bridge_grid(0.05, 64).unwrap();
        let mut rng = StreamRng::new(1, 0);
        for _ in 0..100 {
            let path = sample_bridge(&grid, &mut rng).unwrap();
            assert_eq!(path.values()[0], 0.0);
            assert_eq!(*path.values().last().unwrap(), 0.0);
        }
    }

    #[test]
    fn bridge_variance_at_half() {
        let grid = vec![0.0, 0.25, 0.5, 0.75, 1.0];
        let mut rng = StreamRng::new(2, 0);
        let mut sq = OnlineStats::default();
        for _ in 0..30_000 {
            let path = sample_bridge(&grid, &mut rng).unwrap();
            let v = path.value_at_index(2);
            sq.add(v * v);
        }
        assert!(
            (sq.mean() - 0.25).abs() < 4.0 * sq.se_mean(),
            "var {}",
            sq.mean()
        );
    }

    #[test]
    fn bridge_covariance_quarters() {
        let grid = vec![0.0, 0.25, 0.75, 1.0];
        let mut rng = StreamRng::new(3, 0);
        let mut prod = OnlineStats::default();
        for _ in 0..30_000 {
            let path = sample_bridge(&grid, &mut rng).unwrap();
            prod.add(path.value_at_index(1) * path.value_at_index(2));
        }
        assert!(
            (prod.mean() - 0.0625).abs() < 4.0 * prod.se_mean(),
            "cov {}",
            prod.mean()
        );
    }

    #[test]
    fn time_inversion_construction() {
        let grid = vec![0.0, 0.2, 0.5, 0.8, 1.0];
        let expected = transformed_times(&grid).unwrap();
        assert_relative_eq!(expected[0], 0.25);
        assert_relative_eq!(expected[1], 1.0);
        assert_relative_eq!(expected[2], 4.0);

        let mut rng = StreamRng::new(4, 0);
        let motion = sample_motion(&expected, &mut rng).unwrap();
        let path = time_inversion_bridge(&grid, &motion).unwrap();
        assert_eq!(path.values()[0], 0.0);
        assert_eq!(*path.values().last().unwrap(), 0.0);

        // wrong times are rejected
        let bad = MotionPath {
            times: vec![0.25, 1.0, 3.9],
            values: vec![0.0, 0.0, 0.0],
        };
        assert!(time_inversion_bridge(&grid, &bad).is_err());
    }

    #[test]
    fn time_inversion_variance_at_half() {
        let grid = vec![0.0, 0.5, 1.0];
        let times = transformed_times(&grid).unwrap();
        let mut rng = StreamRng::new(5, 0);
        let mut sq = OnlineStats::default();
        for _ in 0..30_000 {
            let motion = sample_motion(&times, &mut rng).unwrap();
            let path = time_inversion_bridge(&grid, &motion).unwrap();
            let v = path.value_at_index(1);
            sq.add(v * v);
        }
        assert!(
            (sq.mean() - 0.25).abs() < 4.0 * sq.se_mean(),
            "var {}",
            sq.mean()
        );
    }

    #[test]
    fn sup_normalized_basics() {
        let grid = vec![0.0, 0.25, 0.5, 0.75, 1.0];
        let zero = BridgePath {
            times: grid.clone(),
            values: vec![0.0; 5],
        };
        assert_eq!(sup_normalized_bridge(&zero, 0.2).unwrap(), 0.0);

        let spike = BridgePath {
            times: grid.clone(),
            values: vec![0.0, 0.0, 0.7, 0.0, 0.0],
        };
        assert_relative_eq!(sup_normalized_bridge(&spike, 0.2).unwrap(), 0.7 / 0.5);

        // window not covered by the grid
        let coarse = BridgePath {
            times: vec![0.0, 1.0],
            values: vec![0.0, 0.0],
        };
        assert!(sup_normalized_bridge(&coarse, 0.2).is_err());
    }

    #[test]
    fn sup_grows_as_window_widens() {
        let grid = bridge_grid(0.02, 256).unwrap();
        let mut rng = StreamRng::new(6, 0);
        let mut wide_minus_narrow = OnlineStats::default();
        for _ in 0..2000 {
            let path = sample_bridge(&grid, &mut rng).unwrap();
            let narrow = sup_normalized_bridge(&path, 0.2).unwrap();
            let wide = sup_normalized_bridge(&path, 0.02).unwrap();
            assert!(wide >= narrow - 1e-12);
            wide_minus_narrow.add(wide - narrow);
        }
        assert!(wide_minus_narrow.mean() > 0.0);
    }

    #[test]
    fn discrete_motion_single_step() {
        let mut rng = StreamRng::new(7, 0);
        let c = discrete_motion_sup(1, 0.0, 20_000, &mut rng).unwrap();
        let se = (0.25f64 / 20_000.0).sqrt();
        assert!((c.estimate() - 0.5).abs() < 4.0 * se, "{}", c.estimate());
    }

    #[test]
    fn discrete_motion_grows_with_horizon() {
        let mut rng = StreamRng::new(8, 0);
        let trials = 20_000;
        let p1 = discrete_motion_sup(1, 1.0, trials, &mut rng)
            .unwrap()
            .ci95()
            .unwrap();
        let p10 = discrete_motion_sup(10, 1.0, trials, &mut rng)
            .unwrap()
            .ci95()
            .unwrap();
        let p100 = discrete_motion_sup(100, 1.0, trials, &mut rng)
            .unwrap()
            .ci95()
            .unwrap();
        assert!(p10.lo > p1.hi, "10 vs 1: [{},{}] vs [{},{}]", p10.lo, p10.hi, p1.lo, p1.hi);
        assert!(p100.lo > p10.hi);
    }

    #[test]
    fn discrete_motion_covariance() {
        // E[(B_i/sqrt(i)) (B_j/sqrt(j))] = sqrt(i/j) at (2, 8)
        let mut rng = StreamRng::new(9, 0);
        let mut prod = OnlineStats::default();
        for _ in 0..30_000 {
            let mut b = 0.0;
            let mut b2 = 0.0;
            for k in 1..=8 {
                b += rng.standard_normal();
                if k == 2 {
                    b2 = b;
                }
            }
            prod.add((b2 / 2.0f64.sqrt()) * (b / 8.0f64.sqrt()));
        }
        let target = (2.0f64 / 8.0).sqrt();
        assert!(
            (prod.mean() - target).abs() < 4.0 * prod.se_mean(),
            "cov {} target {target}",
            prod.mean()
        );
    }

    #[test]
    fn lil_config_validation() {
        assert!(LilConfig::new(1.0, 20.0, 9.0).is_err()); // rho = 2 exactly
        assert!(LilConfig::new(1.0, 20.0, 16.0).is_ok());
        assert!(LilConfig::new(0.0, 20.0, 16.0).is_err());
        assert!(LilConfig::new(1.0, 2.0, 16.0).is_err()); // A < e
        let cfg = LilConfig::new(1.0, 150.0, 10.0).unwrap();
        assert_eq!(cfg.n_events(), 1);
        let small = LilConfig::new(1.0, 20.0, 16.0).unwrap();
        assert_eq!(small.n_events(), 0); // clamped, floor degenerates
    }

    #[test]
    fn tail_constant_monotone_region() {
        // for rho = 1.5 the ratio increases on [2, inf): the infimum is the
        // left endpoint value
        let c = tail_comparison_constant(1.5).unwrap();
        let at2 = gaussian_tail_lower(2.0) * (4.0f64 / 1.5).exp();
        assert_relative_eq!(c, at2, epsilon = 1e-6);
    }

    #[test]
    fn tail_constant_interior_minimum_region() {
        // for rho = 1.95 the ratio dips below its x=2 value before diverging
        let c = tail_comparison_constant(1.95).unwrap();
        let at2 = gaussian_tail_lower(2.0) * (4.0f64 / 1.95).exp();
        assert!(c < at2 - 1e-4, "infimum {c} not interior (x=2 value {at2})");
    }

    #[test]
    fn floor_increases_with_event_count() {
        let base = LilConfig::new(1.0, 150.0, 10.0).unwrap();
        let floor1 = lil_analytic_floor(&base).unwrap();
        let mut more = base;
        more.n_events = 3;
        let floor3 = lil_analytic_floor(&more).unwrap();
        assert!(floor3 > floor1 && floor1 > 0.0);
    }

    #[test]
    fn floor_is_degenerate_without_scales() {
        let cfg = LilConfig::new(1.0, 20.085, 16.0).unwrap(); // A = e^3
        assert_eq!(cfg.n_events(), 0);
        assert_eq!(lil_analytic_floor(&cfg).unwrap(), 0.0);
    }

    #[test]
    fn lil_probability_near_eta_two_is_at_least_half() {
        // threshold ~ 0: a positive value near t=1/2 suffices, so the
        // probability is at least P(beta_{1/2} > 0) = 1/2
        let cfg = LilConfig::new(1.999, std::f64::consts::E, 4.0).unwrap();
        let mut rng = StreamRng::new(10, 0);
        let run = lil_probability(&cfg, 128, 4000, &mut rng).unwrap();
        assert!(run.threshold < 1e-8);
        assert!(run.count.estimate() > 0.45, "{}", run.count.estimate());
    }

    #[test]
    fn lil_probability_eta_one_positive() {
        let a = std::f64::consts::E.powi(3);
        let cfg = LilConfig::new(1.0, a, 16.0).unwrap();
        let mut rng = StreamRng::new(11, 0);
        let run = lil_probability(&cfg, 512, 4000, &mut rng).unwrap();
        let ci = run.count.ci95().unwrap();
        assert!(ci.lo > 0.05, "lower CI {} too small", ci.lo);
        assert!(run.count.estimate() >= run.floor);
    }

    #[test]
    fn lil_floor_nontrivial_case_below_estimate() {
        // A = e^5 admits one geometric scale at alpha = 10, so the floor is
        // positive and the Monte Carlo estimate must clear it
        let a = std::f64::consts::E.powi(5);
        let cfg = LilConfig::new(1.0, a, 10.0).unwrap();
        assert_eq!(cfg.n_events(), 1);
        let floor = lil_analytic_floor(&cfg).unwrap();
        assert!(floor > 0.005, "floor {floor}");
        let mut rng = StreamRng::new(12, 0);
        let run = lil_probability(&cfg, 512, 4000, &mut rng).unwrap();
        let ci = run.count.ci95().unwrap();
        assert!(ci.lo > floor, "estimate CI [{}, {}] vs floor {floor}", ci.lo, ci.hi);
    }
}
