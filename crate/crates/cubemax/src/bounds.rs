//! Analytic constant tracking: the structured-bound objective and its
//! closed-form derivative, the explicit lower-bound chain with its two
//! printed remainder variants, the minimal dimension ratio, the main
//! theorem's constant pipeline with vacuity detection, and the sample-based
//! estimators for the weak (1,1) constant.

use serde::{Deserialize, Serialize};

use crate::empirical::VolumeEstimate;
use crate::error::{Error, Result};
use crate::lattice::LogRatio;
use crate::stats::BinomialCount;

/// `phi(x) = (1+x) log(1+x)`, the convex comparison function behind the
/// structured bound; satisfies `phi(x) >= x + x^2/2 - x^3/6` on `x > -1`.
pub fn phi(x: f64) -> Result<f64> {
    if !(x > -1.0) {
        return Err(Error::parameter("phi needs x > -1"));
    }
    Ok((1.0 + x) * x.ln_1p())
}

/// Parameters of the explicit bound: level `K`, centering width `t`,
/// dimension `n`, and the derived ratio `D = n t(1-t) / K^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma2Params {
    pub k: f64,
    pub t: f64,
    pub n: u64,
    pub d: f64,
}

impl Lemma2Params {
    pub fn new(k: f64, t: f64, n: u64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::parameter("lemma-2 params need K > 0"));
        }
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::parameter("lemma-2 params need t in (0,1)"));
        }
        if n == 0 {
            return Err(Error::parameter("lemma-2 params need n >= 1"));
        }
        let d = n as f64 * t * (1.0 - t) / (k * k);
        Ok(Lemma2Params { k, t, n, d })
    }
}

/// Interior maximizer of the objective: `s_0 = (sqrt(D) + 1 - t)/2`.
pub fn s_zero(p: &Lemma2Params) -> f64 {
    (p.d.sqrt() + 1.0 - p.t) / 2.0
}

fn f_brackets(s: f64, p: &Lemma2Params) -> Result<(f64, f64)> {
    if !(s > 0.5) {
        return Err(Error::parameter("objective needs s > 1/2"));
    }
    let d = p.d;
    let t = p.t;
    let sqrt_d = d.sqrt();
    let a = d / (1.0 - t) + sqrt_d;
    let b = d / t - sqrt_d;
    let edge = 2.0 * s - 1.0 + t;
    // two algebraically identical printed forms; computed in K^2 units so
    // their relative gap does not depend on K
    let form_one = a * (2.0 * s).ln() + b * (2.0 * s - 1.0).ln() - (d / (t * (1.0 - t))) * edge.ln();
    let form_two = a * ((2.0 * s) / edge).ln() + b * ((2.0 * s - 1.0) / edge).ln();
    Ok((form_one, form_two))
}

/// Both printed forms of the objective `F(s)`, for cross-checking.
pub fn f_value_forms(s: f64, p: &Lemma2Params) -> Result<(f64, f64)> {
    let (one, two) = f_brackets(s, p)?;
    Ok((p.k * p.k * one, p.k * p.k * two))
}

/// The objective `F(s)`: the log density ratio of the structured cube at
/// integer parameter `s`, expressed through `(K, t, D)`. Evaluates the
/// ratio-grouped form; the expanded form agrees to a relative `1e-10`.
pub fn f_value(s: f64, p: &Lemma2Params) -> Result<f64> {
    let (one, two) = f_brackets(s, p)?;
    debug_assert!(
        (one - two).abs() <= 1e-10 * one.abs().max(two.abs()).max(1e-12),
        "objective forms disagree: {one} vs {two}"
    );
    Ok(p.k * p.k * two)
}

/// Closed form of `F'(s) = K^2 sqrt(D) (sqrt(D) + 1 - t - 2s) /
/// (s (2s-1)(2s-1+t))`.
pub fn f_prime(s: f64, p: &Lemma2Params) -> Result<f64> {
    if !(s > 0.5) {
        return Err(Error::parameter("objective needs s > 1/2"));
    }
    let sqrt_d = p.d.sqrt();
    Ok(p.k * p.k * sqrt_d * (sqrt_d + 1.0 - p.t - 2.0 * s)
        / (s * (2.0 * s - 1.0) * (2.0 * s - 1.0 + p.t)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lemma2Status {
    Applicable,
    /// The explicit chain needs `D > 9`; below that the remainder term
    /// diverges and the bound says nothing.
    NotApplicable,
}

/// The two printed variants of the explicit lower bound on `log M` over the
/// excess-centered set: base `K^2/2 - K^2/(6 sqrt(D))` minus a mean-value
/// remainder that appears once as `4K^2 sqrt(D)/(sqrt(D)-3)^3` and once as
/// `4K^2 D/(sqrt(D)-3)^3`. The `D` variant subtracts more, so it is the
/// conservative right-hand side and the one downstream consumers use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma2Bound {
    pub rhs_paper: f64,
    pub rhs_conservative: f64,
    pub status: Lemma2Status,
}

pub fn lemma2_bound(p: &Lemma2Params) -> Lemma2Bound {
    let k2 = p.k * p.k;
    let sqrt_d = p.d.sqrt();
    if p.d <= 9.0 {
        return Lemma2Bound {
            rhs_paper: f64::NEG_INFINITY,
            rhs_conservative: f64::NEG_INFINITY,
            status: Lemma2Status::NotApplicable,
        };
    }
    let base = k2 / 2.0 - k2 / (6.0 * sqrt_d);
    let cube = (sqrt_d - 3.0).powi(3);
    Lemma2Bound {
        rhs_paper: base - 4.0 * k2 * sqrt_d / cube,
        rhs_conservative: base - 4.0 * k2 * p.d / cube,
        status: Lemma2Status::Applicable,
    }
}

/// Conservative right-hand side divided by `K^2`; a function of `D` alone.
fn rhs_conservative_unit(d: f64) -> f64 {
    let sqrt_d = d.sqrt();
    0.5 - 1.0 / (6.0 * sqrt_d) - 4.0 * d / (sqrt_d - 3.0).powi(3)
}

/// Smallest `D > 9` at which the conservative bound clears `K^2/(2+eta)`,
/// found by bisection to 1e-6 (the inequality is `K`-independent after
/// dividing by `K^2`, and the unit right-hand side is strictly increasing
/// in `D`).
pub fn min_dimension(eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 2.0) {
        return Err(Error::parameter("min_dimension needs eta in (0,2)"));
    }
    let target = 1.0 / (2.0 + eta);
    let mut lo = 9.0 + 1e-9;
    let mut hi = 16.0;
    while rhs_conservative_unit(hi) < target {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::CheckFailed(
                "min_dimension bisection failed to bracket".into(),
            ));
        }
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if rhs_conservative_unit(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Everything the main-theorem pipeline derives for one `(n, eta, c_eta)`:
/// the window parameter, the coupling slack, the resulting level `K`, the
/// applicability checks, and the final bound with its vacuity flag. At desk
/// scale the correction term dwarfs the iterated-logarithm threshold, so
/// `vacuous` is expected to be true; the pipeline computes honestly and
/// reports zero rather than clamping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremParams {
    pub n: u64,
    pub eta: f64,
    pub c_eta: f64,
    pub eps: f64,
    /// The window parameter must stay within `(0, 1/e]` for the
    /// iterated-logarithm lemma to apply; small `n` violate this.
    pub eps_within_range: bool,
    pub x: f64,
    /// `sqrt((2-eta) log log (1/eps))`, absent when `eps > 1/e`.
    pub threshold: Option<f64>,
    /// `(12 log n + x) / sqrt(n eps (1-eps))`.
    pub correction: f64,
    /// `threshold - correction`, absent when the threshold is undefined.
    pub k: Option<f64>,
    pub min_d: f64,
    pub lemma2_ok: bool,
    pub vacuous: bool,
    pub bound: f64,
    /// The printed asymptotic exponent `(2-2 eta)/(2+eta)`.
    pub exponent: f64,
}

/// Run the constant pipeline: `eps = log^2 n / n`, minimal `x` with
/// `2 exp(-x/6) < c_eta/2` (strictness as `<= c_eta/2 - 1e-12`), the level
/// `K`, the dimension applicability check, and the bound
/// `(c_eta/2) exp(K^2/(2+eta))`, zeroed and flagged when any step fails.
pub fn theorem_pipeline(
    n: u64,
    eta: f64,
    c_eta: f64,
    x_override: Option<f64>,
) -> Result<TheoremParams> {
    if n < 3 {
        return Err(Error::parameter("pipeline needs n >= 3"));
    }
    if !(eta > 0.0 && eta < 2.0) {
        return Err(Error::parameter("pipeline needs eta in (0,2)"));
    }
    if !(c_eta > 1e-10 && c_eta <= 1.0) {
        return Err(Error::parameter("pipeline needs c_eta in (0,1]"));
    }
    if let Some(x) = x_override {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::parameter("x override must be positive"));
        }
    }
    let nf = n as f64;
    let log_n = nf.ln();
    let eps = log_n * log_n / nf;
    let eps_within_range = eps > 0.0 && eps <= (-1.0f64).exp();
    let x = x_override.unwrap_or_else(|| -6.0 * ((c_eta / 2.0 - 1e-12) / 2.0).ln());
    let correction = (12.0 * log_n + x) / (nf * eps * (1.0 - eps)).sqrt();
    let log_inv_eps = (1.0 / eps).ln();
    let threshold = if eps_within_range && log_inv_eps >= 1.0 {
        Some(((2.0 - eta) * log_inv_eps.ln()).sqrt())
    } else {
        None
    };
    let k = threshold.map(|thr| thr - correction);
    let min_d = min_dimension(eta)?;
    let lemma2_ok = match k {
        Some(k) if k > 0.0 => nf >= min_d * k * k / (eps * (1.0 - eps)),
        _ => false,
    };
    let vacuous = !eps_within_range || k.map_or(true, |k| k <= 0.0) || !lemma2_ok;
    let bound = if vacuous {
        0.0
    } else {
        let k = k.unwrap();
        (c_eta / 2.0) * (k * k / (2.0 + eta)).exp()
    };
    Ok(TheoremParams {
        n,
        eta,
        c_eta,
        eps,
        eps_within_range,
        x,
        threshold,
        correction,
        k,
        min_d,
        lemma2_ok,
        vacuous,
        bound,
        exponent: (2.0 - 2.0 * eta) / (2.0 + eta),
    })
}

/// Per-level row of the sample-based estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaLevelRow {
    pub level: f64,
    pub exceed: BinomialCount,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// `level * p_hat`.
    pub point_bound: f64,
    /// `level * ci_lo`: a lower bound on the weak (1,1) constant holding
    /// with the interval's confidence.
    pub certified_bound: f64,
}

/// Sample-based lower bound report on the weak (1,1) constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSampleBound {
    pub levels: Vec<ThetaLevelRow>,
    pub best_point: f64,
    pub best_certified: f64,
}

/// Turn evaluated log-ratios of uniform samples into level-exceedance
/// fractions: for each level `L`, `L * vol{M > L}` is a lower bound on the
/// weak (1,1) constant, so `max_L L * (CI lower bound of the fraction)` is
/// a certified-with-confidence bound and `max_L L * p_hat` the point
/// estimate. Infinite log-ratios (lattice points) exceed every level.
pub fn theta_lower_from_samples(
    log_ratios: &[LogRatio],
    levels: &[f64],
) -> Result<ThetaSampleBound> {
    if log_ratios.is_empty() {
        return Err(Error::parameter("theta bound needs at least one sample"));
    }
    if levels.is_empty() {
        return Err(Error::parameter("theta bound needs at least one level"));
    }
    let trials = log_ratios.len() as u64;
    let mut rows = Vec::with_capacity(levels.len());
    for &level in levels {
        if !(level > 1.0) || !level.is_finite() {
            return Err(Error::parameter("theta bound levels must be > 1"));
        }
        let log_level = level.ln();
        let exceed = log_ratios.iter().filter(|r| r.exceeds_log(log_level)).count() as u64;
        let count = BinomialCount::new(exceed, trials);
        let ci = count.ci95()?;
        rows.push(ThetaLevelRow {
            level,
            exceed: count,
            p_hat: count.estimate(),
            ci_lo: ci.lo,
            ci_hi: ci.hi,
            point_bound: level * count.estimate(),
            certified_bound: level * ci.lo,
        });
    }
    let best_point = rows.iter().map(|r| r.point_bound).fold(0.0, f64::max);
    let best_certified = rows.iter().map(|r| r.certified_bound).fold(0.0, f64::max);
    Ok(ThetaSampleBound {
        levels: rows,
        best_point,
        best_certified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CombineStatus {
    Ok,
    /// The dimension condition `n >= D(eta) K^2 / (t(1-t))` fails somewhere
    /// in the window; the structured route says nothing there.
    DimensionTooSmall,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombinedBound {
    pub status: CombineStatus,
    pub required_n: f64,
    /// `volume estimate * exp(K^2/(2+eta))`, zero when refused.
    pub bound_point: f64,
    /// Same with the CI lower endpoint of the volume.
    pub bound_certified: f64,
}

/// Combine an estimated excess-set union volume with the structured level
/// `exp(K^2/(2+eta))` into a lower bound on the weak (1,1) constant. The
/// dimension condition is checked at the window endpoints, where `t(1-t)`
/// is smallest.
pub fn combine_structured_bound(
    volume: &VolumeEstimate,
    k: f64,
    eta: f64,
    n: u64,
    t_window: (f64, f64),
) -> Result<CombinedBound> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::parameter("combine needs K >= 0"));
    }
    let (t_lo, t_hi) = t_window;
    if !(t_lo > 0.0 && t_lo <= t_hi && t_hi < 1.0) {
        return Err(Error::parameter("combine needs 0 < t_lo <= t_hi < 1"));
    }
    let min_d = min_dimension(eta)?;
    let worst = (t_lo * (1.0 - t_lo)).min(t_hi * (1.0 - t_hi));
    let required_n = min_d * k * k / worst;
    if (n as f64) < required_n {
        return Ok(CombinedBound {
            status: CombineStatus::DimensionTooSmall,
            required_n,
            bound_point: 0.0,
            bound_certified: 0.0,
        });
    }
    let level = (k * k / (2.0 + eta)).exp();
    Ok(CombinedBound {
        status: CombineStatus::Ok,
        required_n,
        bound_point: volume.estimate() * level,
        bound_certified: volume.ci.lo * level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0.0).unwrap(), 0.0);
        assert_relative_eq!(
            phi(std::f64::consts::E - 1.0).unwrap(),
            std::f64::consts::E,
            epsilon = 1e-12
        );
        assert!(phi(-1.0).is_err());
    }

    #[test]
    fn phi_cubic_inequality_sweep() {
        let mut x = -1.0 + 1e-6;
        while x <= 10.0 {
            let lhs = phi(x).unwrap();
            let rhs = x + x * x / 2.0 - x * x * x / 6.0;
            assert!(lhs >= rhs - 1e-12, "phi inequality failed at x={x}");
            x += 1e-4;
        }
    }

    #[test]
    fn objective_forms_agree() {
        // D = 16 from (K=1, t=0.5, n=64)
        let p = Lemma2Params::new(1.0, 0.5, 64).unwrap();
        assert_relative_eq!(p.d, 16.0);
        let (one, two) = f_value_forms(2.0, &p).unwrap();
        assert!((one - two).abs() <= 1e-10 * one.abs().max(two.abs()));
    }

    #[test]
    fn derivative_vanishes_at_interior_maximizer() {
        for &(k, t, n) in &[(1.0, 0.5, 64u64), (2.0, 0.3, 1600), (0.5, 0.7, 500)] {
            let p = Lemma2Params::new(k, t, n).unwrap();
            let s0 = s_zero(&p);
            let fp = f_prime(s0, &p).unwrap();
            assert!(fp.abs() <= 1e-10 * k * k, "F'(s0) = {fp}");
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let p = Lemma2Params::new(1.0, 0.5, 64).unwrap();
        let h = 1e-5;
        for &s in &[1.0, 1.7, 2.0, 3.4, 6.0] {
            let fd = (f_value(s + h, &p).unwrap() - f_value(s - h, &p).unwrap()) / (2.0 * h);
            let exact = f_prime(s, &p).unwrap();
            assert_relative_eq!(fd, exact, max_relative = 1e-6);
        }
    }

    #[test]
    fn bound_tends_to_half_k_squared() {
        let k = 2.0;
        // huge D: remainders vanish, both variants approach K^2/2
        let p = Lemma2Params::new(k, 0.5, 4_000_000_000_000).unwrap();
        let b = lemma2_bound(&p);
        assert_eq!(b.status, Lemma2Status::Applicable);
        assert_relative_eq!(b.rhs_paper, k * k / 2.0, max_relative = 1e-3);
        assert_relative_eq!(b.rhs_conservative, k * k / 2.0, max_relative = 1e-3);
        assert!(b.rhs_conservative <= b.rhs_paper);
    }

    #[test]
    fn bound_not_applicable_at_small_ratio() {
        // D = 9 exactly
        let p = Lemma2Params::new(1.0, 0.5, 36).unwrap();
        assert_relative_eq!(p.d, 9.0);
        assert_eq!(lemma2_bound(&p).status, Lemma2Status::NotApplicable);
    }

    #[test]
    fn objective_at_floor_s0_clears_conservative_bound() {
        // (K=2, t=0.5, D=100) -> n = 1600
        let p = Lemma2Params::new(2.0, 0.5, 1600).unwrap();
        assert_relative_eq!(p.d, 100.0);
        let b = lemma2_bound(&p);
        let s = s_zero(&p).floor();
        let f = f_value(s, &p).unwrap();
        assert!(f >= b.rhs_conservative, "{f} < {}", b.rhs_conservative);
    }

    #[test]
    fn min_dimension_properties() {
        let d_half = min_dimension(0.5).unwrap();
        let d_one = min_dimension(1.0).unwrap();
        let d_heavy = min_dimension(1.5).unwrap();
        assert!(d_half > d_one && d_one > d_heavy, "{d_half} {d_one} {d_heavy}");
        for &(eta, d) in &[(0.5, d_half), (1.0, d_one), (1.5, d_heavy)] {
            let residual = rhs_conservative_unit(d) - 1.0 / (2.0 + eta);
            assert!(residual.abs() < 1e-6, "residual {residual} at eta={eta}");
            assert!(rhs_conservative_unit(2.0 * d) > 1.0 / (2.0 + eta));
        }
    }

    #[test]
    fn pipeline_is_vacuous_at_desk_scale() {
        let p = theorem_pipeline(1_000_000, 0.5, 0.1, None).unwrap();
        assert!(p.vacuous);
        assert_eq!(p.bound, 0.0);
        // the correction term is about 12 + x/log n and dwarfs the threshold
        assert!(p.correction > 12.0);
        assert!(p.threshold.unwrap() < p.correction);
        assert!(p.k.unwrap() < 0.0);
    }

    #[test]
    fn pipeline_recomputation_is_exact() {
        let a = theorem_pipeline(100_000, 0.5, 0.2, None).unwrap();
        let b = theorem_pipeline(100_000, 0.5, 0.2, None).unwrap();
        assert_eq!(a, b);
        let k = a.threshold.unwrap() - a.correction;
        assert!((k - a.k.unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn pipeline_exponent_limit() {
        // printed exponent approaches 1 as eta shrinks
        let mut prev = 0.0;
        for &eta in &[0.2, 0.1, 0.05, 0.01] {
            let p = theorem_pipeline(1000, eta, 0.5, None).unwrap();
            assert!(p.exponent > prev && p.exponent < 1.0);
            prev = p.exponent;
        }
        assert_relative_eq!(prev, 0.9850746268656717, epsilon = 1e-12);
        let q = theorem_pipeline(1000, 1.0, 0.5, None).unwrap();
        assert_relative_eq!(q.exponent, 0.0);
    }

    #[test]
    fn pipeline_monotone_in_c_eta() {
        let mut prev = -1.0;
        for &c in &[0.01, 0.1, 0.5, 1.0] {
            let p = theorem_pipeline(100_000, 0.5, c, Some(25.0)).unwrap();
            assert!(p.bound >= prev);
            prev = p.bound;
        }
    }

    #[test]
    fn pipeline_small_n_eps_out_of_range() {
        let p = theorem_pipeline(10, 0.5, 0.1, None).unwrap();
        assert!(!p.eps_within_range);
        assert!(p.vacuous);
        assert!(p.threshold.is_none());
    }

    #[test]
    fn theta_from_samples_levels() {
        let ratios = vec![
            LogRatio::Finite(0.1),
            LogRatio::Finite(0.9),
            LogRatio::Infinite,
            LogRatio::Finite(2.0),
        ];
        let out = theta_lower_from_samples(&ratios, &[2.0, 5.0]).unwrap();
        // exceed log 2 = 0.693: 0.9, inf, 2.0 -> 3 of 4
        assert_eq!(out.levels[0].exceed, BinomialCount::new(3, 4));
        // exceed log 5 = 1.609: inf, 2.0 -> 2 of 4
        assert_eq!(out.levels[1].exceed, BinomialCount::new(2, 4));
        assert_relative_eq!(out.best_point, 5.0 * 0.5);
        assert!(out.best_certified <= out.best_point);
    }

    #[test]
    fn theta_from_samples_bounds_and_degenerate_cases() {
        let ratios = vec![LogRatio::Finite(0.0); 50];
        let out = theta_lower_from_samples(&ratios, &[2.0, 3.0]).unwrap();
        assert_eq!(out.best_point, 0.0);
        assert_eq!(out.best_certified, 0.0);

        let ratios = vec![LogRatio::Infinite; 50];
        let out = theta_lower_from_samples(&ratios, &[2.0, 3.0]).unwrap();
        assert!(out.best_point <= 3.0);
        assert_eq!(out.best_point, 3.0);

        assert!(theta_lower_from_samples(&[], &[2.0]).is_err());
        assert!(theta_lower_from_samples(&ratios, &[1.0]).is_err());
    }

    #[test]
    fn theta_pooling_is_count_addition() {
        let a = vec![LogRatio::Finite(1.0); 30];
        let b = vec![LogRatio::Finite(0.0); 70];
        let pooled: Vec<LogRatio> = a.iter().chain(b.iter()).copied().collect();
        let out = theta_lower_from_samples(&pooled, &[2.0]).unwrap();
        let part_a = theta_lower_from_samples(&a, &[2.0]).unwrap();
        let part_b = theta_lower_from_samples(&b, &[2.0]).unwrap();
        let merged = part_a.levels[0].exceed.merge(part_b.levels[0].exceed);
        assert_eq!(out.levels[0].exceed, merged);
        assert_relative_eq!(out.levels[0].p_hat, merged.estimate());
    }

    #[test]
    fn combine_basic_cases() {
        let vol =
            VolumeEstimate::from_count(BinomialCount::new(0, 100)).unwrap();
        let c = combine_structured_bound(&vol, 0.5, 1.0, 100_000, (0.4, 0.6)).unwrap();
        assert_eq!(c.status, CombineStatus::Ok);
        assert_eq!(c.bound_point, 0.0);

        // K = 0: the level is 1, the bound is the volume itself
        let vol = VolumeEstimate::from_count(BinomialCount::new(50, 100)).unwrap();
        let c = combine_structured_bound(&vol, 0.0, 1.0, 1000, (0.4, 0.6)).unwrap();
        assert_relative_eq!(c.bound_point, 0.5);

        // dimension refusal
        let c = combine_structured_bound(&vol, 2.0, 1.0, 100, (0.1, 0.9)).unwrap();
        assert_eq!(c.status, CombineStatus::DimensionTooSmall);
        assert_eq!(c.bound_point, 0.0);
        assert!(c.required_n > 100.0);
    }
}
