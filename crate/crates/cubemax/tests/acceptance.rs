//! Acceptance suite: one test per criterion, each ending in an explicit
//! `ACCEPTANCE <k>: PASS` line (run with `--nocapture` to see them).
//!
//! Stochastic criteria run once behind shared lazily-initialized cells with
//! a pinned seed and a declared worker count; the determinism criterion
//! recomputes every one of them from scratch and demands byte-identical
//! serialized results.

use std::sync::LazyLock;

use cubemax::bounds::{theorem_pipeline, ThetaSampleBound};
use cubemax::experiments::report::{CovarianceRow, DonskerResults, KsCheck, LilRow};
use cubemax::experiments::run::{
    bridge_covariance, construction_ks, donsker_diagnostic, lemma2_verification, lil_grid,
    run_pipeline, theta_lower_core,
};
use cubemax::experiments::{config::ExperimentConfig, report};
use cubemax::lattice::{maximal_function, RadiusCapPolicy, SamplePoint};
use cubemax::oracle;
use cubemax::rng::StreamRng;
use rayon::prelude::*;
use serde::Serialize;

const SEED: u64 = 42;
const WORKERS: usize = 2;

fn canon<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

// ---------------------------------------------------------------------------
// shared stochastic runs
// ---------------------------------------------------------------------------

fn compute_oracle_points() -> Vec<(usize, Vec<f64>)> {
    let mut points = Vec::new();
    for dim in 1..=3usize {
        let mut rng = StreamRng::new(SEED, 1000 + dim as u64);
        for _ in 0..100 {
            points.push((dim, (0..dim).map(|_| rng.uniform()).collect()));
        }
    }
    points
}

fn compute_maximal_values(points: &[(usize, Vec<f64>)]) -> Vec<f64> {
    points
        .iter()
        .map(|(dim, coords)| {
            let x = SamplePoint::new(coords.clone()).unwrap();
            maximal_function(&x, &RadiusCapPolicy::default())
                .as_f64()
                .min(f64::MAX)
        })
        .collect()
}

fn compute_theta_trend() -> Vec<(u64, ThetaSampleBound)> {
    [16u64, 64, 256, 1024]
        .iter()
        .map(|&n| {
            let (theta, _) = theta_lower_core(
                SEED,
                WORKERS,
                n as usize,
                10_000,
                &RadiusCapPolicy::default(),
                &[2.0],
            )
            .unwrap();
            (n, theta)
        })
        .collect()
}

fn compute_theta_1d() -> ThetaSampleBound {
    theta_lower_core(SEED, WORKERS, 1, 100_000, &RadiusCapPolicy::default(), &[2.0])
        .unwrap()
        .0
}

fn compute_covariance() -> Vec<CovarianceRow> {
    bridge_covariance(SEED, WORKERS, 100_000)
}

fn compute_construction_ks() -> KsCheck {
    construction_ks(SEED, WORKERS, 10_000, 0.05, 2048).unwrap()
}

fn compute_lil() -> Vec<LilRow> {
    lil_grid(SEED, WORKERS, 10_000, 1.0, 2048).unwrap()
}

fn compute_donsker() -> DonskerResults {
    donsker_diagnostic(SEED, WORKERS, 10_000, 10_000, 0.05, 8192).unwrap()
}

static ORACLE_POINTS: LazyLock<Vec<(usize, Vec<f64>)>> = LazyLock::new(compute_oracle_points);
static MAXIMAL_VALUES: LazyLock<Vec<f64>> =
    LazyLock::new(|| compute_maximal_values(&ORACLE_POINTS));
static THETA_TREND: LazyLock<Vec<(u64, ThetaSampleBound)>> = LazyLock::new(compute_theta_trend);
static THETA_1D: LazyLock<ThetaSampleBound> = LazyLock::new(compute_theta_1d);
static COVARIANCE: LazyLock<Vec<CovarianceRow>> = LazyLock::new(compute_covariance);
static CONSTRUCTION_KS: LazyLock<KsCheck> = LazyLock::new(compute_construction_ks);
static LIL: LazyLock<Vec<LilRow>> = LazyLock::new(compute_lil);
static DONSKER: LazyLock<DonskerResults> = LazyLock::new(compute_donsker);

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_oracle_equivalence() {
    let points = &*ORACLE_POINTS;
    let values = &*MAXIMAL_VALUES;
    let worst: f64 = points
        .par_iter()
        .zip(values.par_iter())
        .map(|((dim, coords), &got)| {
            let r_max = RadiusCapPolicy::default().effective_cap(*dim);
            let want = oracle::maximal_dense_sweep(coords, r_max, 1e-6);
            let diff = (got - want).abs();
            assert!(
                diff <= 1e-9,
                "dim {dim}: impl {got} vs dense sweep {want} (diff {diff:.3e})"
            );
            diff
        })
        .reduce(|| 0.0, f64::max);
    println!(
        "ACCEPTANCE 1: PASS — 300 random points, n in 1..=3, max |impl - sweep| = {worst:.3e} <= 1e-9"
    );
}

#[test]
fn criterion_2_volume_trend() {
    let rows = &*THETA_TREND;
    let level_rows: Vec<_> = rows.iter().map(|(n, t)| (*n, t.levels[0].clone())).collect();
    for (n, row) in &level_rows {
        println!(
            "  n={n}: p_hat={:.5} ci=[{:.5},{:.5}]",
            row.p_hat, row.ci_lo, row.ci_hi
        );
    }
    let mut explanations = Vec::new();
    for pair in level_rows.windows(2) {
        let (n_a, a) = (&pair[0].0, &pair[0].1);
        let (n_b, b) = (&pair[1].0, &pair[1].1);
        assert!(
            b.p_hat > a.p_hat,
            "point estimates must increase: n={n_a} {} vs n={n_b} {}",
            a.p_hat,
            b.p_hat
        );
        let separated = b.ci_lo > a.ci_hi;
        // near the limit the two intervals both hug 1 and cannot separate
        // at this sample size; that is the limit being reached, not a trend
        // violation, and the report records it with the intervals
        let saturated = a.ci_hi >= 0.999 && b.ci_hi >= 0.999;
        if !separated {
            assert!(
                saturated,
                "pair n={n_a}/{n_b} neither CI-separated nor saturated"
            );
            explanations.push(format!(
                "pair n={n_a}/{n_b}: intervals [{:.5},{:.5}] and [{:.5},{:.5}] overlap within \
                 {:.1e} of the limit 1 (10^4 samples cannot separate them)",
                a.ci_lo, a.ci_hi, b.ci_lo, b.ci_hi,
                1.0 - a.ci_hi.min(b.ci_hi)
            ));
        }
    }
    let last = &level_rows.last().unwrap().1;
    assert!(
        last.p_hat > 0.9,
        "volume at n=1024 is {} <= 0.9",
        last.p_hat
    );
    for e in &explanations {
        println!("  note: {e}");
    }
    println!(
        "ACCEPTANCE 2: PASS — exceedance volume at L=2 increases over n in {{16,64,256,1024}} \
         and reaches {:.4} > 0.9 at n=1024 ({} saturated pair(s) explained)",
        last.p_hat,
        explanations.len()
    );
}

#[test]
fn criterion_3_certified_one_dimensional_bound() {
    let theta = &*THETA_1D;
    let certified = theta.best_certified;
    assert!(
        (0.95..=1.0).contains(&certified),
        "certified bound {certified} outside [0.95, 1.0]"
    );
    println!(
        "ACCEPTANCE 3: PASS — n=1, 10^5 samples, L=2: certified bound {certified:.6} in [0.95, 1.0] \
         (true value 1, exceedance volume 1/2)"
    );
}

#[test]
fn criterion_4_lemma2_grid() {
    let results = lemma2_verification(&[0.5, 1.0], 1.0).unwrap();
    assert!(results.phi_sweep_pass, "phi inequality sweep failed");
    assert!(results.guard_not_applicable_ok, "D<=9 guard failed");
    for row in &results.rows {
        assert!(
            row.all_pass(),
            "grid row failed: eta={} K={} t={}: {row:?}",
            row.eta,
            row.k,
            row.t
        );
    }
    for r in &results.min_dimension_rows {
        assert!(r.pass, "min-dimension residual failed at eta={}", r.eta);
    }
    assert!(results.all_pass);
    println!(
        "ACCEPTANCE 4: PASS — {} grid rows (structured >= conservative bound, mean-value step, \
         maximizer checks, dual forms), phi sweep, residuals, guard",
        results.rows.len()
    );
}

#[test]
fn criterion_5_bridge_statistics() {
    let cov = &*COVARIANCE;
    for row in cov {
        assert!(
            row.pass,
            "covariance at (t,u)=({},{}) off by more than 4 SE: sample {} expected {}",
            row.t, row.u, row.sample, row.expected
        );
    }
    let ks = &*CONSTRUCTION_KS;
    assert!(
        ks.pass,
        "two-construction KS p-value {} below 0.01",
        ks.ks.p_value
    );
    println!(
        "ACCEPTANCE 5: PASS — {} covariance entries within 4 SE over 10^5 paths; \
         two-construction KS p = {:.3} >= 0.01 with 10^4 paths each",
        cov.len(),
        ks.ks.p_value
    );
}

#[test]
fn criterion_6_lil_experiment() {
    let rows = &*LIL;
    assert!(rows.len() >= 3);
    for row in rows {
        assert!(
            row.estimate >= row.floor,
            "A={}: estimate {} below analytic floor {}",
            row.a_big,
            row.estimate,
            row.floor
        );
        assert!(
            row.ci_lo > 0.0,
            "A={}: lower CI {} not above 0",
            row.a_big,
            row.ci_lo
        );
    }
    // the A = e^5 row has a scale to work with, so its floor is positive
    // and the comparison is non-trivial
    let nontrivial = rows.iter().find(|r| r.n_events >= 1).unwrap();
    assert!(nontrivial.floor > 0.0 && nontrivial.estimate >= nontrivial.floor);
    let min_lo = rows.iter().map(|r| r.ci_lo).fold(1.0, f64::min);
    println!(
        "ACCEPTANCE 6: PASS — eta=1, A in {{e^2..e^5}}: all estimates >= analytic floors, \
         lower CIs >= {min_lo:.3} > 0; non-degenerate floor {:.4} cleared by estimate {:.4}",
        nontrivial.floor, nontrivial.estimate
    );
}

#[test]
fn criterion_7_donsker_diagnostic() {
    let d = &*DONSKER;
    assert!(
        d.ks_statistic <= d.distance_threshold,
        "KS distance {} above {}",
        d.ks_statistic,
        d.distance_threshold
    );
    println!(
        "ACCEPTANCE 7: PASS — KS distance between empirical (n=10^4) and bridge normalized \
         suprema = {:.4} <= 0.05 with 10^4 samples each",
        d.ks_statistic
    );
}

#[test]
fn criterion_8_pipeline_honesty() {
    let mut ns: Vec<u64> = (3..=1000).collect();
    for exp in 3..=11u32 {
        for mult in [1, 2, 5] {
            ns.push(mult * 10u64.pow(exp));
        }
    }
    ns.push(999_999_999_999);
    ns.push(1_000_000_000_000);
    let mut checked = 0u64;
    for &eta in &[0.25, 0.5, 1.0] {
        let expected_exponent = (2.0 - 2.0 * eta) / (2.0 + eta);
        for &n in &ns {
            let p = theorem_pipeline(n, eta, 0.1, None).unwrap();
            assert!(p.vacuous, "pipeline not vacuous at n={n}, eta={eta}");
            assert_eq!(p.bound, 0.0);
            assert_eq!(p.exponent, expected_exponent);
            checked += 1;
        }
    }
    // the CLI report carries the exponent column
    let out = run_pipeline(&ExperimentConfig::default()).unwrap();
    let csv = report::to_csv(&out.report);
    assert!(csv.lines().next().unwrap().contains("exponent"));
    println!(
        "ACCEPTANCE 8: PASS — {checked} (n, eta) combinations up to n=10^12 all vacuous with \
         bound 0; reports print the exponent (2-2*eta)/(2+eta)"
    );
}

#[test]
fn criterion_9_determinism() {
    assert_eq!(
        canon(&*MAXIMAL_VALUES),
        canon(&compute_maximal_values(&compute_oracle_points())),
        "criterion 1 values changed on rerun"
    );
    assert_eq!(
        canon(&*THETA_TREND),
        canon(&compute_theta_trend()),
        "criterion 2 results changed on rerun"
    );
    assert_eq!(
        canon(&*THETA_1D),
        canon(&compute_theta_1d()),
        "criterion 3 results changed on rerun"
    );
    assert_eq!(
        canon(&*COVARIANCE),
        canon(&compute_covariance()),
        "criterion 5 covariance changed on rerun"
    );
    assert_eq!(
        canon(&*CONSTRUCTION_KS),
        canon(&compute_construction_ks()),
        "criterion 5 KS changed on rerun"
    );
    assert_eq!(canon(&*LIL), canon(&compute_lil()), "criterion 6 changed");
    assert_eq!(
        canon(&*DONSKER),
        canon(&compute_donsker()),
        "criterion 7 changed on rerun"
    );
    println!(
        "ACCEPTANCE 9: PASS — every stochastic criterion rerun byte-identically under \
         seed {SEED} with {WORKERS} declared workers"
    );
}
