use cubemax::experiments::run::theta_lower_core;
use cubemax::lattice::RadiusCapPolicy;
use std::time::Instant;

fn main() {
    let cap = RadiusCapPolicy::default();
    let seed = 42u64;
    let t0 = Instant::now();
    for &n in &[16usize, 64, 256, 1024] {
        let (theta, _) = theta_lower_core(seed, 2, n, 10_000, &cap, &[2.0]).unwrap();
        let row = &theta.levels[0];
        println!(
            "n={n}: k={} p_hat={:.5} ci=[{:.5},{:.5}]",
            row.exceed.successes, row.p_hat, row.ci_lo, row.ci_hi
        );
    }
    println!("trend elapsed={:.1}s", t0.elapsed().as_secs_f64());

    let t0 = Instant::now();
    let (theta, _) = theta_lower_core(seed, 2, 1, 100_000, &cap, &[2.0]).unwrap();
    let row = &theta.levels[0];
    println!(
        "n=1 1e5: p_hat={:.5} certified={:.6} point={:.6} elapsed={:.1}s",
        row.p_hat, theta.best_certified, theta.best_point, t0.elapsed().as_secs_f64()
    );
}
