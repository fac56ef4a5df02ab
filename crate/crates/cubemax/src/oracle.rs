//! Brute-force reference evaluators, used by the test-suite as independent
//! oracles. Deliberately slow and structurally unrelated to the production
//! paths: everything here is direct per-radius (or per-time) evaluation on
//! a dense grid augmented with the exact candidate abscissas, with no
//! incremental state.

use crate::empirical::EmpiricalPath;

fn log_ratio_direct(coords: &[f64], r: f64) -> f64 {
    let mut log_count = 0.0;
    for &c in coords {
        let per_axis = (c + r).floor() - (c - r).ceil() + 1.0;
        if per_axis <= 0.0 {
            return f64::NEG_INFINITY;
        }
        log_count += per_axis.ln();
    }
    log_count - coords.len() as f64 * (2.0 * r).ln()
}

/// Reference supremum of the lattice density log-ratio over `(0, r_max]`.
///
/// Sweeps a dense radius grid of the given step and, in addition, evaluates
/// at every exact distance `|x_i - k|` (the grid alone lands up to one step
/// past each count change, which biases its supremum low by `O(n*step/r)`).
pub fn maximal_dense_sweep(coords: &[f64], r_max: f64, step: f64) -> f64 {
    let mut best = f64::NEG_INFINITY;
    let mut r = step;
    while r <= r_max {
        best = best.max(log_ratio_direct(coords, r));
        r += step;
    }
    for &c in coords {
        let mut k = (c - r_max).floor();
        while k <= (c + r_max).ceil() {
            let d = (c - k).abs();
            if d > 0.0 && d <= r_max {
                best = best.max(log_ratio_direct(coords, d));
            }
            k += 1.0;
        }
    }
    best
}

fn normalized_alpha_direct(path: &EmpiricalPath, t: f64) -> f64 {
    path.alpha_at(t) / (t * (1.0 - t)).sqrt()
}

/// Reference supremum of `alpha_t / sqrt(t(1-t))` over `[eps, 1-eps]`:
/// dense time grid plus the exact jump times and the window endpoints.
pub fn sup_normalized_alpha_grid(path: &EmpiricalPath, eps: f64, step: f64) -> f64 {
    let mut best = f64::NEG_INFINITY;
    let mut t = eps;
    while t <= 1.0 - eps {
        best = best.max(normalized_alpha_direct(path, t));
        t += step;
    }
    best = best.max(normalized_alpha_direct(path, 1.0 - eps));
    for &v in path.sorted_values() {
        if v >= eps && v <= 1.0 - eps {
            best = best.max(normalized_alpha_direct(path, v));
        }
    }
    best
}
