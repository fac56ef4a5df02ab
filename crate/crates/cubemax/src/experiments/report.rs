//! Report schema and serialization.
//!
//! Reports are flat serde structs with `deny_unknown_fields` everywhere, so
//! a report either validates against this schema exactly or fails to parse.
//! JSON numbers are written with 17 significant digits (`%.16e`), enough to
//! reproduce every f64 bit-exactly; serialization refuses non-finite
//! values. Field order is fixed by the struct definitions, so two runs with
//! the same seed and worker count produce byte-identical bodies apart from
//! the wall-clock entry in `meta`.

use std::io;

use serde::{Deserialize, Serialize};

use crate::bounds::{TheoremParams, ThetaSampleBound};
use crate::error::{Error, Result};
use crate::stats::{BinomialCount, KsResult};

use super::config::ExperimentConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    /// Resolved configuration: re-running the command with exactly these
    /// values reproduces the results section.
    pub config: ExperimentConfig,
    pub results: ReportResults,
    pub meta: ReportMeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportMeta {
    pub version: String,
    pub wall_clock_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data")]
pub enum ReportResults {
    ThetaLower(ThetaLowerResults),
    Lemma2(Lemma2Results),
    BridgeSuite(BridgeSuiteResults),
    Pipeline(PipelineResults),
    DonskerDiag(DonskerResults),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaLowerResults {
    pub dimension: u64,
    pub trials: u64,
    pub cap_mode: String,
    pub cap_value: f64,
    /// Samples where the maximal function is infinite (lattice points).
    pub infinite_samples: u64,
    pub theta: ThetaSampleBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma2CheckRow {
    pub eta: f64,
    pub k: f64,
    pub t: f64,
    pub n: u64,
    pub d: f64,
    pub s_zero: f64,
    pub rhs_paper: f64,
    pub rhs_conservative: f64,
    pub structured: f64,
    pub f_at_s_zero: f64,
    pub f_at_floor_s_zero: f64,
    pub sup_abs_f_prime: f64,
    pub f_prime_at_s_zero: f64,
    pub dual_form_rel_gap: f64,
    pub pass_structured_vs_rhs: bool,
    pub pass_mean_value: bool,
    pub pass_f_s_zero_lower: bool,
    pub pass_f_prime_zero: bool,
    pub pass_dual_form: bool,
}

impl Lemma2CheckRow {
    pub fn all_pass(&self) -> bool {
        self.pass_structured_vs_rhs
            && self.pass_mean_value
            && self.pass_f_s_zero_lower
            && self.pass_f_prime_zero
            && self.pass_dual_form
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma2Results {
    pub etas: Vec<f64>,
    pub rhs_scale: f64,
    pub rows: Vec<Lemma2CheckRow>,
    pub phi_sweep_pass: bool,
    pub min_dimension_rows: Vec<MinDimensionRow>,
    pub guard_not_applicable_ok: bool,
    pub self_test: bool,
    /// In self-test mode, whether the deliberately perturbed bound was
    /// caught by at least one row.
    pub designed_failure_detected: Option<bool>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinDimensionRow {
    pub eta: f64,
    pub min_d: f64,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovarianceRow {
    pub t: f64,
    pub u: f64,
    pub expected: f64,
    pub sample: f64,
    pub se: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KsCheck {
    pub ks: KsResult,
    pub p_threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LilRow {
    pub a_big: f64,
    pub eta: f64,
    pub alpha: f64,
    pub rho: f64,
    pub n_events: u32,
    pub threshold: f64,
    pub floor: f64,
    pub estimate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub pass_floor: bool,
    pub pass_positive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionRow {
    pub horizon: u64,
    pub count: BinomialCount,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionResults {
    pub level: f64,
    pub rows: Vec<MotionRow>,
    pub monotone_within_ci: bool,
    pub covariance: CovarianceRow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BridgeSuiteResults {
    pub covariance_trials: u64,
    pub covariance: Vec<CovarianceRow>,
    pub covariance_pass: bool,
    pub construction_trials: u64,
    pub construction_ks: KsCheck,
    pub lil_trials: u64,
    pub lil: Vec<LilRow>,
    pub motion: MotionResults,
    pub donsker: Option<DonskerResults>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineResults {
    pub c_eta: f64,
    pub rows: Vec<TheoremParams>,
    pub all_vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DonskerResults {
    pub dimension: u64,
    pub trials: u64,
    pub eps: f64,
    pub grid_resolution: usize,
    pub ks_statistic: f64,
    pub ks_p_value: f64,
    pub distance_threshold: f64,
    pub pass: bool,
}

/// serde_json formatter writing every float as `%.16e` (17 significant
/// digits) and refusing non-finite values.
struct SignificantDigitFormatter;

impl serde_json::ser::Formatter for SignificantDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if !value.is_finite() {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "reports must not contain non-finite numbers",
            ));
        }
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize a report to its canonical JSON body.
pub fn to_json(report: &Report) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigitFormatter);
    report
        .serialize(&mut ser)
        .map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(out).map_err(|e| Error::Format(e.to_string()))
}

/// Parse and validate a report against the schema (unknown fields are
/// rejected).
pub fn from_json(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn push_csv_row(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

fn f(v: f64) -> String {
    format!("{v:.16e}")
}

/// Plot-ready CSV of the per-row tables of a report. Sections are preceded
/// by a `# table: <name>` comment when a report carries more than one.
pub fn to_csv(report: &Report) -> String {
    let mut out = String::new();
    match &report.results {
        ReportResults::ThetaLower(r) => {
            push_csv_row(
                &mut out,
                &[
                    "level".into(),
                    "exceed".into(),
                    "trials".into(),
                    "p_hat".into(),
                    "ci_lo".into(),
                    "ci_hi".into(),
                    "point_bound".into(),
                    "certified_bound".into(),
                ],
            );
            for row in &r.theta.levels {
                push_csv_row(
                    &mut out,
                    &[
                        f(row.level),
                        row.exceed.successes.to_string(),
                        row.exceed.trials.to_string(),
                        f(row.p_hat),
                        f(row.ci_lo),
                        f(row.ci_hi),
                        f(row.point_bound),
                        f(row.certified_bound),
                    ],
                );
            }
        }
        ReportResults::Pipeline(r) => {
            push_csv_row(
                &mut out,
                &[
                    "n".into(),
                    "eta".into(),
                    "eps".into(),
                    "x".into(),
                    "threshold".into(),
                    "correction".into(),
                    "K".into(),
                    "vacuous".into(),
                    "bound".into(),
                    "exponent".into(),
                ],
            );
            for row in &r.rows {
                push_csv_row(
                    &mut out,
                    &[
                        row.n.to_string(),
                        f(row.eta),
                        f(row.eps),
                        f(row.x),
                        row.threshold.map(f).unwrap_or_default(),
                        f(row.correction),
                        row.k.map(f).unwrap_or_default(),
                        row.vacuous.to_string(),
                        f(row.bound),
                        f(row.exponent),
                    ],
                );
            }
        }
        ReportResults::BridgeSuite(r) => {
            out.push_str("# table: covariance\n");
            push_csv_row(
                &mut out,
                &["t".into(), "u".into(), "expected".into(), "sample".into(), "se".into(), "pass".into()],
            );
            for row in &r.covariance {
                push_csv_row(
                    &mut out,
                    &[
                        f(row.t),
                        f(row.u),
                        f(row.expected),
                        f(row.sample),
                        f(row.se),
                        row.pass.to_string(),
                    ],
                );
            }
            out.push_str("# table: lil\n");
            push_csv_row(
                &mut out,
                &[
                    "A".into(),
                    "eta".into(),
                    "alpha".into(),
                    "rho".into(),
                    "n_events".into(),
                    "threshold".into(),
                    "floor".into(),
                    "estimate".into(),
                    "ci_lo".into(),
                    "ci_hi".into(),
                ],
            );
            for row in &r.lil {
                push_csv_row(
                    &mut out,
                    &[
                        f(row.a_big),
                        f(row.eta),
                        f(row.alpha),
                        f(row.rho),
                        row.n_events.to_string(),
                        f(row.threshold),
                        f(row.floor),
                        f(row.estimate),
                        f(row.ci_lo),
                        f(row.ci_hi),
                    ],
                );
            }
            out.push_str("# table: motion\n");
            push_csv_row(
                &mut out,
                &["horizon".into(), "estimate".into(), "ci_lo".into(), "ci_hi".into()],
            );
            for row in &r.motion.rows {
                push_csv_row(
                    &mut out,
                    &[
                        row.horizon.to_string(),
                        f(row.count.estimate()),
                        f(row.ci_lo),
                        f(row.ci_hi),
                    ],
                );
            }
        }
        ReportResults::Lemma2(r) => {
            push_csv_row(
                &mut out,
                &[
                    "eta".into(),
                    "K".into(),
                    "t".into(),
                    "n".into(),
                    "D".into(),
                    "structured".into(),
                    "rhs_conservative".into(),
                    "pass".into(),
                ],
            );
            for row in &r.rows {
                push_csv_row(
                    &mut out,
                    &[
                        f(row.eta),
                        f(row.k),
                        f(row.t),
                        row.n.to_string(),
                        f(row.d),
                        f(row.structured),
                        f(row.rhs_conservative),
                        row.all_pass().to_string(),
                    ],
                );
            }
        }
        ReportResults::DonskerDiag(r) => {
            push_csv_row(
                &mut out,
                &[
                    "dimension".into(),
                    "trials".into(),
                    "eps".into(),
                    "grid".into(),
                    "ks_statistic".into(),
                    "ks_p_value".into(),
                    "pass".into(),
                ],
            );
            push_csv_row(
                &mut out,
                &[
                    r.dimension.to_string(),
                    r.trials.to_string(),
                    f(r.eps),
                    r.grid_resolution.to_string(),
                    f(r.ks_statistic),
                    f(r.ks_p_value),
                    r.pass.to_string(),
                ],
            );
        }
    }
    out
}
