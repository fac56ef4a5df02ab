//! Experiment configuration: one flat struct mirroring the CLI flags, with
//! a `key=value` file format. Flags override file values; the merged,
//! resolved config is echoed into every report so a run is reproducible
//! from the report alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Copy, Serialize, Deserialize)]
pub enum CapMode {
    FromThreshold,
    Explicit,
}

impl CapMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CapMode::FromThreshold => "from-threshold",
            CapMode::Explicit => "explicit",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "from-threshold" => Ok(CapMode::FromThreshold),
            "explicit" => Ok(CapMode::Explicit),
            other => Err(Error::parameter(format!(
                "cap-mode must be from-threshold or explicit, got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Copy, Serialize, Deserialize)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::parameter(format!(
                "format must be json or csv, got {other}"
            ))),
        }
    }
}

/// Union of all command parameters. Unused fields are simply ignored by a
/// command; a seed is mandatory for every stochastic command.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: Option<u64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub eps: Option<f64>,
    pub k: Option<f64>,
    pub eta: Option<f64>,
    pub levels: Option<Vec<f64>>,
    pub grid: Option<usize>,
    pub workers: Option<usize>,
    pub cap_mode: Option<CapMode>,
    pub cap_value: Option<f64>,
    pub out: Option<String>,
    pub format: Option<OutputFormat>,
    pub c_eta: Option<f64>,
    pub x_override: Option<f64>,
    pub self_test: Option<bool>,
}

impl ExperimentConfig {
    /// Overlay `other` on top of `self`: set fields in `other` win.
    pub fn overlaid_with(&self, other: &ExperimentConfig) -> ExperimentConfig {
        macro_rules! pick {
            ($field:ident) => {
                other.$field.clone().or_else(|| self.$field.clone())
            };
        }
        ExperimentConfig {
            n: pick!(n),
            trials: pick!(trials),
            seed: pick!(seed),
            eps: pick!(eps),
            k: pick!(k),
            eta: pick!(eta),
            levels: pick!(levels),
            grid: pick!(grid),
            workers: pick!(workers),
            cap_mode: pick!(cap_mode),
            cap_value: pick!(cap_value),
            out: pick!(out),
            format: pick!(format),
            c_eta: pick!(c_eta),
            x_override: pick!(x_override),
            self_test: pick!(self_test),
        }
    }

    /// Serialize to the flat `key=value` file format. Floats use the
    /// shortest representation that round-trips exactly.
    pub fn to_kv_string(&self) -> String {
        let mut lines = Vec::new();
        macro_rules! put {
            ($key:literal, $value:expr) => {
                if let Some(v) = &$value {
                    lines.push(format!(concat!($key, "={}"), v));
                }
            };
        }
        put!("n", self.n);
        put!("trials", self.trials);
        put!("seed", self.seed);
        put!("eps", self.eps.map(|v| format!("{v:?}")));
        put!("K", self.k.map(|v| format!("{v:?}")));
        put!("eta", self.eta.map(|v| format!("{v:?}")));
        if let Some(levels) = &self.levels {
            let joined: Vec<String> = levels.iter().map(|v| format!("{v:?}")).collect();
            lines.push(format!("levels={}", joined.join(",")));
        }
        put!("grid", self.grid);
        put!("workers", self.workers);
        put!("cap-mode", self.cap_mode.map(|m| m.as_str().to_string()));
        put!("cap-value", self.cap_value.map(|v| format!("{v:?}")));
        put!("out", self.out);
        put!("format", self.format.map(|f| f.as_str().to_string()));
        put!("c-eta", self.c_eta.map(|v| format!("{v:?}")));
        put!("x-override", self.x_override.map(|v| format!("{v:?}")));
        put!("self-test", self.self_test);
        let mut s = lines.join("\n");
        s.push('\n');
        s
    }

    /// Parse the flat `key=value` format. Blank lines and `#` comments are
    /// allowed; unknown keys are rejected.
    pub fn from_kv_str(text: &str) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::parameter(format!("config line {} is not key=value", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |what: &str| {
                Error::parameter(format!(
                    "config line {}: invalid {what} value {value:?}",
                    lineno + 1
                ))
            };
            match key {
                "n" => cfg.n = Some(value.parse().map_err(|_| bad("integer"))?),
                "trials" => cfg.trials = Some(value.parse().map_err(|_| bad("integer"))?),
                "seed" => cfg.seed = Some(value.parse().map_err(|_| bad("integer"))?),
                "eps" => cfg.eps = Some(value.parse().map_err(|_| bad("float"))?),
                "K" => cfg.k = Some(value.parse().map_err(|_| bad("float"))?),
                "eta" => cfg.eta = Some(value.parse().map_err(|_| bad("float"))?),
                "levels" => {
                    let mut levels = Vec::new();
                    for part in value.split(',') {
                        levels.push(part.trim().parse().map_err(|_| bad("float list"))?);
                    }
                    cfg.levels = Some(levels);
                }
                "grid" => cfg.grid = Some(value.parse().map_err(|_| bad("integer"))?),
                "workers" => cfg.workers = Some(value.parse().map_err(|_| bad("integer"))?),
                "cap-mode" => cfg.cap_mode = Some(CapMode::parse(value)?),
                "cap-value" => cfg.cap_value = Some(value.parse().map_err(|_| bad("float"))?),
                "out" => cfg.out = Some(value.to_string()),
                "format" => cfg.format = Some(OutputFormat::parse(value)?),
                "c-eta" => cfg.c_eta = Some(value.parse().map_err(|_| bad("float"))?),
                "x-override" => cfg.x_override = Some(value.parse().map_err(|_| bad("float"))?),
                "self-test" => cfg.self_test = Some(value.parse().map_err(|_| bad("bool"))?),
                other => {
                    return Err(Error::parameter(format!(
                        "config line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn require_seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| Error::parameter("a seed is required for stochastic commands"))
    }

    pub fn workers_or_default(&self) -> usize {
        self.workers.unwrap_or(1).max(1)
    }

    /// The radius cap policy from `cap-mode`/`cap-value`, defaulting to the
    /// threshold policy at level 2.
    pub fn cap_policy(&self) -> Result<crate::lattice::RadiusCapPolicy> {
        use crate::lattice::RadiusCapPolicy;
        match self.cap_mode.unwrap_or(CapMode::FromThreshold) {
            CapMode::FromThreshold => {
                RadiusCapPolicy::from_threshold(self.cap_value.unwrap_or(2.0))
            }
            CapMode::Explicit => {
                let v = self.cap_value.ok_or_else(|| {
                    Error::parameter("cap-mode=explicit requires cap-value")
                })?;
                RadiusCapPolicy::explicit(v)
            }
        }
    }
}
