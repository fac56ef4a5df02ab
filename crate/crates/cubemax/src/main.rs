//! Command-line front end.
//!
//! Subcommands map one-to-one onto the experiment runners; flags override a
//! `key=value` config file (`--config`, or the `CUBEMAX_CONFIG` environment
//! variable). Exit codes: 0 success, 1 parameter error, 2 check failure,
//! 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cubemax::error::Error;
use cubemax::experiments::{config::ExperimentConfig, report, run, CapMode, OutputFormat};

#[derive(Parser)]
#[command(name = "cubemax", version, about = "Lattice maximal-function laboratory")]
struct Cli {
    /// Key=value config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo lower bound on the weak (1,1) constant from uniform
    /// samples of the lattice maximal function.
    ThetaLower(Flags),
    /// Exhaustive verification grid for the explicit bound chain.
    Lemma2Verify(Flags),
    /// Bridge covariance, construction equivalence, iterated-logarithm and
    /// discrete-motion experiments, plus the Donsker diagnostic.
    BridgeSuite(Flags),
    /// Asymptotic constant pipeline across a dimension grid, with vacuity
    /// reporting.
    Pipeline(Flags),
    /// The Donsker diagnostic alone (alias into the bridge suite).
    DonskerDiag(Flags),
}

#[derive(Args)]
struct Flags {
    /// Dimension.
    #[arg(long)]
    n: Option<u64>,
    /// Monte Carlo sample count.
    #[arg(long)]
    trials: Option<u64>,
    /// RNG seed (required for stochastic commands).
    #[arg(long)]
    seed: Option<u64>,
    /// Window parameter for normalized suprema.
    #[arg(long)]
    eps: Option<f64>,
    /// Exceedance level.
    #[arg(long = "K")]
    k: Option<f64>,
    /// Bound-shape parameter in (0,2).
    #[arg(long)]
    eta: Option<f64>,
    /// Comma-separated levels L > 1 for theta-lower.
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<f64>>,
    /// Time-grid resolution for bridge simulation.
    #[arg(long)]
    grid: Option<usize>,
    /// Declared worker count (fixes the trial partition).
    #[arg(long)]
    workers: Option<usize>,
    /// Radius cap mode: from-threshold or explicit.
    #[arg(long)]
    cap_mode: Option<String>,
    /// Threshold level or explicit radius, depending on cap-mode.
    #[arg(long)]
    cap_value: Option<f64>,
    /// Report output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: json (default) or csv.
    #[arg(long)]
    format: Option<String>,
    /// Probability constant fed into the pipeline.
    #[arg(long)]
    c_eta: Option<f64>,
    /// Fix the coupling slack instead of deriving it from c-eta.
    #[arg(long)]
    x_override: Option<f64>,
    /// lemma2-verify only: perturb the bound and expect a detected failure.
    #[arg(long)]
    self_test: bool,
}

impl Flags {
    fn to_config(&self) -> Result<ExperimentConfig, Error> {
        Ok(ExperimentConfig {
            n: self.n,
            trials: self.trials,
            seed: self.seed,
            eps: self.eps,
            k: self.k,
            eta: self.eta,
            levels: self.levels.clone(),
            grid: self.grid,
            workers: self.workers,
            cap_mode: self.cap_mode.as_deref().map(CapMode::parse).transpose()?,
            cap_value: self.cap_value,
            out: self
                .out
                .as_ref()
                .map(|p| p.to_string_lossy().into_owned()),
            format: self
                .format
                .as_deref()
                .map(OutputFormat::parse)
                .transpose()?,
            c_eta: self.c_eta,
            x_override: self.x_override,
            self_test: if self.self_test { Some(true) } else { None },
        })
    }
}

fn load_file_config(cli_path: &Option<PathBuf>) -> Result<ExperimentConfig, Error> {
    let path = cli_path
        .clone()
        .or_else(|| std::env::var_os("CUBEMAX_CONFIG").map(PathBuf::from));
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p)?;
            ExperimentConfig::from_kv_str(&text)
        }
        None => Ok(ExperimentConfig::default()),
    }
}

fn execute(cli: &Cli) -> Result<(), Error> {
    let flags = match &cli.command {
        Command::ThetaLower(f)
        | Command::Lemma2Verify(f)
        | Command::BridgeSuite(f)
        | Command::Pipeline(f)
        | Command::DonskerDiag(f) => f,
    };
    let cfg = load_file_config(&cli.config)?.overlaid_with(&flags.to_config()?);

    let output = match &cli.command {
        Command::ThetaLower(_) => run::run_theta_lower(&cfg)?,
        Command::Lemma2Verify(_) => run::run_lemma2_verify(&cfg)?,
        Command::BridgeSuite(_) => run::run_bridge_suite(&cfg)?,
        Command::Pipeline(_) => run::run_pipeline(&cfg)?,
        Command::DonskerDiag(_) => run::run_donsker_diag(&cfg)?,
    };

    println!("{}", output.summary);
    let format = cfg.format.unwrap_or(OutputFormat::Json);
    let body = match format {
        OutputFormat::Json => report::to_json(&output.report)?,
        OutputFormat::Csv => report::to_csv(&output.report),
    };
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, &body)?;
            println!("wrote {path}");
        }
        None => println!("{body}"),
    }

    if !output.ok {
        return Err(Error::CheckFailed(output.summary.clone()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
