//! Command-line front end: JSON in, JSON out, one master seed per run.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extract::{
    counterexample_demo, extract_from_pair_with, CounterexampleReport, ExtractError, MinorOrderTable,
};
use crate::generic::{
    act, GenericError, GenericFactors, GroupElement, MatrixPair, MuGenericCertificate, ResampleEvent,
    VerificationReport, VerifyMode, DEFAULT_MAX_RETRIES,
};
use crate::matrix::RMatrix;
use crate::realize::{random_filling, realize, FactoredRealization, RealizeError};
use crate::tableaux::{lr_coefficient, Filling, Partition};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_RETRIES: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("retries exhausted: {0}")]
    RetriesExhausted(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::RetriesExhausted(_) => EXIT_RETRIES,
        }
    }
}

impl From<RealizeError> for CliError {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::VerificationFailed { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GenericError> for CliError {
    fn from(e: GenericError) -> Self {
        match e {
            GenericError::RetriesExhausted { .. } => CliError::RetriesExhausted(e.to_string()),
            GenericError::Reduction(_) => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ExtractError> for CliError {
    fn from(e: ExtractError) -> Self {
        match e {
            ExtractError::Generic(g) => g.into(),
            ExtractError::GenericityViolation { .. } | ExtractError::OrderOutOfRange { .. } => {
                CliError::RetriesExhausted(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub max_retries: usize,
    /// `None` picks by size.
    pub verify_mode: Option<VerifyMode>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            max_retries: DEFAULT_MAX_RETRIES,
            verify_mode: None,
            input: None,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn mode_for(&self, r: usize) -> VerifyMode {
        self.verify_mode.unwrap_or_else(|| VerifyMode::auto(r))
    }
}

// ---- realize ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizeInput {
    pub filling: Filling,
    pub mu: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizeOutput {
    pub seed: u64,
    #[serde(flatten)]
    pub realization: FactoredRealization,
}

pub fn cmd_realize(input: &RealizeInput, cfg: &RunConfig) -> Result<RealizeOutput, CliError> {
    Ok(RealizeOutput {
        seed: cfg.seed,
        realization: realize(&input.filling, &input.mu)?,
    })
}

// ---- extract ----

/// A pair file; realization outputs parse as pair files too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInput {
    #[serde(rename = "M")]
    pub m: RMatrix,
    #[serde(rename = "N")]
    pub n: RMatrix,
}

/// The serialized part of a [`MuGenericCertificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateOutput {
    #[serde(rename = "N_star")]
    pub n_star: RMatrix,
    pub mu: Partition,
    pub factors: GenericFactors,
    pub verification: VerificationReport,
    pub attempts: usize,
    pub resamples: Vec<ResampleEvent>,
}

impl From<&MuGenericCertificate> for CertificateOutput {
    fn from(c: &MuGenericCertificate) -> Self {
        CertificateOutput {
            n_star: c.n_star.clone(),
            mu: c.mu.clone(),
            factors: c.factors.clone(),
            verification: c.verification.clone(),
            attempts: c.attempts,
            resamples: c.resamples.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractOutput {
    pub seed: u64,
    pub filling: Filling,
    pub mu: Partition,
    pub nu: Partition,
    pub lambda: Partition,
    pub minor_orders: MinorOrderTable,
    pub certificate: CertificateOutput,
}

pub fn cmd_extract(input: &PairInput, cfg: &RunConfig) -> Result<ExtractOutput, CliError> {
    let pair = MatrixPair::new(input.m.clone(), input.n.clone())?;
    let mut rng = cfg.rng();
    let out = extract_from_pair_with(&pair, &mut rng, cfg.max_retries, cfg.mode_for(pair.size()))?;
    let e = out.extraction;
    Ok(ExtractOutput {
        seed: cfg.seed,
        filling: e.filling,
        mu: e.mu,
        nu: e.nu,
        lambda: e.lambda,
        minor_orders: e.minor_orders,
        certificate: (&out.certificate).into(),
    })
}

// ---- roundtrip ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripOptions {
    pub trials: usize,
    pub r_max: usize,
    pub part_max: u32,
    /// Move each realization by a random group element before extracting.
    pub act: bool,
    /// Directory for one JSON file per failed trial.
    pub artifacts: Option<PathBuf>,
    /// Perturbs every extracted filling; exercises the failure path.
    pub inject_fault: bool,
}

impl Default for RoundtripOptions {
    fn default() -> Self {
        RoundtripOptions {
            trials: 10,
            r_max: 4,
            part_max: 6,
            act: false,
            artifacts: None,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    /// Reruns this trial alone as `--seed trial_seed --trials 1`.
    pub trial_seed: u64,
    pub filling: Filling,
    pub mu: Partition,
    pub extracted: Option<Filling>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripSummary {
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Certificate attempts over all trials, and how many were resamples.
    pub attempts: usize,
    pub resamples: usize,
    pub failures: Vec<TrialFailure>,
}

impl RoundtripSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn run_trial(seed: u64, opts: &RoundtripOptions, cfg: &RunConfig) -> Result<(usize, Option<TrialFailure>), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (filling, mu, _, _) = random_filling(&mut rng, opts.r_max, opts.part_max)?;
    let fail = |extracted: Option<Filling>, error: Option<String>| TrialFailure {
        trial: 0,
        trial_seed: seed,
        filling: filling.clone(),
        mu: mu.clone(),
        extracted,
        error,
    };
    let real = match realize(&filling, &mu) {
        Ok(r) => r,
        Err(e) => return Ok((0, Some(fail(None, Some(e.to_string()))))),
    };
    let mut pair = MatrixPair::new(real.m, real.n)?;
    if opts.act {
        let g = GroupElement::random(&mut rng, pair.size(), 3);
        pair = act(&g, &pair)?;
    }
    match extract_from_pair_with(&pair, &mut rng, cfg.max_retries, cfg.mode_for(pair.size())) {
        Ok(out) => {
            let attempts = out.certificate.attempts;
            let mut got = out.extraction.filling;
            if opts.inject_fault {
                got.set(1, 1, got.k(1, 1) + 1);
            }
            Ok((attempts, (got != filling).then(|| fail(Some(got), None))))
        }
        Err(e) => Ok((0, Some(fail(None, Some(e.to_string()))))),
    }
}

pub fn cmd_roundtrip(opts: &RoundtripOptions, cfg: &RunConfig) -> Result<RoundtripSummary, CliError> {
    if opts.r_max == 0 || opts.part_max == 0 {
        return Err(CliError::Input("--rmax and --pmax must be positive".into()));
    }
    let mut master = cfg.rng();
    let mut summary = RoundtripSummary {
        seed: cfg.seed,
        trials: opts.trials,
        passed: 0,
        failed: 0,
        attempts: 0,
        resamples: 0,
        failures: Vec::new(),
    };
    for trial in 1..=opts.trials {
        let seed = if opts.trials == 1 { cfg.seed } else { master.gen() };
        let (attempts, failure) = run_trial(seed, opts, cfg)?;
        summary.attempts += attempts;
        summary.resamples += attempts.saturating_sub(1);
        match failure {
            None => summary.passed += 1,
            Some(mut f) => {
                f.trial = trial;
                warn!("trial {trial} (seed {seed}) failed");
                if let Some(dir) = &opts.artifacts {
                    fs::create_dir_all(dir)?;
                    let path = dir.join(format!("failure-{trial}.json"));
                    fs::write(&path, to_json(&f)?)?;
                    info!("wrote {}", path.display());
                }
                summary.failed += 1;
                summary.failures.push(f);
            }
        }
    }
    Ok(summary)
}

// ---- count ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOutput {
    pub seed: u64,
    pub mu: Partition,
    pub nu: Partition,
    pub lambda: Partition,
    pub count: usize,
}

pub fn cmd_count(mu: &Partition, nu: &Partition, lambda: &Partition, cfg: &RunConfig) -> CountOutput {
    CountOutput {
        seed: cfg.seed,
        mu: mu.clone(),
        nu: nu.clone(),
        lambda: lambda.clone(),
        count: lr_coefficient(mu, nu, lambda),
    }
}

// ---- counterexample ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleOutput {
    pub seed: u64,
    pub passed: bool,
    pub report: CounterexampleReport,
}

pub fn cmd_counterexample(cfg: &RunConfig) -> Result<CounterexampleOutput, CliError> {
    let report = counterexample_demo()?;
    Ok(CounterexampleOutput {
        seed: cfg.seed,
        passed: report.passed(),
        report,
    })
}

// ---- argument parsing ----

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyArg {
    Full,
    Sampled,
}

#[derive(Debug, Parser)]
#[command(name = "lrpairs", version, about = "LR fillings of matrix pairs over Q[t]_(t)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RETRIES)]
    pub retries: usize,
    /// Default: full for r <= 5, sampled above.
    #[arg(long, global = true, value_enum)]
    pub verify: Option<VerifyArg>,
    /// Input JSON file; stdin when absent.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output JSON file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Matrix pair realizing a filling: {"filling", "mu"} -> {M, factors, N, ...}.
    Realize,
    /// Filling of a pair: {"M", "N"} -> {"filling", "mu", "nu", "lambda", ...}.
    Extract,
    /// Random fillings through realize and extract.
    Roundtrip {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        #[arg(long, default_value_t = 6)]
        pmax: u32,
        /// Apply a random (P, Q, T) before extracting.
        #[arg(long)]
        act: bool,
        #[arg(long)]
        artifacts: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Number of LR fillings of lambda/mu with content nu.
    Count {
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        nu: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u32>,
    },
    /// Two inequivalent pairs with the same filling.
    Counterexample,
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            max_retries: self.retries,
            verify_mode: self.verify.map(|v| match v {
                VerifyArg::Full => VerifyMode::Full,
                VerifyArg::Sampled => VerifyMode::Sampled,
            }),
            input: self.input.clone(),
            output: self.out.clone(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))
}

fn read_input<T: for<'de> Deserialize<'de>>(path: Option<&Path>) -> Result<T, CliError> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(e.to_string()))
}

fn write_output(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None => writeln!(io::stdout(), "{text}")?,
    }
    Ok(())
}

fn partition_arg(name: &str, parts: &[u32]) -> Result<Partition, CliError> {
    Partition::new(parts.to_vec()).map_err(|e| CliError::Input(format!("--{name}: {e}")))
}

/// Runs a parsed command and returns the exit code.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let cfg = cli.global.config();
    let input = cfg.input.as_deref();
    let (text, ok) = match &cli.command {
        Command::Realize => (to_json(&cmd_realize(&read_input(input)?, &cfg)?)?, true),
        Command::Extract => (to_json(&cmd_extract(&read_input(input)?, &cfg)?)?, true),
        Command::Roundtrip {
            trials,
            rmax,
            pmax,
            act,
            artifacts,
            inject_fault,
        } => {
            let opts = RoundtripOptions {
                trials: *trials,
                r_max: *rmax,
                part_max: *pmax,
                act: *act,
                artifacts: artifacts.clone(),
                inject_fault: *inject_fault,
            };
            let s = cmd_roundtrip(&opts, &cfg)?;
            (to_json(&s)?, s.all_passed())
        }
        Command::Count { mu, nu, lambda } => {
            let out = cmd_count(
                &partition_arg("mu", mu)?,
                &partition_arg("nu", nu)?,
                &partition_arg("lambda", lambda)?,
                &cfg,
            );
            (to_json(&out)?, true)
        }
        Command::Counterexample => {
            let out = cmd_counterexample(&cfg)?;
            (to_json(&out)?, out.passed)
        }
    };
    write_output(&text, cfg.output.as_deref())?;
    Ok(if ok { 0 } else { EXIT_VERIFICATION })
}

/// Parses the process arguments, runs, and reports errors on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error (seed {}): {e}", cli.global.seed);
            e.exit_code()
        }
    }
}
