//! Command-line front end: file I/O, configuration and subcommands.

pub mod cost;
pub mod input;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqsan::eval::{verify, Level};
use seqsan::mcsr::Theta;
use seqsan::oracles::{oracle_min_etfs, oracle_min_tfs, OracleBudget};
use seqsan::{run_pipeline, Alphabet, Pipeline, PipelineOptions, SanitizationInstance, TokenMode};
use thiserror::Error;

use crate::cost::load_cost;
use crate::input::{parse_inputs, parse_sequence, read_file, render_sequence, write_file, SensitiveSource};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}:{line}:{col}: {msg}")]
    Parse {
        file: String,
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] seqsan::Error),
    #[error("{0} propert{} violated", if *.0 == 1 { "y" } else { "ies" })]
    Verify(usize),
}

impl CliError {
    /// 2 when no sanitized string exists, 1 for failed verification, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_infeasible() => 2,
            CliError::Verify(_) => 1,
            _ => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "seqsan",
    version,
    about = "Conceal sensitive length-k patterns in a sequence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a sanitization pipeline.
    Sanitize(SanitizeArgs),
    /// Write a seeded uniform random string and, optionally, sensitive patterns.
    Gen(GenArgs),
    /// Check a candidate output against the properties.
    Verify(VerifyArgs),
    /// Exhaustive optimum for a tiny instance.
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Input string file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// One sensitive pattern per line.
    #[arg(long, conflicts_with = "positions", required_unless_present = "positions")]
    pub patterns: Option<PathBuf>,
    /// Whitespace-separated 0-based sensitive positions.
    #[arg(long)]
    pub positions: Option<PathBuf>,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = TokenMode::Char)]
    pub mode: TokenMode,
}

impl InstanceArgs {
    pub fn load(&self) -> Result<SanitizationInstance, CliError> {
        let source = match (&self.patterns, &self.positions) {
            (Some(p), _) => SensitiveSource::Patterns(p),
            (None, Some(p)) => SensitiveSource::Positions(p),
            (None, None) => return Err(CliError::Input("one of --patterns or --positions is required".into())),
        };
        parse_inputs(&self.input, source, self.k, self.mode)
    }
}

#[derive(Debug, Args)]
pub struct SanitizeArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value = "tpm")]
    pub pipeline: Pipeline,
    #[arg(long, default_value_t = 1)]
    pub tau: usize,
    /// Replacement weight capacity: `auto` (the separator count) or an integer.
    #[arg(long, default_value = "auto", value_parser = parse_theta)]
    pub theta: Theta,
    /// Implausibility threshold, required by `tmi`.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
    /// `uniform` or a TOML cost table.
    #[arg(long, default_value = "uniform")]
    pub cost_model: String,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Metrics report file; stderr when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Include per-stage wall times in the report.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub sigma: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = TokenMode::Char)]
    pub mode: TokenMode,
    #[arg(long)]
    pub out: PathBuf,
    /// Also sample this many distinct length-k substrings as sensitive patterns.
    #[arg(long, requires_all = ["k", "patterns_out"])]
    pub patterns: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub patterns_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// The string to check, in the same mode as the input.
    #[arg(long)]
    pub candidate: PathBuf,
    /// Properties to check; all when absent.
    #[arg(long = "level", value_delimiter = ',')]
    pub levels: Vec<Level>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleKind {
    Tfs,
    Etfs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = OracleKind::Tfs)]
    pub kind: OracleKind,
}

pub fn parse_theta(s: &str) -> Result<Theta, String> {
    if s == "auto" {
        return Ok(Theta::Auto);
    }
    s.parse()
        .map(Theta::Fixed)
        .map_err(|_| format!("expected `auto` or a non-negative integer, found `{s}`"))
}

/// Mode used to write outputs: char mode needs single-character letters.
fn output_mode(alphabet: &Alphabet, mode: TokenMode) -> TokenMode {
    if mode == TokenMode::Char && !alphabet.is_char_alphabet() {
        TokenMode::Token
    } else {
        mode
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sanitize(a) => sanitize(&a),
        Command::Gen(a) => generate(&a),
        Command::Verify(a) => verify_candidate(&a),
        Command::Oracle(a) => oracle(&a),
    }
}

fn emit(path: Option<&Path>, text: &str, fallback: &mut dyn std::io::Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => fallback.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

pub fn sanitize(a: &SanitizeArgs) -> Result<(), CliError> {
    let inst = a.instance.load()?;
    let opts = PipelineOptions {
        tau: a.tau,
        theta: a.theta,
        rho: a.rho,
        cost: load_cost(&a.cost_model, inst.alphabet(), inst.k(), a.instance.mode)?,
        timings: a.timings,
        ..Default::default()
    };
    if a.pipeline == Pipeline::Tmi && a.rho.is_none() {
        return Err(CliError::Input("pipeline tmi requires --rho".into()));
    }
    let out = run_pipeline(&inst, a.pipeline, &opts)?;
    let mode = output_mode(inst.alphabet(), a.instance.mode);
    emit(
        a.out.as_deref(),
        &render_sequence(inst.alphabet(), &out.output, mode),
        &mut std::io::stdout().lock(),
    )?;
    emit(
        a.report.as_deref(),
        &out.report.to_text(),
        &mut std::io::stderr().lock(),
    )
}

pub fn generate(a: &GenArgs) -> Result<(), CliError> {
    if a.sigma == 0 || a.n == 0 {
        return Err(CliError::Input("--n and --sigma must be positive".into()));
    }
    if a.mode == TokenMode::Char && a.sigma > 26 {
        return Err(CliError::Input(
            "char mode supports at most 26 letters; use --mode token".into(),
        ));
    }
    let alphabet = Alphabet::synthetic(a.sigma);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let w: Vec<u32> = (0..a.n).map(|_| rng.gen_range(0..a.sigma as u32)).collect();
    write_file(&a.out, &render_sequence(&alphabet, &w, a.mode))?;

    if let (Some(count), Some(k), Some(path)) = (a.patterns, a.k, &a.patterns_out) {
        if k == 0 || k > a.n {
            return Err(CliError::Input(format!("--k must be in 1..={}", a.n)));
        }
        let mut chosen = std::collections::BTreeSet::new();
        let mut attempts = 0;
        while chosen.len() < count && attempts < 100 * count.max(1) {
            let i = rng.gen_range(0..=a.n - k);
            chosen.insert(w[i..i + k].to_vec());
            attempts += 1;
        }
        let text: String = chosen.iter().map(|p| render_sequence(&alphabet, p, a.mode)).collect();
        write_file(path, &text)?;
    }
    Ok(())
}

pub fn verify_candidate(a: &VerifyArgs) -> Result<(), CliError> {
    let inst = a.instance.load()?;
    let name = a.candidate.display().to_string();
    let mode = output_mode(inst.alphabet(), a.instance.mode);
    let t = parse_sequence(&name, &read_file(&a.candidate)?, inst.alphabet(), mode)?;
    let levels = if a.levels.is_empty() {
        Level::ALL.to_vec()
    } else {
        a.levels.clone()
    };
    let mut failed = 0;
    let mut stdout = std::io::stdout().lock();
    for level in levels {
        let line = match verify(&t, &inst, level) {
            Ok(()) => format!("{level} ok"),
            Err(v) => {
                failed += 1;
                format!("{level} FAIL {v}")
            }
        };
        let _ = writeln!(stdout, "{line}");
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Verify(failed))
    }
}

pub fn oracle(a: &OracleArgs) -> Result<(), CliError> {
    let inst = a.instance.load()?;
    let budget = OracleBudget::default();
    let (value, witness) = match a.kind {
        OracleKind::Tfs => oracle_min_tfs(&inst, budget)?,
        OracleKind::Etfs => oracle_min_etfs(&inst, budget)?,
    };
    let key = match a.kind {
        OracleKind::Tfs => "length",
        OracleKind::Etfs => "distance",
    };
    println!("{key}={value}");
    println!("witness={}", inst.render(&witness));
    Ok(())
}
