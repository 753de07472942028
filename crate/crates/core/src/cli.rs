//! The `grover` command-line tool: argument parsing, report rendering and
//! the CSV trajectory writer.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::analytic::{classical_comparison, success_probability};
use crate::baseline::{self, monte_carlo_stats, Strategy};
use crate::circuit4::{build_circuit, oracle_equivalence_check, run_circuit, OracleStyle, TwoBitString};
use crate::engine::{self, RunOutcome};
use crate::error::GroverError;
use crate::oracle::{kickback_equivalence_check, oracle_matrix, phase_oracle_apply, MarkedSet};
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};
use crate::verify;

/// Environment variable overriding the qubit cap.
pub const MAX_QUBITS_ENV: &str = "GROVER_MAX_QUBITS";

pub const CSV_HEADER: &str = "iteration,success_probability,marked_amplitude,unmarked_amplitude,analytic_probability";

/// Largest allowed gap between simulated and closed-form sweep columns.
pub const SWEEP_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "grover", version, about = "Grover search simulator and analysis toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one search and report the plan and outcome
    Run(RunArgs),
    /// Simulated vs closed-form success probability over a range of iteration counts
    Sweep(SweepArgs),
    /// Gate-level four-item circuit with a stage-by-stage state trace
    Circuit4(Circuit4Args),
    /// Classical query baselines next to the quantum query count
    Baseline(BaselineArgs),
    /// Check the bit-flip and phase oracles against each other
    OracleCheck(OracleCheckArgs),
    /// Reproduce every reference number and print a comparison table
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Number of qubits in the search register
    #[arg(long)]
    pub n: usize,
    /// Marked items: comma-separated decimal indices and/or `b`-prefixed bit strings (e.g. 5 or b101)
    #[arg(long)]
    pub marked: String,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    /// Override the number of Grover iterations (default: optimal)
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Write the trajectory CSV here
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    /// Inclusive iteration range `A..B` (default: 0..2·k_opt)
    #[arg(long)]
    pub sweep: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct Circuit4Args {
    /// Two-bit marked string x₁x₂
    #[arg(long)]
    pub marked: String,
    /// Oracle implementation: `simplified` (C-Z) or `toffoli`
    #[arg(long, default_value = "simplified")]
    pub oracle: String,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long)]
    pub n: usize,
    /// Monte Carlo trials
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OracleCheckArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "")]
    pub marked: String,
    /// Random states compared
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Replace every row's tolerance (negative values force failure)
    #[arg(long, hide = true, allow_negative_numbers = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Grover(#[from] GroverError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Reads the qubit cap from `GROVER_MAX_QUBITS`, falling back to the default.
pub fn max_qubits_from_env() -> CliResult<usize> {
    match std::env::var(MAX_QUBITS_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&cap| (1..usize::BITS as usize).contains(&cap))
            .ok_or_else(|| CliError::Usage(format!("{MAX_QUBITS_ENV}={raw:?} is not a valid qubit count"))),
        Err(_) => Ok(DEFAULT_MAX_QUBITS),
    }
}

/// Parses `5`, `b101`, or a comma-separated mix into a marked set over `n` qubits.
pub fn parse_marked(spec: &str, n: usize) -> CliResult<MarkedSet> {
    let mut indices = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let index = if let Some(bits) = token.strip_prefix('b') {
            if bits.len() != n || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(CliError::Usage(format!(
                    "marked item {token:?} must be `b` followed by exactly {n} binary digits"
                )));
            }
            usize::from_str_radix(bits, 2).map_err(|e| CliError::Usage(e.to_string()))?
        } else {
            token
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("marked item {token:?} is not an index")))?
        };
        indices.push(index);
    }
    Ok(MarkedSet::new(n, indices)?)
}

/// Parses an inclusive range `A..B` with `A ≤ B`.
pub fn parse_sweep(spec: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("sweep range {spec:?} must look like A..B with A ≤ B"));
    let (a, b) = spec.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (
        a.trim().parse::<usize>().map_err(|_| bad())?,
        b.trim().parse::<usize>().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Fixed-point with 12 decimals; negative zero prints as zero.
pub fn fmt12(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.starts_with('-') && s[1..].bytes().all(|c| c == b'0' || c == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Trajectory rows `from..=to` as CSV with LF line endings.
pub fn trajectory_csv(outcome: &RunOutcome, from: usize, to: usize) -> String {
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for rec in outcome.trajectory.records().iter().filter(|r| (from..=to).contains(&r.k)) {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            rec.k,
            fmt12(rec.success_probability),
            fmt12(rec.marked_amplitude),
            fmt12(rec.unmarked_amplitude),
            fmt12(success_probability(outcome.plan.theta, rec.k)),
        );
    }
    csv
}

fn describe_marked(marked: &MarkedSet) -> String {
    let items: Vec<String> = marked.indices().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn plan_report(out: &mut String, marked: &MarkedSet, outcome: &RunOutcome) {
    let p = &outcome.plan;
    let _ = writeln!(
        out,
        "search           n = {}, N = {}, M = {}, marked = {}",
        marked.qubit_count(),
        p.size,
        p.solutions,
        describe_marked(marked)
    );
    let _ = writeln!(out, "theta            {} rad ({:.2} deg)", fmt12(p.theta), p.theta.to_degrees());
    let rot = p.rotation_per_iteration();
    let _ = writeln!(out, "rotation/iter    {} rad ({:.2} deg)", fmt12(rot), rot.to_degrees());
    let _ = writeln!(
        out,
        "k_opt            {} ((pi/4)sqrt(N/M) = {:.4})",
        p.k_opt,
        p.approximate_iterations()
    );
    let _ = writeln!(out, "predicted        {}", fmt12(p.predicted_success));
}

/// Runs one parsed command, writing the report to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write, max_qubits: usize) -> CliResult<()> {
    match &cli.command {
        Command::Run(args) => cmd_run(args, out, max_qubits),
        Command::Sweep(args) => cmd_sweep(args, out, max_qubits),
        Command::Circuit4(args) => cmd_circuit4(args, out),
        Command::Baseline(args) => cmd_baseline(args, out),
        Command::OracleCheck(args) => cmd_oracle_check(args, out),
        Command::Verify(args) => cmd_verify(args, out),
    }
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write, max_qubits: usize) -> CliResult<()> {
    let marked = parse_marked(&args.search.marked, args.search.n)?;
    let outcome = engine::run_with_cap(&marked, args.iterations, max_qubits)?;
    let csv = trajectory_csv(&outcome, 0, outcome.iterations);
    if let Some(path) = &args.out {
        fs::write(path, &csv)?;
    }
    if args.format == OutputFormat::Csv && args.out.is_none() {
        out.write_all(csv.as_bytes())?;
        return Ok(());
    }
    let mut report = String::new();
    plan_report(&mut report, &marked, &outcome);
    let _ = writeln!(report, "k                {}", outcome.iterations);
    let _ = writeln!(report, "success          {}", fmt12(outcome.success_probability()));
    let _ = writeln!(report, "oracle queries   {}", outcome.queries);
    if let Some(path) = &args.out {
        let _ = writeln!(report, "trajectory       {}", path.display());
    }
    out.write_all(report.as_bytes())?;
    Ok(())
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, max_qubits: usize) -> CliResult<()> {
    let marked = parse_marked(&args.search.marked, args.search.n)?;
    let plan = engine::plan(marked.space_size(), marked.len())?;
    let (from, to) = match &args.sweep {
        Some(spec) => parse_sweep(spec)?,
        None => (0, 2 * plan.k_opt),
    };
    let outcome = engine::run_with_cap(&marked, Some(to), max_qubits)?;
    let csv = trajectory_csv(&outcome, from, to);
    if let Some(path) = &args.out {
        fs::write(path, &csv)?;
    }

    let mut worst = 0.0f64;
    let mut table = String::new();
    let _ = writeln!(table, "{:>9}  {:>16}  {:>16}  {:>10}", "iteration", "simulated", "analytic", "|Δ|");
    for rec in outcome.trajectory.records().iter().filter(|r| r.k >= from) {
        let analytic = success_probability(plan.theta, rec.k);
        let delta = (rec.success_probability - analytic).abs();
        worst = worst.max(delta);
        let peak = if rec.k == plan.k_opt { "  <- k_opt" } else { "" };
        let _ = writeln!(
            table,
            "{:>9}  {:>16}  {:>16}  {:>10.3e}{peak}",
            rec.k,
            fmt12(rec.success_probability),
            fmt12(analytic),
            delta
        );
    }
    if args.format == OutputFormat::Csv && args.out.is_none() {
        out.write_all(csv.as_bytes())?;
    } else {
        out.write_all(table.as_bytes())?;
    }
    if worst >= SWEEP_TOLERANCE {
        return Err(CliError::Verification(format!(
            "simulated and analytic columns differ by {worst:.3e}"
        )));
    }
    Ok(())
}

fn format_state(state: &StateVector) -> String {
    let amps: Vec<String> = state
        .amplitudes()
        .iter()
        .map(|a| {
            if a.im.abs() < 1e-12 {
                format!("{:.6}", if a.re == 0.0 { 0.0 } else { a.re })
            } else {
                format!("{:.6}{:+.6}i", a.re, a.im)
            }
        })
        .collect();
    format!("({})", amps.join(", "))
}

pub fn cmd_circuit4(args: &Circuit4Args, out: &mut dyn Write) -> CliResult<()> {
    let marked = TwoBitString::from_str(&args.marked)?;
    let style = OracleStyle::from_str(&args.oracle).map_err(CliError::Usage)?;
    let spec = build_circuit(marked, style);
    let run = run_circuit(&spec)?;

    let mut report = String::new();
    let _ = writeln!(report, "{spec}");
    let _ = writeln!(report);
    for snap in &run.stages {
        let _ = writeln!(report, "{:<22} {}", snap.label, format_state(&snap.state));
    }
    let _ = writeln!(report);
    if let Some(bit) = run.outcome.oracle_bit {
        let _ = writeln!(report, "oracle qubit     {bit}");
    }
    let _ = writeln!(report, "probability      {}", fmt12(run.probability));
    let _ = writeln!(report, "oracle calls     {}", run.oracle_calls);
    let _ = writeln!(report, "ab               {}", run.outcome.output_string());
    let ok = run.outcome.output_string() == marked.to_string();
    let _ = writeln!(report, "{}", if ok { "PASS" } else { "FAIL" });
    out.write_all(report.as_bytes())?;
    if !ok {
        return Err(CliError::Verification(format!(
            "circuit returned {} for marked {marked}",
            run.outcome.output_string()
        )));
    }
    Ok(())
}

pub fn cmd_baseline(args: &BaselineArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.n == 0 || args.n >= usize::BITS as usize {
        return Err(CliError::Usage(format!("--n {} is out of range", args.n)));
    }
    let size = 1usize << args.n;
    let cmp = classical_comparison(size)?;
    let random = baseline::baseline(size, Strategy::RandomDistinct)?;
    let mc = monte_carlo_stats(size, args.trials, args.seed)?;
    let mut report = String::new();
    let _ = writeln!(report, "N                        {size}");
    let _ = writeln!(report, "quantum queries (k_opt)  {}", cmp.quantum_queries);
    let _ = writeln!(report, "classical, sequential    {}", fmt12(cmp.classical_expected));
    let _ = writeln!(report, "classical, random order  {}", fmt12(random.expected_queries));
    let _ = writeln!(report, "classical for p = 1/2    {}", cmp.classical_for_half);
    let _ = writeln!(
        report,
        "monte carlo (sequential) {} ± {:.6} ({} trials, seed {})",
        fmt12(mc.mean),
        mc.std_dev / (mc.trials as f64).sqrt(),
        mc.trials,
        args.seed
    );
    out.write_all(report.as_bytes())?;
    Ok(())
}

pub fn cmd_oracle_check(args: &OracleCheckArgs, out: &mut dyn Write) -> CliResult<()> {
    let marked = parse_marked(&args.marked, args.n)?;
    let kick = kickback_equivalence_check(&marked, args.trials, args.seed)?;
    let u = StateVector::uniform(args.n)?;
    let matrix_dev = oracle_matrix(&marked)?
        .apply(&u)?
        .max_abs_diff(&phase_oracle_apply(&u, &marked)?);
    let mut report = String::new();
    let _ = writeln!(report, "marked                 {}", describe_marked(&marked));
    let _ = writeln!(
        report,
        "kickback deviation     {:.3e} over {} states  {}",
        kick.max_deviation,
        kick.trials,
        if kick.equivalent { "PASS" } else { "FAIL" }
    );
    let matrix_ok = matrix_dev < 1e-12;
    let _ = writeln!(
        report,
        "matrix vs direct       {matrix_dev:.3e}  {}",
        if matrix_ok { "PASS" } else { "FAIL" }
    );
    if marked.qubit_count() == 2 {
        for m in TwoBitString::ALL.iter().filter(|m| marked.len() == 1 && marked.contains(m.index())) {
            let eq = oracle_equivalence_check(*m, args.trials, args.seed)?;
            let _ = writeln!(
                report,
                "toffoli vs c-z         {:.3e}  {}",
                eq.max_deviation,
                if eq.equivalent { "PASS" } else { "FAIL" }
            );
        }
    }
    out.write_all(report.as_bytes())?;
    if !(kick.equivalent && matrix_ok) {
        return Err(CliError::Verification("oracle forms disagree".into()));
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let rows = verify::verification_rows()?;
    let (table, ok) = verify::render(&rows, args.tolerance);
    out.write_all(table.as_bytes())?;
    if !ok {
        return Err(CliError::Verification("one or more checks failed".into()));
    }
    Ok(())
}
