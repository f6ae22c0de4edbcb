//! The `zv` command line: `gen`, `verify` and `invariants`.
//!
//! Exit codes: 0 all verified (or consistent), 1 falsified or mismatch,
//! 2 inconclusive, 3 bad input or I/O failure.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::degeneration::build_family;
use crate::engine::{
    verify_by_coxeter_path, verify_simply_connected_with, EnumerationConfig, SimplyConnected,
    Strategy, Verdict,
};
use crate::exec::Exec;
use crate::invariants::{chern, closed_form_census, singularity_census, InvariantsReport};
use crate::presentation::{assemble_g1, AssemblyMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Inclusive range of `n`, written `3` or `3..8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: u32,
    pub end: u32,
}

impl NRange {
    pub fn values(&self) -> Vec<u32> {
        (self.start..=self.end).collect()
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad value {t:?} for n"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(NRange { start, end })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Raw,
    Simplified,
}

impl From<ModeArg> for AssemblyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Raw => AssemblyMode::Raw,
            ModeArg::Simplified => AssemblyMode::Simplified,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Felsch,
    #[value(alias = "hlt_with_lookahead")]
    Hlt,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Felsch => Strategy::Felsch,
            StrategyArg::Hlt => Strategy::HltLookahead,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Presentation,
    Degeneration,
    Gap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Enumerate all cosets of the trivial subgroup.
    Enumerate,
    /// Enumerate the cosets of a literal Coxeter path subgroup.
    CoxeterPath,
}

#[derive(Debug, Parser)]
#[command(
    name = "zv",
    version,
    about = "Galois covers of R_{n+1} ∪ R_{n+1}: presentations, coset enumeration, invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the degeneration and/or the presentation of G_1.
    Gen(GenArgs),
    /// Decide whether G_1 ≅ S_{2n+2}.
    Verify(VerifyArgs),
    /// Singularity census, Chern numbers and index.
    Invariants(InvariantsArgs),
    /// Verification and invariants together, one record per `n`.
    Report(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// `n` or an inclusive range `a..b`.
    #[arg(long, env = "ZV_N")]
    pub n: NRange,
    /// Write to this path instead of stdout (a directory for `gen`).
    #[arg(long, env = "ZV_OUT")]
    pub out: Option<PathBuf>,
    /// JSON output.
    #[arg(long, env = "ZV_JSON")]
    pub json: bool,
    /// Worker threads for per-n jobs (0: one per core).
    #[arg(long, env = "ZV_JOBS", default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, env = "ZV_MODE", default_value = "simplified")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "presentation")]
    pub emit: Vec<Emit>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, env = "ZV_MODE", default_value = "simplified")]
    pub mode: ModeArg,
    /// Bound on live cosets; defaults to 2 (2n+2)! capped by the memory budget.
    #[arg(long, env = "ZV_MAX_COSETS")]
    pub max_cosets: Option<usize>,
    #[arg(long, value_enum, env = "ZV_STRATEGY", default_value = "hlt")]
    pub strategy: StrategyArg,
    /// Memory budget for the default coset bound, in MiB.
    #[arg(long, env = "ZV_MEMORY_MIB", default_value_t = 2048)]
    pub memory_mib: u64,
    #[arg(long, value_enum, env = "ZV_METHOD", default_value = "enumerate")]
    pub method: Method,
    /// Report `wall_time_ms` as 0 so that repeated runs give identical bytes.
    #[arg(long, env = "ZV_NO_TIMINGS")]
    pub no_timings: bool,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing reports to `out` unless `--out` is given. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Invariants(a) => cmd_invariants(a, out),
        Command::Report(a) => cmd_report(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn check_n(n: NRange) -> Result<(), Failure> {
    build_family(n.start).map(|_| ()).map_err(Failure::input)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("stdout: {e}"))),
    }
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    check_n(a.common.n)?;
    let mode: AssemblyMode = a.mode.into();
    if let Some(dir) = &a.common.out {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    }
    let suffix = match mode {
        AssemblyMode::Raw => "_raw",
        AssemblyMode::Simplified => "",
    };
    let mut buffer = String::new();
    for n in a.common.n.values() {
        let d = build_family(n).map_err(Failure::input)?;
        for kind in &a.emit {
            let (name, text) = match kind {
                Emit::Degeneration => (format!("degeneration_n{n}.json"), d.to_json() + "\n"),
                Emit::Presentation => {
                    let p = assemble_g1(&d, mode).map_err(Failure::input)?;
                    (format!("presentation{suffix}_n{n}.txt"), p.to_text())
                }
                Emit::Gap => {
                    let p = assemble_g1(&d, mode).map_err(Failure::input)?;
                    (format!("presentation{suffix}_n{n}.g"), p.to_gap())
                }
            };
            match &a.common.out {
                Some(dir) => emit(&text, Some(&dir.join(name)), out)?,
                None => buffer.push_str(&text),
            }
        }
    }
    if a.common.out.is_none() {
        emit(&buffer, None, out)?;
    }
    Ok(EXIT_OK)
}

fn render<T: Serialize>(records: &[T], json: bool, line: impl Fn(&T) -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(records).expect("records serialize");
        s.push('\n');
        s
    } else {
        records.iter().map(|r| line(r) + "\n").collect()
    }
}

fn verify_records(a: &VerifyArgs) -> Result<Vec<Verdict>, Failure> {
    check_n(a.common.n)?;
    let mode: AssemblyMode = a.mode.into();
    if mode == AssemblyMode::Raw && (a.common.n.start < 3 || a.common.n.end > 4) {
        return Err(Failure::input("raw mode is only available for n in {3, 4}"));
    }
    if a.max_cosets == Some(0) {
        return Err(Failure::input("--max-cosets must be positive"));
    }
    let exec = Exec::default();
    let results: Vec<Result<Verdict, String>> = exec.with_jobs(a.common.jobs, || {
        exec.map(a.common.n.values(), |n| {
            let mut cfg = EnumerationConfig::for_n_with_budget(n, a.memory_mib << 20);
            cfg.strategy = a.strategy.into();
            if let Some(m) = a.max_cosets {
                cfg.max_cosets = m;
            }
            match a.method {
                Method::Enumerate => verify_simply_connected_with(n, mode, &cfg),
                Method::CoxeterPath => verify_by_coxeter_path(n, cfg.max_cosets).map(|r| r.0),
            }
            .map_err(|e| e.to_string())
        })
    });
    let mut verdicts = results
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::input)?;
    if a.no_timings {
        verdicts.iter_mut().for_each(|v| v.wall_time_ms = 0);
    }
    Ok(verdicts)
}

fn verdict_name(s: SimplyConnected) -> &'static str {
    match s {
        SimplyConnected::Verified => "verified",
        SimplyConnected::Falsified => "falsified",
        SimplyConnected::Inconclusive => "inconclusive",
    }
}

fn verdict_line(v: &Verdict) -> String {
    format!(
        "n={} order={} image_full_symmetric={} verdict={} cosets_defined_peak={} wall_time_ms={}",
        v.n,
        v.group_order
            .map_or("unknown".to_string(), |o| o.to_string()),
        v.image_full_symmetric,
        verdict_name(v.simply_connected),
        v.cosets_defined_peak,
        v.wall_time_ms
    )
}

fn verdict_code(verdicts: &[Verdict]) -> i32 {
    let any = |s: SimplyConnected| verdicts.iter().any(|v| v.simply_connected == s);
    if any(SimplyConnected::Falsified) {
        EXIT_FALSIFIED
    } else if any(SimplyConnected::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let verdicts = verify_records(a)?;
    let text = render(&verdicts, a.common.json, verdict_line);
    emit(&text, a.common.out.as_deref(), out)?;
    Ok(verdict_code(&verdicts))
}

/// Reports per `n`, and the `n` whose census differs from the closed forms.
fn invariant_records(common: &Common) -> Result<(Vec<InvariantsReport>, Vec<u32>), Failure> {
    check_n(common.n)?;
    let mut reports = Vec::new();
    let mut mismatch = Vec::new();
    for n in common.n.values() {
        let d = build_family(n).map_err(Failure::input)?;
        let census = singularity_census(&d).map_err(Failure::input)?;
        if census != closed_form_census(n) {
            mismatch.push(n);
        }
        let c = chern(&census).map_err(|e| Failure {
            code: EXIT_FALSIFIED,
            message: e.to_string(),
        })?;
        reports.push(InvariantsReport::new(&census, &c));
    }
    Ok((reports, mismatch))
}

fn invariants_line(r: &InvariantsReport) -> String {
    format!(
        "n={} m={} N={} p={} q={} c1_sq={} c2={} tau={} general_type={} tau_negative={}",
        r.n, r.m, r.big_n, r.p, r.q, r.c1_sq, r.c2, r.tau, r.general_type, r.tau_negative
    )
}

fn mismatch_failure(mismatch: &[u32]) -> Failure {
    Failure {
        code: EXIT_FALSIFIED,
        message: format!("census differs from the closed forms for n = {mismatch:?}"),
    }
}

fn cmd_invariants(a: &InvariantsArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (reports, mismatch) = invariant_records(&a.common)?;
    let text = render(&reports, a.common.json, invariants_line);
    emit(&text, a.common.out.as_deref(), out)?;
    if mismatch.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(mismatch_failure(&mismatch))
    }
}

#[derive(Debug, Serialize)]
struct ReportRecord {
    n: u32,
    verify: Verdict,
    invariants: InvariantsReport,
}

fn cmd_report(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (reports, mismatch) = invariant_records(&a.common)?;
    let verdicts = verify_records(a)?;
    let records: Vec<ReportRecord> = verdicts
        .into_iter()
        .zip(reports)
        .map(|(verify, invariants)| ReportRecord {
            n: verify.n,
            verify,
            invariants,
        })
        .collect();
    let text = render(&records, a.common.json, |r| {
        format!(
            "{}\n{}",
            verdict_line(&r.verify),
            invariants_line(&r.invariants)
        )
    });
    emit(&text, a.common.out.as_deref(), out)?;
    if !mismatch.is_empty() {
        return Err(mismatch_failure(&mismatch));
    }
    let verdicts: Vec<Verdict> = records.iter().map(|r| r.verify.clone()).collect();
    Ok(verdict_code(&verdicts))
}
