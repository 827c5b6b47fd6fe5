//! Command-line parsing and dispatch. `run` returns the process exit code:
//! 0 when everything matches, 1 on a mismatch or failed suite, 2 on bad
//! configuration.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::code::CodeSpec;
use crate::cwe::{verify, Mode};
use crate::error::{Error, Result};
use crate::field::{Field, FieldParams, DEFAULT_Q_CAP};
use crate::poly::is_prime;
use crate::report::{render_suite, render_sweep, render_verify, Format};
use crate::suites::{census_suite, coulter_suite, gauss_suite, legendre_suite, FieldSelection, SuiteKind};
use crate::sweep::{check_primes, fields_up_to, run_sweep};

pub const CAP_ENV: &str = "TRACE_CODES_CAP";

#[derive(Debug, Parser)]
#[command(name = "trace-codes", version, about = "Complete weight enumerators of trace codes over F_{p^e}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare enumerated and closed-form CWEs for one code.
    Verify(VerifyArgs),
    /// Verify every admissible code with p^e <= max-q.
    Sweep(SweepArgs),
    /// Run a character-sum oracle suite.
    Sums(SumsArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub e: u32,
    #[arg(long)]
    pub alpha: u32,
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub c: u32,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 100_000)]
    pub max_q: u64,
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    pub primes: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SumsArgs {
    #[arg(long, value_enum)]
    pub kind: SuiteKind,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Largest q visited; 2000 for coulter, 10000 otherwise.
    #[arg(long)]
    pub max_q: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u32>>,
    #[command(flatten)]
    pub output: Output,
}

/// Rendered report plus whether it counts as success.
struct Outcome {
    text: String,
    ok: bool,
    /// Lines for stderr, e.g. the mismatching specs of a sweep.
    notes: Vec<String>,
}

fn cap_from_env() -> Result<u64> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::param(format!("{CAP_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_Q_CAP),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 1,
        _ => 2,
    }
}

pub fn run(cli: Cli) -> i32 {
    let output = match &cli.command {
        Command::Verify(a) => &a.output,
        Command::Sweep(a) => &a.output,
        Command::Sums(a) => &a.output,
    };
    let result = match output.threads {
        Some(0) => Err(Error::param("--threads must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::param(format!("cannot start {n} threads: {e}")))
            .and_then(|pool| pool.install(|| execute(&cli.command))),
        None => execute(&cli.command),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &output.out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.text.as_bytes()).map_err(|e| format!("cannot write stdout: {e}"))
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return 2;
    }
    for n in &outcome.notes {
        eprintln!("{n}");
    }
    if outcome.ok {
        0
    } else {
        1
    }
}

fn execute(cmd: &Command) -> Result<Outcome> {
    let cap = cap_from_env()?;
    match cmd {
        Command::Verify(a) => {
            let params = FieldParams::with_cap(a.p, a.e, a.alpha, cap)?;
            let spec = CodeSpec::new(Arc::new(Field::new(params)?), a.a, a.c)?;
            let report = verify(&spec, a.mode)?;
            let notes = if report.is_match() { vec![] } else { vec!["mismatch: see diffs".to_string()] };
            Ok(Outcome { text: render_verify(&report, a.output.format)?, ok: report.is_match(), notes })
        }
        Command::Sweep(a) => {
            let summary = run_sweep(a.max_q, &a.primes, cap, a.mode)?;
            let notes = summary
                .mismatches
                .iter()
                .map(|c| format!("mismatch: p={} e={} alpha={} a={} c={}", c.p, c.e, c.alpha, c.a, c.c))
                .collect();
            Ok(Outcome { text: render_sweep(&summary, a.output.format)?, ok: summary.all_match(), notes })
        }
        Command::Sums(a) => {
            let report = match a.kind {
                SuiteKind::Legendre => legendre_suite(&legendre_primes(a)?)?,
                kind => {
                    let sel = selection(a, cap)?;
                    match kind {
                        SuiteKind::Gauss => gauss_suite(&sel)?,
                        SuiteKind::Census => census_suite(&sel)?,
                        _ => coulter_suite(&sel)?,
                    }
                }
            };
            Ok(Outcome { text: render_suite(&report, a.output.format)?, ok: report.pass, notes: vec![] })
        }
    }
}

fn odd_primes_up_to(n: u64) -> Vec<u32> {
    (3..=n.min(u32::MAX as u64) as u32).filter(|&p| is_prime(p as u64)).collect()
}

fn legendre_primes(a: &SumsArgs) -> Result<Vec<u32>> {
    let primes = match (a.p, &a.primes) {
        (Some(p), _) => vec![p],
        (None, Some(ps)) => ps.clone(),
        (None, None) => odd_primes_up_to(23),
    };
    check_primes(&primes)?;
    Ok(primes)
}

/// Fields for a field-based suite: an explicit (p, e), or every even e
/// with p^e <= max-q for the chosen primes.
fn selection(a: &SumsArgs, cap: u64) -> Result<FieldSelection> {
    let max_q = a.max_q.unwrap_or(if a.kind == SuiteKind::Coulter { 2000 } else { 10_000 });
    let fields = match (a.p, a.e) {
        (Some(p), Some(e)) => {
            FieldParams::with_cap(p, e, a.alpha.unwrap_or(1), cap)?;
            vec![(p, e)]
        }
        (p, e) => {
            let primes = match (p, &a.primes) {
                (Some(p), _) => vec![p],
                (None, Some(ps)) => ps.clone(),
                (None, None) => odd_primes_up_to((max_q as f64).sqrt() as u64),
            };
            check_primes(&primes)?;
            fields_up_to(max_q.min(cap), &primes, 2).into_iter().filter(|&(_, fe)| e.is_none_or(|e| e == fe)).collect()
        }
    };
    if fields.is_empty() {
        return Err(Error::param("no admissible parameters"));
    }
    if a.alpha == Some(0) {
        return Err(Error::param("alpha must be a positive integer"));
    }
    Ok(FieldSelection { fields, alpha: a.alpha, cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("trace-codes").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_parse() {
        let cli = parse(&["sweep", "--max-q", "7000", "--primes", "3,5", "--format", "csv"]);
        match cli.command {
            Command::Sweep(a) => {
                assert_eq!(a.primes, vec![3, 5]);
                assert_eq!(a.max_q, 7000);
                assert_eq!(a.output.format, Format::Csv);
                assert_eq!(a.mode, Mode::Both);
            }
            _ => panic!("expected sweep"),
        }
        assert!(Cli::try_parse_from(["trace-codes", "sums", "--kind", "bogus"]).is_err());
    }

    #[test]
    fn default_selections() {
        let Command::Sums(a) = parse(&["sums", "--kind", "coulter"]).command else { panic!() };
        let sel = selection(&a, DEFAULT_Q_CAP).unwrap();
        assert_eq!(sel.fields, vec![(3, 2), (3, 4), (3, 6), (5, 2), (5, 4), (7, 2), (11, 2), (13, 2), (17, 2), (19, 2), (23, 2), (29, 2), (31, 2), (37, 2), (41, 2), (43, 2)]);
        let Command::Sums(a) = parse(&["sums", "--kind", "legendre"]).command else { panic!() };
        assert_eq!(legendre_primes(&a).unwrap(), vec![3, 5, 7, 11, 13, 17, 19, 23]);
        let Command::Sums(a) = parse(&["sums", "--kind", "census", "--p", "3", "--e", "4", "--alpha", "1"]).command
        else {
            panic!()
        };
        assert_eq!(selection(&a, DEFAULT_Q_CAP).unwrap().fields, vec![(3, 4)]);
    }
}
