//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a verification or theory check failed, `2`
//! usage error (bad flags, unsupported format, out-of-range arguments).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dag::{build_dag, label, remark_distance_report};
use crate::error::Error;
use crate::exact::{parse_rational, Rational};
use crate::jordan2d::build_chain_2d;
use crate::jordan3d::{conjecture_check, jordan_basis, minors_report};
use crate::operator::OuContext;
use crate::oracle::{compare_with_theory, jordan_structure, theory_prediction};
use crate::verify::run_sweep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "oujordan", version, about = "Exact Jordan structure of Ornstein-Uhlenbeck operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The single Jordan chain for d = 2.
    D2(LevelArgs),
    /// All Jordan chains for d = 3.
    D3(LevelArgs),
    /// Brute-force Jordan structure for any d, compared with theory for d = 2, 3.
    Oracle {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[command(flatten)]
        level: LevelArgs,
    },
    /// The grade-n basis DAG.
    Dag(LevelArgs),
    /// The S_k eigenvector experiment and minor survey.
    Conjecture(LevelArgs),
    /// The full invariant sweep for d = 2 and d = 3.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
pub struct LevelArgs {
    /// Eigenvalue level: γ = −n·c.
    #[arg(long)]
    pub n: usize,
    /// Drift rate, as an integer or p/q.
    #[arg(long, default_value = "1", value_parser = rational_arg)]
    pub c: Rational,
    /// Diffusion coefficient, as an integer or p/q.
    #[arg(long, default_value = "1", value_parser = rational_arg)]
    pub sigma2: Rational,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidContext(_) | Error::ParseRational(_) | Error::BadIndex { .. } | Error::OutOfTheoryScope { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

/// Sorted-key, pretty JSON with a trailing newline.
fn to_json<T: Serialize>(value: &T) -> String {
    let value: Value = serde_json::to_value(value).expect("serialisable");
    let mut s = serde_json::to_string_pretty(&value).expect("serialisable");
    s.push('\n');
    s
}

fn context(d: usize, args: &LevelArgs) -> Result<OuContext, Failure> {
    Ok(OuContext::new(d, args.c.clone(), args.sigma2.clone(), args.n)?)
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!(
            "format {:?} is not available for this command",
            f
        )))
    }
}

/// Output text plus whether the command's own checks passed.
fn execute(command: &Command) -> Result<(String, bool), Failure> {
    use Format::*;
    match command {
        Command::D2(args) => {
            let format = pick(args.out.format, Json, &[Json, Text])?;
            let chain = build_chain_2d(args.n, &context(2, args)?)?;
            let text = match format {
                Json => to_json(&chain.to_json()),
                _ => chain
                    .elements
                    .iter()
                    .enumerate()
                    .map(|(k, p)| format!("(γ−A)^{k} G_{} = {p}\n", args.n))
                    .collect(),
            };
            Ok((text, true))
        }
        Command::D3(args) => {
            let format = pick(args.out.format, Json, &[Json, Text])?;
            let basis = jordan_basis(args.n, &context(3, args)?)?;
            let text = match format {
                Json => to_json(&basis.to_json()),
                _ => {
                    let mut out = format!(
                        "n={} segre={:?} geometric={} algebraic={}\n",
                        basis.n,
                        basis.segre(),
                        basis.geometric_multiplicity(),
                        basis.algebraic_multiplicity()
                    );
                    for chain in &basis.chains {
                        out.push_str(&format!("k={} q={}\n  f = {}\n  h = {}\n", chain.k, chain.q, chain.lead, chain.eigenfunction()));
                    }
                    out
                }
            };
            Ok((text, true))
        }
        Command::Oracle { d, level } => {
            let format = pick(level.out.format, Json, &[Json, Text])?;
            let ctx = context(*d, level)?;
            let (oracle, theory) = match theory_prediction(*d, level.n) {
                Ok(_) => {
                    let cmp = compare_with_theory(&ctx)?;
                    (cmp.oracle, Some(cmp.theory))
                }
                Err(Error::OutOfTheoryScope { .. }) => (jordan_structure(&ctx)?, None),
                Err(e) => return Err(e.into()),
            };
            let text = match format {
                Json => to_json(&json!({
                    "d": d,
                    "n": level.n,
                    "oracle": oracle,
                    "theory": theory,
                })),
                _ => format!(
                    "d={} n={} segre={:?} geometric={} algebraic={} index={} theory={}\n",
                    d,
                    level.n,
                    oracle.segre,
                    oracle.geometric,
                    oracle.algebraic,
                    oracle.index,
                    if theory.is_some() { "agrees" } else { "out of scope" }
                ),
            };
            Ok((text, true))
        }
        Command::Dag(args) => {
            let format = pick(args.out.format, Dot, &[Json, Dot, Text])?;
            let dag = build_dag(args.n);
            let text = match format {
                Dot => dag.export_dot(),
                Json => to_json(&json!({
                    "dag": dag.to_json(),
                    "remark_distances": remark_distance_report(args.n),
                })),
                Text => {
                    let mut out = String::new();
                    for h in 0..=2 * args.n {
                        let layer: Vec<String> = dag.vertices_at_height(h).iter().map(|v| label(v, args.n)).collect();
                        if !layer.is_empty() {
                            out.push_str(&format!("height {h}: {}\n", layer.join(" ")));
                        }
                    }
                    out
                }
            };
            Ok((text, true))
        }
        Command::Conjecture(args) => {
            let format = pick(args.out.format, Json, &[Json, Text])?;
            if args.n == 0 {
                return Err(Failure::Usage("conjecture needs n >= 1".into()));
            }
            let report = conjecture_check(args.n);
            let minors = minors_report(args.n, usize::MAX);
            let clean = minors.is_clean();
            let text = match format {
                Json => to_json(&json!({
                    "conjecture": report,
                    "minors": minors,
                })),
                _ => {
                    let mut out = String::new();
                    for row in &report.rows {
                        out.push_str(&format!(
                            "n={} k={} lambda={} holds={} S_k eigenvalues={}\n",
                            args.n,
                            row.k,
                            row.lambda,
                            row.holds,
                            row.integer_eigenvalues
                                .as_ref()
                                .map_or("?".to_string(), |v| v.join(","))
                        ));
                    }
                    out.push_str(&format!(
                        "minors: {} negative, det S = {}\n",
                        minors.negative_count(),
                        minors.det_s.join(",")
                    ));
                    out
                }
            };
            Ok((text, clean))
        }
        Command::Verify { max_n, out } => {
            let format = pick(out.format, Text, &[Json, Text])?;
            let report = run_sweep(*max_n);
            let text = match format {
                Json => to_json(&report),
                _ => report.log(),
            };
            Ok((text, report.passed()))
        }
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::D2(a) | Command::D3(a) | Command::Dag(a) | Command::Conjecture(a) => &a.out,
        Command::Oracle { level, .. } => &level.out,
        Command::Verify { out, .. } => out,
    }
}

/// Runs the CLI with explicit streams; returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let (text, passed) = match execute(&cli.command) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(stderr, "verification failed: {msg}");
            return EXIT_FAILURE;
        }
    };
    let written = match &output_args(&cli.command).output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: cannot write output: {msg}");
        return EXIT_USAGE;
    }
    if !passed {
        let _ = writeln!(stderr, "verification failed");
        return EXIT_FAILURE;
    }
    EXIT_OK
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
