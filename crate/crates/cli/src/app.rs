use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use tricover_core::covers::{analyze, genus_borel, genus_full, ClassifyOptions, GenusLevel};
use tricover_core::polyarith::lambda_minpoly;
use tricover_core::residue::{primes_above, PrimeIdeal, TriangleParams};
use tricover_core::sl2::DEFAULT_CLOSURE_CAP;

use crate::table::{build_rows, to_csv, to_json};
use crate::verify::{run_verify, VerifyConfig};
use crate::{core_exit_code, json, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "tricover",
    version,
    about = "Congruence covers of (q, inf, inf) triangle groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal polynomial of lambda_q = 2 cos(pi/q)
    Minpoly {
        #[arg(short)]
        q: u64,
    },
    /// Prime ideals of Z[lambda_q] above p
    Ideals {
        #[arg(short)]
        q: u64,
        #[arg(short)]
        p: u64,
    },
    /// Galois group and degree of the full congruence cover
    Classify {
        #[arg(short)]
        q: u64,
        #[arg(short)]
        p: u64,
        /// Only this ideal (position in the `ideals` output)
        #[arg(long)]
        ideal: Option<usize>,
        /// Confirm the classification by brute-force closure
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: u64,
    },
    /// Genera of the full and Borel congruence curves
    Genus {
        #[arg(short)]
        q: u64,
        #[arg(short)]
        p: u64,
        #[arg(long)]
        ideal: Option<usize>,
        #[arg(long, value_enum, default_value_t = Level::Both)]
        level: Level,
    },
    /// One row per (q, p, ideal) over the given lists
    Table {
        /// Comma-separated odd q >= 3
        #[arg(long = "q")]
        qs: String,
        /// Comma-separated primes; may be empty
        #[arg(long = "p", allow_hyphen_values = true)]
        ps: String,
        #[arg(long, value_enum, default_value_t = Level::Both)]
        level: Level,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Closure-check every classification
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: u64,
    },
    /// Re-derive every closed form by brute force over a range
    Verify {
        #[arg(long, default_value_t = 15)]
        max_q: u64,
        #[arg(long, default_value_t = 13)]
        max_p: u64,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Full,
    Borel,
    Both,
}

impl From<Level> for GenusLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Full => GenusLevel::Full,
            Level::Borel => GenusLevel::Borel,
            Level::Both => GenusLevel::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Comma-separated integers; empty entries are ignored, so `""` is the
/// empty list.
pub fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::BadList(t.to_string())))
        .collect()
}

fn select(q: u64, p: u64, index: Option<usize>) -> Result<Vec<PrimeIdeal>, CliError> {
    let all = primes_above(q, p)?;
    match index {
        None => Ok(all),
        Some(k) => {
            let count = all.len();
            let ideal =
                all.into_iter()
                    .nth(k)
                    .ok_or(CliError::NoSuchIdeal { index: k, count, p })?;
            Ok(vec![ideal])
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes())
        .map_err(|source| CliError::Write {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

/// Executes one command, writing its output to `out`. Verification
/// verdicts are written before a failing verification returns its error.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Minpoly { q } => {
            let t = lambda_minpoly(q)?;
            let coeffs: Vec<Value> = t
                .coeffs()
                .iter()
                .map(|c| Value::Number(c.to_string().parse().expect("integer")))
                .collect();
            emit(out, &format!("{t}\n{}\n", Value::Array(coeffs)))
        }
        Command::Ideals { q, p } => {
            let ideals: Vec<Value> = primes_above(q, p)?
                .iter()
                .map(json::ideal_summary)
                .collect();
            emit(out, &pretty(&Value::Array(ideals)))
        }
        Command::Classify {
            q,
            p,
            ideal,
            verify,
            cap,
        } => {
            let params = TriangleParams::new(q)?;
            let opts = ClassifyOptions { verify, cap };
            let mut reports = Vec::new();
            for i in select(q, p, ideal)? {
                reports.push(json::report(&analyze(&params, &i, opts, GenusLevel::None)?));
            }
            emit(out, &pretty(&Value::Array(reports)))
        }
        Command::Genus { q, p, ideal, level } => {
            let params = TriangleParams::new(q)?;
            let mut reports = Vec::new();
            for i in select(q, p, ideal)? {
                // a single requested genus must exist; `both` tolerates blanks
                match level {
                    Level::Full => drop(genus_full(&params, &i)?),
                    Level::Borel => drop(genus_borel(&params, &i)?),
                    Level::Both => {}
                }
                let r = analyze(&params, &i, ClassifyOptions::default(), level.into())?;
                reports.push(json::report(&r));
            }
            emit(out, &pretty(&Value::Array(reports)))
        }
        Command::Table {
            qs,
            ps,
            level,
            format,
            out: path,
            verify,
            cap,
        } => {
            let rows = build_rows(
                &parse_list(&qs)?,
                &parse_list(&ps)?,
                level.into(),
                ClassifyOptions { verify, cap },
            )?;
            let text = match format {
                Format::Csv => to_csv(&rows),
                Format::Json => to_json(&rows),
            };
            match path {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|source| CliError::Write { path, source })
                }
                None => emit(out, &text),
            }
        }
        Command::Verify { max_q, max_p, cap } => {
            let summary = run_verify(VerifyConfig { max_q, max_p, cap })?;
            for v in &summary.families {
                emit(out, &format!("{v}\n"))?;
            }
            match summary.first_error() {
                None => emit(out, "all checks passed\n"),
                Some(e) => Err(CliError::VerifyFailed {
                    code: core_exit_code(e),
                }),
            }
        }
    }
}
