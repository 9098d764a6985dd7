//! Command-line front end. Exit codes: 0 success, 1 internal error,
//! 2 precondition violation, 3 mismatch against published table data.

pub mod scan;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use crate::criterion::{
    congruent_verdict, cubes_verdict, f_sum_with_forms, level_data, levels, parity_test,
    vanishing_verdict, Congruence, CubesOutcome, Vanishing, VanishingVerdict,
};
use crate::error::Error;
use crate::oracle::{estimate_l_value, CurveRegistry, LValueEstimate, OracleConfig};
use crate::tables::{self, TableFixture, TableName, UnderlinedStatus};

pub use scan::{ScanOptions, ScanRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Environment variable that overrides `--data-dir`.
pub const DATA_DIR_ENV: &str = "LCRIT_DATA_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "lcrit",
    version,
    about = "Vanishing of central L-values of quadratic twists"
)]
pub struct Cli {
    /// Directory of per-level curve/eta JSON files (default: built-in data).
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    /// Cross-check with a truncated L-series estimate.
    #[arg(long)]
    pub oracle: bool,
    /// Number of series terms (default: ceil(6·sqrt(N·D²))).
    #[arg(long, value_name = "M")]
    pub oracle_terms: Option<usize>,
}

impl OracleArgs {
    fn config(&self) -> Option<OracleConfig> {
        self.oracle.then(|| OracleConfig {
            terms: self.oracle_terms,
            ..Default::default()
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide L(E_D,1) = 0 for one level and discriminant.
    Check {
        #[arg(long)]
        level: u32,
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Print the enumerated forms as JSON arrays of [a,b,c].
        #[arg(long)]
        dump_forms: bool,
    },
    /// Scan D from --from down to --to, one row per accepted D.
    Scan {
        #[arg(long)]
        level: u32,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        /// Only fundamental D meeting the level's good-discriminant condition.
        #[arg(long)]
        good_only: bool,
        /// Worker threads (default: available parallelism).
        #[arg(long, value_name = "N")]
        parallel: Option<usize>,
        /// NDJSON instead of CSV.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a reference table and compare with the shipped values.
    Table {
        /// maincor, primes, cubes or discs
        name: String,
        /// Skip rows with |D| above this bound.
        #[arg(long)]
        max_abs_d: Option<u64>,
        /// Compare against this fixture file instead of the built-in values.
        #[arg(long, value_name = "FILE")]
        expected: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        parallel: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Congruent-number verdict for n ≡ 3 (mod 8).
    Congruent {
        n: i64,
        #[arg(long)]
        json: bool,
    },
    /// Finiteness of rational points on x³ + n·y² = 432 for n ≡ 1 (mod 3).
    Cubes {
        n: i64,
        #[arg(long)]
        json: bool,
    },
    /// Parity of #S_{32,3p}(1/3) for a prime p ≡ 3 (mod 8).
    Parity {
        p: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Internal(String),
    #[error("{0} row(s) differ from the reference table")]
    Mismatch(usize),
}

impl From<scan::ScanError> for CliError {
    fn from(e: scan::ScanError) -> Self {
        match e {
            scan::ScanError::Lib(e) => CliError::Lib(e),
            scan::ScanError::Io(e) => CliError::Io(e),
            scan::ScanError::Internal(s) => CliError::Internal(s),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_precondition() => EXIT_PRECONDITION,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            _ => EXIT_INTERNAL,
        }
    }
}

type CliResult = std::result::Result<(), CliError>;

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_PRECONDITION
            } else {
                EXIT_OK
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn registry(cli_dir: Option<PathBuf>) -> std::result::Result<CurveRegistry, CliError> {
    let dir = std::env::var_os(DATA_DIR_ENV)
        .map(PathBuf::from)
        .or(cli_dir);
    match dir {
        Some(dir) => Ok(CurveRegistry::load_dir(&dir)?),
        None => Ok(CurveRegistry::builtin()),
    }
}

fn workers(parallel: Option<usize>) -> usize {
    parallel
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

fn execute(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Check {
            level,
            disc,
            json,
            oracle,
            dump_forms,
        } => {
            let reg = if oracle.oracle {
                Some(registry(cli.data_dir)?)
            } else {
                None
            };
            cmd_check(
                level,
                disc,
                json,
                oracle.config(),
                reg.as_ref(),
                dump_forms,
                out,
            )
        }
        Command::Scan {
            level,
            from,
            to,
            good_only,
            parallel,
            json,
            oracle,
            out: path,
        } => {
            let reg = registry(cli.data_dir)?;
            let opts = ScanOptions {
                level,
                from,
                to,
                good_only,
                oracle: oracle.config(),
                workers: workers(parallel),
            };
            let format = if json {
                scan::Format::Json
            } else {
                scan::Format::Csv
            };
            match path {
                Some(path) => {
                    let mut file = io::BufWriter::new(std::fs::File::create(path)?);
                    scan::write_scan(&opts, &reg, format, &mut file)?;
                }
                None => {
                    scan::write_scan(&opts, &reg, format, out)?;
                }
            }
            Ok(())
        }
        Command::Table {
            name,
            max_abs_d,
            expected,
            parallel,
            json,
        } => {
            let name: TableName = name.parse()?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers(parallel))
                .build()
                .map_err(|e| CliError::Internal(e.to_string()))?;
            cmd_table(&pool, name, expected, max_abs_d, json, out)
        }
        Command::Congruent { n, json } => {
            let v = congruent_verdict(n)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&v).map_err(io::Error::other)?
                )?;
            } else {
                let text = match v.outcome {
                    Congruence::ProvenNonCongruent => "NOT congruent (unconditional)",
                    Congruence::CongruentAssumingBsd => "congruent assuming BSD",
                };
                writeln!(out, "{n}: {text}")?;
                write_basis(out, &v.basis)?;
            }
            Ok(())
        }
        Command::Cubes { n, json } => {
            let v = cubes_verdict(n)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&v).map_err(io::Error::other)?
                )?;
            } else {
                let text = match v.outcome {
                    CubesOutcome::FiniteProven => "finitely many rational points (unconditional)",
                    CubesOutcome::InfiniteAssumingBsd => {
                        "infinitely many rational points assuming BSD"
                    }
                };
                writeln!(out, "x^3 + {n}y^2 = 432: {text}")?;
                write_basis(out, &v.basis)?;
            }
            Ok(())
        }
        Command::Parity { p, json } => {
            let r = parity_test(p)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&r).map_err(io::Error::other)?
                )?;
            } else {
                writeln!(
                    out,
                    "#S_(32,{})(1/3) = {} ({})",
                    3 * p,
                    r.count,
                    if r.odd { "odd" } else { "even" }
                )?;
                if r.proven_noncongruent {
                    writeln!(out, "{p}: NOT congruent (unconditional)")?;
                } else {
                    writeln!(out, "{p}: parity test inconclusive")?;
                }
            }
            Ok(())
        }
    }
}

fn write_basis(out: &mut dyn Write, v: &VanishingVerdict) -> io::Result<()> {
    let data = level_data(v.level).expect("verdict level is registered");
    writeln!(
        out,
        "  level {}: F({}) = {}, F({}) = {}",
        v.level, data.x1, v.f_x1, data.x2, v.f_x2
    )?;
    for note in &v.notes {
        writeln!(out, "  note: {note}")?;
    }
    Ok(())
}

fn verdict_text(v: Vanishing) -> &'static str {
    match v {
        Vanishing::LVanishes => "L=0",
        Vanishing::LNonzero => "L≠0",
    }
}

fn cmd_check(
    level: u32,
    d: i64,
    json: bool,
    oracle: Option<OracleConfig>,
    reg: Option<&CurveRegistry>,
    dump_forms: bool,
    out: &mut dyn Write,
) -> CliResult {
    let data = level_data(level)?;
    let v = vanishing_verdict(level, d)?;
    let estimate: Option<LValueEstimate> = match (oracle, reg) {
        (Some(cfg), Some(reg)) => Some(estimate_l_value(reg, level, d, &cfg)?),
        _ => None,
    };
    let forms = if dump_forms {
        let (_, s1) = f_sum_with_forms(level as u64, data.d0, d, data.x1)?;
        let (_, s2) = f_sum_with_forms(level as u64, data.d0, d, data.x2)?;
        Some((s1.forms, s2.forms))
    } else {
        None
    };

    if json {
        let mut record = json!({
            "level": level,
            "D": d,
            "d0": data.d0,
            "x1": data.x1,
            "x2": data.x2,
            "f_x1": v.f_x1,
            "f_x2": v.f_x2,
            "count_x1": v.count_x1,
            "count_x2": v.count_x2,
            "verdict": scan::verdict_label(v.f_x1, v.f_x2),
            "notes": v.notes,
        });
        if let Some(e) = &estimate {
            record["oracle"] = serde_json::to_value(e).map_err(io::Error::other)?;
        }
        if let Some((f1, f2)) = &forms {
            record["forms_x1"] = json!(f1);
            record["forms_x2"] = json!(f2);
        }
        writeln!(out, "{record}")?;
        return Ok(());
    }

    writeln!(out, "level {level}  D = {d}  D0 = {}", data.d0)?;
    writeln!(out, "F({}) = {}  (#S = {})", data.x1, v.f_x1, v.count_x1)?;
    writeln!(out, "F({}) = {}  (#S = {})", data.x2, v.f_x2, v.count_x2)?;
    writeln!(out, "verdict: {}", verdict_text(v.outcome))?;
    for note in &v.notes {
        writeln!(out, "note: {note}")?;
    }
    if let Some(e) = &estimate {
        writeln!(
            out,
            "oracle: L(E_D,1) ≈ {:.6e} ± {:.1e}  [{}]  ({} terms, conductor {})",
            e.value,
            e.tail_bound,
            e.verdict.as_str(),
            e.terms_used,
            e.conductor
        )?;
        for c in &e.caveats {
            writeln!(out, "oracle note: {c}")?;
        }
    }
    if let Some((f1, f2)) = &forms {
        writeln!(
            out,
            "forms at {}: {}",
            data.x1,
            serde_json::to_string(f1).map_err(io::Error::other)?
        )?;
        writeln!(
            out,
            "forms at {}: {}",
            data.x2,
            serde_json::to_string(f2).map_err(io::Error::other)?
        )?;
    }
    Ok(())
}

fn cmd_table(
    pool: &rayon::ThreadPool,
    name: TableName,
    expected: Option<PathBuf>,
    max_abs_d: Option<u64>,
    json: bool,
    out: &mut dyn Write,
) -> CliResult {
    if name == TableName::Discs {
        return cmd_table_discs(pool, json, out);
    }
    let fx = match expected {
        Some(path) => TableFixture::from_json(&std::fs::read_to_string(path)?)?,
        None => tables::fixture(name)?,
    };
    let rows = tables::selected_rows(&fx, max_abs_d);
    let checks: Vec<_> = pool.install(|| {
        rows.par_iter()
            .map(|r| tables::check_row(&fx, r))
            .collect::<Result<_, _>>()
    })?;
    let mismatches = checks.iter().filter(|c| !c.matches()).count();

    if json {
        for c in &checks {
            let mut v = serde_json::to_value(c).map_err(io::Error::other)?;
            v["matches"] = json!(c.matches());
            writeln!(out, "{v}")?;
        }
    } else {
        let [x1, x2] = fx.points;
        writeln!(out, "{} (level {}, D0 = {})", fx.caption, fx.level, fx.d0)?;
        writeln!(
            out,
            "{:>10} {:>10} {:>10} {:>14}  status",
            "D",
            format!("F({x1})"),
            format!("F({x2})"),
            "label"
        )?;
        for c in &checks {
            let status = if c.matches() {
                "ok".to_string()
            } else {
                format!("MISMATCH (expected {}, {})", c.expected.0, c.expected.1)
            };
            writeln!(
                out,
                "{:>10} {:>10} {:>10} {:>14}  {status}",
                c.d,
                c.computed.0,
                c.computed.1,
                c.computed_label.as_deref().unwrap_or("-"),
            )?;
        }
        let skipped = fx.rows.len() - rows.len();
        if skipped > 0 {
            writeln!(out, "({skipped} row(s) above --max-abs-d skipped)")?;
        }
    }
    if mismatches > 0 {
        return Err(CliError::Mismatch(mismatches));
    }
    Ok(())
}

fn join(ms: &[i64]) -> String {
    ms.iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_table_discs(pool: &rayon::ThreadPool, json: bool, out: &mut dyn Write) -> CliResult {
    let checks: Vec<_> = pool.install(|| {
        levels()
            .par_iter()
            .map(tables::check_discs_level)
            .collect::<Result<_, _>>()
    })?;
    let mut mismatches = 0;
    for c in &checks {
        if !c.matches() {
            mismatches += 1;
        }
        let divergence = tables::goodness_divergence(c.level, 3000)?;
        if json {
            let mut v = serde_json::to_value(c).map_err(io::Error::other)?;
            v["matches"] = json!(c.matches());
            v["rule_divergence_upto_3000"] = json!(divergence.len());
            writeln!(out, "{v}")?;
            continue;
        }
        let data = level_data(c.level)?;
        let listed: Vec<String> = data
            .noninvariant
            .iter()
            .map(|e| {
                if e.underlined {
                    format!("{}*", e.m)
                } else {
                    e.m.to_string()
                }
            })
            .collect();
        writeln!(
            out,
            "N = {:<3} D0 = {:<4} ({}, {})  good: {}",
            c.level, c.d0, c.points[0], c.points[1], c.condition
        )?;
        writeln!(out, "  listed     : {}", listed.join(","))?;
        writeln!(out, "  recomputed : {}", join(&c.scan.found))?;
        if !c.scan.skipped_square.is_empty() {
            writeln!(
                out,
                "  skipped (|D·D0| square): {}",
                join(&c.scan.skipped_square)
            )?;
        }
        for (m, status) in &c.underlined {
            match status {
                UnderlinedStatus::Nonzero => {}
                UnderlinedStatus::Vanishes => {
                    writeln!(out, "  MISMATCH: underlined {m} gives L=0")?
                }
                UnderlinedStatus::NotGood(why) => {
                    writeln!(out, "  underlined {m} not accepted by the verdict: {why}")?
                }
            }
        }
        if !divergence.is_empty() {
            let first: Vec<i64> = divergence.iter().take(5).map(|d| -d).collect();
            writeln!(
                out,
                "  general goodness rules differ from the condition above at {} odd fundamental |D| ≤ 3000 (first: {})",
                divergence.len(),
                join(&first)
            )?;
        }
        writeln!(
            out,
            "  status     : {}",
            if c.matches() { "ok" } else { "MISMATCH" }
        )?;
    }
    if mismatches > 0 {
        return Err(CliError::Mismatch(mismatches));
    }
    Ok(())
}
