//! `qmg`: classify quartics, decide monogenicity, and verify the family and
//! exemplar claims from the command line.
//!
//! Polynomials are given as integer coefficients in descending degree order,
//! either as one quoted argument (`"1 0 4 0 1"`) or as separate arguments.
//! Output is JSON lines with big integers as decimal strings.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical disagreement was found,
//! 2 usage or input error, 3 some verdict stayed unknown (factoring budget
//! exhausted).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monoquartic::dedekind::{is_monogenic, Status};
use monoquartic::families::{exemplars, FamilyId};
use monoquartic::galois::{classify_with, frobenius_cycle_types, resolvent_cubic, GaloisLabel};
use monoquartic::int_arith::{factor, Effort, DEFAULT_RHO_ITERATIONS, DEFAULT_SEED};
use monoquartic::qx_irreducible::rational_roots_with;
use monoquartic::scan::{check_exemplar, overlap, scan_range, ExemplarCheck, OverlapPair, ScanRow, ScanSummary};
use monoquartic::IntPoly;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;

const EXIT_DISAGREEMENT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "qmg", version, about = "Galois groups and monogenicity of integer quartics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Pollard-rho iteration budget for factoring discriminants.
    #[arg(long, global = true, env = "QMG_BUDGET", default_value_t = DEFAULT_RHO_ITERATIONS)]
    budget: u64,
    /// Seed for the randomized parts of factoring.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for scans and Frobenius sampling (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

#[derive(Args)]
struct PolyArg {
    /// Coefficients in descending degree order, e.g. `1 0 4 0 1`.
    #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
    coeffs: Vec<String>,
}

impl PolyArg {
    fn parse(&self) -> Result<IntPoly, Failure> {
        self.coeffs
            .join(" ")
            .parse()
            .map_err(|e: monoquartic::Error| Failure::usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Galois group of a monic irreducible quartic, with the evidence.
    Classify(PolyArg),
    /// Cubic resolvent of a monic quartic and its rational roots.
    Resolvent(PolyArg),
    /// Discriminant and its factorization.
    Disc(PolyArg),
    /// Dedekind monogenicity verdict with per-prime witnesses.
    Monogenic(PolyArg),
    /// Verify an X family over a range of t: group, discriminant closed
    /// form, and verdict against the squarefree condition.
    Scan {
        /// X2, X3, X4 or X5.
        family: String,
        #[arg(allow_negative_numbers = true)]
        t_min: i64,
        #[arg(allow_negative_numbers = true)]
        t_max: i64,
        /// Emit CSV instead of JSON lines.
        #[arg(long)]
        csv: bool,
        /// Write rows to this file; the summary still goes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the registry of monogenic cyclic quartics.
    VerifyExemplars {
        /// Only check the named entries.
        #[arg(long)]
        only: Vec<String>,
        /// Read the registry from a JSON file instead of the built-in one.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Look for equal discriminants between monogenic members of two
    /// families.
    Overlap {
        /// X5-vs-SmithB, X5-vs-SmithD, X5-vs-GSS, X2-vs-JonesC2C2,
        /// X3-vs-JonesD4 or X4-vs-Spearman.
        pair: String,
        /// X family parameter range is -left-bound..=left-bound.
        #[arg(long, default_value_t = 1000)]
        left_bound: i64,
        /// Literature family range (2..=bound for r and p in two-parameter
        /// families).
        #[arg(long, default_value_t = 1000)]
        right_bound: i64,
    },
    /// Frobenius cycle types over small primes, compared with `classify`.
    Frobenius {
        #[command(flatten)]
        poly: PolyArg,
        /// Largest prime sampled.
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<monoquartic::Error> for Failure {
    fn from(e: monoquartic::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("I/O error: {e}"),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn emit(out: &mut impl Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

fn disc_json(disc: &BigInt, effort: &Effort) -> Result<serde_json::Value, Failure> {
    if disc == &BigInt::from(0) {
        return Ok(json!({ "disc": "0", "disc_factored": null, "complete": true }));
    }
    let f = factor(disc, effort)?;
    Ok(json!({
        "disc": disc.to_string(),
        "disc_factored": f.to_factored_string(),
        "complete": f.complete,
    }))
}

fn cmd_classify(poly: &PolyArg, effort: &Effort, out: &mut impl Write) -> CmdResult {
    let f = poly.parse()?;
    let (label, evidence) = classify_with(&f, effort)?;
    emit(
        out,
        &json!({
            "poly": f,
            "group": label,
            "group_name": label.group_name(),
            "resolvent": evidence.resolvent,
            "evidence": evidence,
        }),
    )?;
    Ok(0)
}

fn cmd_resolvent(poly: &PolyArg, effort: &Effort, out: &mut impl Write) -> CmdResult {
    let f = poly.parse()?;
    let r = resolvent_cubic(&f)?;
    let roots: Vec<String> = rational_roots_with(&r, effort)?.iter().map(|x| x.to_string()).collect();
    emit(out, &json!({ "poly": f, "resolvent": r, "rational_roots": roots }))?;
    Ok(0)
}

fn cmd_disc(poly: &PolyArg, effort: &Effort, out: &mut impl Write) -> CmdResult {
    let f = poly.parse()?;
    let d = f.discriminant()?;
    let mut v = disc_json(&d, effort)?;
    v["poly"] = json!(f);
    emit(out, &v)?;
    Ok(if v["complete"] == json!(true) { 0 } else { EXIT_UNKNOWN })
}

fn cmd_monogenic(poly: &PolyArg, effort: &Effort, out: &mut impl Write) -> CmdResult {
    let f = poly.parse()?;
    let v = is_monogenic(&f, effort)?;
    emit(out, &json!({ "poly": f, "verdict": v }))?;
    Ok(if v.status == Status::Unknown { EXIT_UNKNOWN } else { 0 })
}

const CSV_HEADER: &str = "family,t,group,disc,disc_factored,disc_matches_formula,condition,verdict,witness_prime,agree";

fn csv_line(r: &ScanRow) -> String {
    format!(
        "{},{},{},{},{},{},{:?},{},{},{}",
        r.family,
        r.t,
        r.group,
        r.disc,
        r.disc_factored.as_deref().unwrap_or(""),
        r.disc_matches_formula,
        r.condition,
        r.verdict,
        r.witness_prime.map(|p| p.to_string()).unwrap_or_default(),
        r.agree
    )
}

fn cmd_scan(
    family: &str,
    t_min: i64,
    t_max: i64,
    csv: bool,
    output: Option<&PathBuf>,
    effort: &Effort,
    out: &mut impl Write,
) -> CmdResult {
    let id: FamilyId = family.parse()?;
    if !id.is_x_family() {
        return Err(Failure::usage(format!("scan supports X2..X5, not {id}")));
    }
    if t_min > t_max {
        return Err(Failure::usage(format!("t_min {t_min} exceeds t_max {t_max}")));
    }
    let rows = scan_range(id, t_min, t_max, effort)?;
    let summary = ScanSummary::from_rows(&rows);
    {
        let mut file;
        let sink: &mut dyn Write = match output {
            Some(path) => {
                file = BufWriter::new(File::create(path)?);
                &mut file
            }
            None => out,
        };
        if csv {
            writeln!(sink, "{CSV_HEADER}")?;
            for r in &rows {
                writeln!(sink, "{}", csv_line(r))?;
            }
        } else {
            for r in &rows {
                serde_json::to_writer(&mut *sink, r).map_err(io::Error::from)?;
                writeln!(sink)?;
            }
        }
        sink.flush()?;
    }
    if csv && output.is_none() {
        // keep stdout valid CSV
        eprintln!("{}", serde_json::to_string(&json!({ "summary": summary })).unwrap());
    } else {
        emit(out, &json!({ "family": id, "t_min": t_min, "t_max": t_max, "summary": summary }))?;
    }
    Ok(if !summary.all_ok() {
        EXIT_DISAGREEMENT
    } else if summary.unknown > 0 {
        EXIT_UNKNOWN
    } else {
        0
    })
}

/// Registry entry as read from `--registry`.
#[derive(Deserialize)]
struct RegistryEntry {
    name: String,
    /// Descending coefficients, e.g. `"1 7 9 -7 1"`.
    coeffs: String,
    #[serde(default = "default_group")]
    expected_group: String,
    expected_disc: String,
}

fn default_group() -> String {
    "4T1".into()
}

fn load_registry(path: &PathBuf) -> Result<Vec<(String, IntPoly, GaloisLabel, BigInt)>, Failure> {
    let text = std::fs::read_to_string(path)?;
    let entries: Vec<RegistryEntry> =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    entries
        .into_iter()
        .map(|e| {
            let poly: IntPoly = e.coeffs.parse()?;
            let group: GaloisLabel = e.expected_group.parse()?;
            let disc: BigInt = e
                .expected_disc
                .parse()
                .map_err(|_| Failure::usage(format!("{}: bad expected_disc", e.name)))?;
            Ok((e.name, poly, group, disc))
        })
        .collect()
}

fn cmd_verify_exemplars(only: &[String], registry: Option<&PathBuf>, effort: &Effort, out: &mut impl Write) -> CmdResult {
    let entries = match registry {
        Some(path) => load_registry(path)?,
        None => exemplars()
            .into_iter()
            .map(|e| (e.name.to_string(), e.poly, e.expected_group, e.expected_disc))
            .collect(),
    };
    for name in only {
        if !entries.iter().any(|(n, ..)| n == name) {
            return Err(Failure::usage(format!("no exemplar named {name:?}")));
        }
    }
    let selected: Vec<_> = entries
        .into_iter()
        .filter(|(n, ..)| only.is_empty() || only.contains(n))
        .collect();
    let mut checks: Vec<ExemplarCheck> = Vec::new();
    for (name, poly, group, disc) in &selected {
        let c = check_exemplar(name, poly, *group, disc, effort)?;
        emit(out, &c)?;
        checks.push(c);
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    emit(out, &json!({ "summary": { "passed": passed, "total": checks.len() } }))?;
    Ok(if passed == checks.len() { 0 } else { EXIT_DISAGREEMENT })
}

fn cmd_overlap(pair: &str, left_bound: i64, right_bound: i64, effort: &Effort, out: &mut impl Write) -> CmdResult {
    let pair: OverlapPair = pair.parse()?;
    if left_bound < 0 || right_bound < 0 {
        return Err(Failure::usage("bounds must be nonnegative"));
    }
    let report = overlap(pair, left_bound, right_bound, effort)?;
    emit(out, &report)?;
    Ok(if report.collisions.is_empty() { 0 } else { EXIT_DISAGREEMENT })
}

fn cmd_frobenius(poly: &PolyArg, bound: u64, effort: &Effort, out: &mut impl Write) -> CmdResult {
    let f = poly.parse()?;
    let (label, _) = classify_with(&f, effort)?;
    let profile = frobenius_cycle_types(&f, bound)?;
    let agrees = profile.inferred.map(|g| g == label);
    emit(
        out,
        &json!({ "poly": f, "profile": profile, "classify": label, "agrees": agrees }),
    )?;
    Ok(match agrees {
        Some(true) => 0,
        Some(false) => EXIT_DISAGREEMENT,
        None => EXIT_UNKNOWN,
    })
}

fn run(cli: &Cli, out: &mut impl Write) -> CmdResult {
    let effort = Effort {
        rho_iterations: cli.global.budget,
        seed: cli.global.seed,
    };
    match &cli.command {
        Command::Classify(p) => cmd_classify(p, &effort, out),
        Command::Resolvent(p) => cmd_resolvent(p, &effort, out),
        Command::Disc(p) => cmd_disc(p, &effort, out),
        Command::Monogenic(p) => cmd_monogenic(p, &effort, out),
        Command::Scan {
            family,
            t_min,
            t_max,
            csv,
            output,
        } => cmd_scan(family, *t_min, *t_max, *csv, output.as_ref(), &effort, out),
        Command::VerifyExemplars { only, registry } => {
            cmd_verify_exemplars(only, registry.as_ref(), &effort, out)
        }
        Command::Overlap {
            pair,
            left_bound,
            right_bound,
        } => cmd_overlap(pair, *left_bound, *right_bound, &effort, out),
        Command::Frobenius { poly, bound } => cmd_frobenius(poly, *bound, &effort, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.workers)
        .build()
        .expect("thread pool");
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout);
    let result = pool.install(|| run(&cli, &mut out));
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Err(f), _) => {
            eprintln!("{}", json!({ "error": f.message }));
            ExitCode::from(f.code)
        }
        (Ok(_), Err(e)) => {
            eprintln!("{}", json!({ "error": format!("I/O error: {e}") }));
            ExitCode::from(EXIT_USAGE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use monoquartic::families::gen;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn csv_columns_match_header() {
        let row = monoquartic::scan::scan_row(FamilyId::X2, 1, &Effort::default()).unwrap();
        assert_eq!(csv_line(&row).split(',').count(), CSV_HEADER.split(',').count());
    }

    #[test]
    fn generated_polys_roundtrip() {
        let f = gen(FamilyId::X4, &[-3]).unwrap();
        let text = serde_json::to_value(&f).unwrap();
        assert_eq!(text.as_str().unwrap().parse::<IntPoly>().unwrap(), f);
    }
}
