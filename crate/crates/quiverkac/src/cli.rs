//! Command-line surface for the library: table printers and the
//! cross-verification driver.
//!
//! Exit-code contract: 0 all good, 1 a verification check failed, 2 usage or
//! parse error, 3 an internal invariant was breached (a computed quantity
//! failed polynomiality or integrality that the formulas guarantee).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::betti::{self, BettiError};
use crate::exactalg::IntPoly;
use crate::ffcount::{self, FfError};
use crate::hua;
use crate::quiver::{DimVector, Quiver, QuiverError};
use crate::report::{CheckStatus, VerifyCheck, VerifyReport};
use crate::weyl::{self, WeylError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "quiverkac",
    version,
    about = "Exact quiver-variety Betti numbers, Kac A-polynomials, Kac-Moody multiplicities, and finite-field cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Kac A-polynomials A(alpha, q) for all 0 < alpha <= bound
    Apoly(CliArgs),
    /// Root multiplicities m_alpha for all 0 < alpha <= bound
    Mult(CliArgs),
    /// Weight multiplicities of the highest-weight module given by --w
    Char(CliArgs),
    /// Poincaré polynomials of the quiver varieties framed by --w
    Betti(CliArgs),
    /// Run the cross-verification suites (constant terms vs root
    /// multiplicities, q=0 chain, finite-field counts)
    Verify(CliArgs),
}

#[derive(Args)]
struct CliArgs {
    /// Quiver file (see the README for the format)
    #[arg(long, value_name = "FILE")]
    quiver: PathBuf,
    /// Componentwise bound on dimension vectors, e.g. 2,2
    #[arg(long, value_name = "CSV")]
    bound: String,
    /// Framing dimension vector (required by char/betti)
    #[arg(long, value_name = "CSV")]
    w: Option<String>,
    /// Primes for the finite-field checks (verify only)
    #[arg(long, value_name = "CSV", default_value = "2,3,5")]
    primes: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
    /// Worker threads (0 = automatic)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Enumeration guard; overrides the QUIVERKAC_GUARD environment variable
    #[arg(long)]
    guard: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CommandKind {
    Apoly,
    Mult,
    Char,
    Betti,
    Verify,
}

/// Fully validated run configuration.
pub struct RunConfig {
    pub command: CommandKind,
    pub quiver_path: PathBuf,
    pub quiver: Quiver,
    pub bound: DimVector,
    pub w: Option<DimVector>,
    pub primes: Vec<u64>,
    pub format: OutputFormat,
    pub jobs: usize,
    pub guard: u64,
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        CliCommand::Apoly(a) => (CommandKind::Apoly, a),
        CliCommand::Mult(a) => (CommandKind::Mult, a),
        CliCommand::Char(a) => (CommandKind::Char, a),
        CliCommand::Betti(a) => (CommandKind::Betti, a),
        CliCommand::Verify(a) => (CommandKind::Verify, a),
    };
    let config = match build_config(kind, args) {
        Ok(config) => config,
        Err(message) => {
            eprintln!("error: {message}");
            return EXIT_USAGE;
        }
    };
    run(&config)
}

fn build_config(command: CommandKind, args: CliArgs) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(&args.quiver)
        .map_err(|e| format!("cannot read {}: {e}", args.quiver.display()))?;
    let quiver = Quiver::parse(&text).map_err(|e| format!("{}: {e}", args.quiver.display()))?;
    let bound = DimVector::parse_csv(&args.bound).map_err(|e| format!("--bound: {e}"))?;
    if bound.len() != quiver.vertex_count() {
        return Err(format!(
            "--bound has length {}, quiver has {} vertices",
            bound.len(),
            quiver.vertex_count()
        ));
    }
    let w = match &args.w {
        Some(text) => {
            let w = DimVector::parse_csv(text).map_err(|e| format!("--w: {e}"))?;
            if w.len() != quiver.vertex_count() {
                return Err(format!(
                    "--w has length {}, quiver has {} vertices",
                    w.len(),
                    quiver.vertex_count()
                ));
            }
            Some(w)
        }
        None => None,
    };
    if matches!(command, CommandKind::Char | CommandKind::Betti) && w.is_none() {
        return Err("this command requires --w <CSV>".to_string());
    }
    let mut primes = Vec::new();
    for part in args.primes.split(',') {
        let p: u64 = part
            .trim()
            .parse()
            .map_err(|_| format!("--primes: invalid entry `{}`", part.trim()))?;
        primes.push(p);
    }
    let guard = match args.guard {
        Some(g) => g,
        None => match std::env::var("QUIVERKAC_GUARD") {
            Ok(value) => value
                .parse()
                .map_err(|_| format!("QUIVERKAC_GUARD: invalid value `{value}`"))?,
            Err(_) => ffcount::DEFAULT_GUARD,
        },
    };
    Ok(RunConfig {
        command,
        quiver_path: args.quiver,
        quiver,
        bound,
        w,
        primes,
        format: args.format,
        jobs: args.jobs,
        guard,
    })
}

/// Dispatches a validated configuration and returns the exit code.
pub fn run(config: &RunConfig) -> i32 {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build();
    let pool = match pool {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot build thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = pool.install(|| match config.command {
        CommandKind::Apoly => cmd_apoly(config),
        CommandKind::Mult => cmd_mult(config),
        CommandKind::Char => cmd_char(config),
        CommandKind::Betti => cmd_betti(config),
        CommandKind::Verify => cmd_verify(config),
    });
    match outcome {
        Ok((output, code)) => {
            print!("{output}");
            code
        }
        Err(error) => {
            eprintln!("error: {}", error.message);
            error.code
        }
    }
}

struct CmdError {
    message: String,
    code: i32,
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

fn usage(message: impl Into<String>) -> CmdError {
    CmdError {
        message: message.into(),
        code: EXIT_USAGE,
    }
}

fn internal(message: impl std::fmt::Display) -> CmdError {
    CmdError {
        message: message.to_string(),
        code: EXIT_INTERNAL,
    }
}

impl From<QuiverError> for CmdError {
    fn from(e: QuiverError) -> Self {
        usage(e.to_string())
    }
}

impl From<hua::HuaError> for CmdError {
    fn from(e: hua::HuaError) -> Self {
        match e {
            hua::HuaError::Quiver(q) => q.into(),
            other => internal(other),
        }
    }
}

impl From<WeylError> for CmdError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::Quiver(q) => q.into(),
            other => internal(other),
        }
    }
}

impl From<BettiError> for CmdError {
    fn from(e: BettiError) -> Self {
        match e {
            BettiError::Quiver(q) => q.into(),
            BettiError::Hua(h) => h.into(),
            BettiError::Weyl(w) => w.into(),
            other => internal(other),
        }
    }
}

impl From<FfError> for CmdError {
    fn from(e: FfError) -> Self {
        match e {
            FfError::Quiver(q) => q.into(),
            FfError::Betti(b) => b.into(),
            FfError::NotPrime { .. }
            | FfError::CharacteristicTooSmall { .. }
            | FfError::SearchSpaceTooLarge { .. }
            | FfError::CensusGuard { .. } => usage(e.to_string()),
            other => internal(other),
        }
    }
}

fn coeff_strings(poly: &IntPoly) -> Vec<String> {
    poly.coeffs().iter().map(|c| c.to_string()).collect()
}

fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn vector_field(v: &DimVector) -> String {
    v.as_slice()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn json_vector(v: &DimVector) -> Value {
    Value::from(v.as_slice().to_vec())
}

fn render_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json encoding");
    text.push('\n');
    text
}

type CmdOutput = Result<(String, i32), CmdError>;

fn cmd_apoly(config: &RunConfig) -> CmdOutput {
    let table = hua::kac_a_polynomials(&config.quiver, &config.bound)?;
    let order: Vec<DimVector> = config
        .bound
        .box_vectors()
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect();
    let mut out = String::new();
    match config.format {
        OutputFormat::Plain => {
            for alpha in &order {
                let poly = table.get(alpha).expect("box entry");
                writeln!(out, "alpha={alpha}: {poly}").unwrap();
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "alpha,poly,coeffs").unwrap();
            for alpha in &order {
                let poly = table.get(alpha).expect("box entry");
                writeln!(
                    out,
                    "{},{},{}",
                    vector_field(alpha),
                    csv_field(&poly.to_string()),
                    coeff_strings(poly).join(" ")
                )
                .unwrap();
            }
        }
        OutputFormat::Json => {
            let entries: Vec<Value> = order
                .iter()
                .map(|alpha| {
                    let poly = table.get(alpha).expect("box entry");
                    json!({
                        "alpha": json_vector(alpha),
                        "poly": poly.to_string(),
                        "coeffs": coeff_strings(poly),
                    })
                })
                .collect();
            out = render_json(&json!({
                "command": "apoly",
                "quiver": config.quiver_path.display().to_string(),
                "bound": json_vector(&config.bound),
                "entries": entries,
            }));
        }
    }
    Ok((out, EXIT_OK))
}

fn multiplicity_output(
    config: &RunConfig,
    command: &str,
    table: &weyl::MultiplicityTable,
    include_zero: bool,
) -> String {
    let order: Vec<DimVector> = config
        .bound
        .box_vectors()
        .into_iter()
        .filter(|v| include_zero || !v.is_zero())
        .collect();
    match config.format {
        OutputFormat::Plain => {
            let mut out = String::new();
            for alpha in &order {
                let m = table.get(alpha).expect("box entry");
                writeln!(out, "alpha={alpha}: {m}").unwrap();
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("alpha,multiplicity\n");
            for alpha in &order {
                let m = table.get(alpha).expect("box entry");
                writeln!(out, "{},{}", vector_field(alpha), m).unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let entries: Vec<Value> = order
                .iter()
                .map(|alpha| {
                    json!({
                        "alpha": json_vector(alpha),
                        "multiplicity": table.get(alpha).expect("box entry"),
                    })
                })
                .collect();
            let mut value = json!({
                "command": command,
                "quiver": config.quiver_path.display().to_string(),
                "bound": json_vector(&config.bound),
                "entries": entries,
            });
            if let Some(w) = &config.w {
                value["w"] = json_vector(w);
            }
            render_json(&value)
        }
    }
}

fn cmd_mult(config: &RunConfig) -> CmdOutput {
    let table = weyl::root_multiplicities(&config.quiver, &config.bound)?;
    Ok((
        multiplicity_output(config, "mult", &table, false),
        EXIT_OK,
    ))
}

fn cmd_char(config: &RunConfig) -> CmdOutput {
    let w = config.w.as_ref().expect("validated");
    let table = weyl::character_multiplicities(&config.quiver, w, &config.bound)?;
    Ok((multiplicity_output(config, "char", &table, true), EXIT_OK))
}

fn cmd_betti(config: &RunConfig) -> CmdOutput {
    let w = config.w.as_ref().expect("validated");
    let table = betti::poincare_series(&config.quiver, w, &config.bound)?;
    let order: Vec<DimVector> = config
        .bound
        .box_vectors()
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect();
    let mut out = String::new();
    match config.format {
        OutputFormat::Plain => {
            for v in &order {
                let entry = table.get(v).expect("box entry");
                writeln!(out, "v={v}: {}", entry.poly).unwrap();
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "v,half_dim,poly,coeffs,betti").unwrap();
            for v in &order {
                let entry = table.get(v).expect("box entry");
                let betti_list = betti::betti_numbers(&table, v)?;
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    vector_field(v),
                    entry.half_dim,
                    csv_field(&entry.poly.to_string()),
                    coeff_strings(&entry.poly).join(" "),
                    betti_list
                        .iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )
                .unwrap();
            }
        }
        OutputFormat::Json => {
            let mut entries = Vec::new();
            for v in &order {
                let entry = table.get(v).expect("box entry");
                let betti_list = betti::betti_numbers(&table, v)?;
                entries.push(json!({
                    "v": json_vector(v),
                    "half_dim": entry.half_dim,
                    "poly": entry.poly.to_string(),
                    "coeffs": coeff_strings(&entry.poly),
                    "betti": betti_list.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                }));
            }
            out = render_json(&json!({
                "command": "betti",
                "quiver": config.quiver_path.display().to_string(),
                "bound": json_vector(&config.bound),
                "w": json_vector(w),
                "entries": entries,
            }));
        }
    }
    Ok((out, EXIT_OK))
}

/// The three cross-checks: constant terms of the A-polynomials against root
/// multiplicities, the q=0 chain against character multiplicities, and the
/// finite-field counts against the Poincaré table. Without `--w` the framing
/// defaults to the all-ones vector.
fn cmd_verify(config: &RunConfig) -> CmdOutput {
    config.quiver.require_loop_free().map_err(|e| usage(e.to_string()))?;
    let n = config.quiver.vertex_count();
    let w = config
        .w
        .clone()
        .unwrap_or_else(|| DimVector::new(vec![1; n]));
    let mut report = VerifyReport::new();

    // 1. constant terms of A-polynomials vs root multiplicities
    let apolys = hua::kac_a_polynomials(&config.quiver, &config.bound)?;
    let constants = hua::constant_terms(&apolys);
    let mults = weyl::root_multiplicities(&config.quiver, &config.bound)?;
    for alpha in config.bound.box_vectors() {
        if alpha.is_zero() {
            continue;
        }
        report.push(VerifyCheck::compare(
            format!("constant term alpha={alpha}: A(0) vs m"),
            constants.get(&alpha).expect("box entry"),
            mults.get(&alpha).expect("box entry"),
        ));
    }

    // 2. q = 0 chain
    report.extend(betti::top_betti_equals_weight_multiplicity(
        &config.quiver,
        &w,
        &config.bound,
    )?);

    // 3. finite-field counts
    let table = betti::poincare_series(&config.quiver, &w, &config.bound)?;
    let primes: BTreeSet<u64> = config.primes.iter().copied().collect();
    for &p in &primes {
        for v in config.bound.box_vectors() {
            let label = |what: &str| format!("{what} v={v} w={w} p={p}");
            if p <= v.total() {
                report.push(VerifyCheck::skip(
                    label("finite field"),
                    "characteristic too small",
                ));
                continue;
            }
            let fourier = match ffcount::count_fourier(&config.quiver, &v, &w, p, config.guard) {
                Ok(count) => count,
                Err(FfError::SearchSpaceTooLarge { .. }) => {
                    report.push(VerifyCheck::skip(label("finite field"), "guard exceeded"));
                    continue;
                }
                Err(FfError::NotPrime { p }) => {
                    return Err(usage(format!("--primes: {p} is not prime")));
                }
                Err(e) => return Err(e.into()),
            };
            match ffcount::count_bruteforce(&config.quiver, &v, &w, p, config.guard) {
                Ok(brute) => {
                    report.push(VerifyCheck::compare(
                        label("character sum vs brute force"),
                        &fourier,
                        brute,
                    ));
                }
                Err(FfError::SearchSpaceTooLarge { .. }) => {
                    report.push(VerifyCheck::skip(
                        label("character sum vs brute force"),
                        "guard exceeded",
                    ));
                }
                Err(e) => return Err(e.into()),
            }
            let order = ffcount::group_order(&v, p);
            let (quotient, remainder) = fourier.div_rem(&order);
            report.push(VerifyCheck::compare(
                label("free action: count mod |G|"),
                remainder,
                BigInt::zero(),
            ));
            let expected = betti::point_count_from_table(&table, &v, p)?;
            report.push(VerifyCheck::compare(
                label("count/|G| vs p^d P(p)"),
                quotient,
                expected,
            ));
        }
    }

    let code = if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    let out = match config.format {
        OutputFormat::Plain => format!("{report}\n"),
        OutputFormat::Csv => {
            let mut out = String::from("name,lhs,rhs,status\n");
            for check in &report.checks {
                writeln!(
                    out,
                    "{},{},{},{}",
                    csv_field(&check.name),
                    csv_field(&check.lhs),
                    csv_field(&check.rhs),
                    status_name(&check.status)
                )
                .unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|check| {
                    json!({
                        "name": check.name,
                        "lhs": check.lhs,
                        "rhs": check.rhs,
                        "status": status_name(&check.status),
                    })
                })
                .collect();
            render_json(&json!({
                "command": "verify",
                "quiver": config.quiver_path.display().to_string(),
                "bound": json_vector(&config.bound),
                "w": json_vector(&w),
                "primes": primes.iter().copied().collect::<Vec<u64>>(),
                "checks": checks,
                "pass": report.all_pass(),
            }))
        }
    };
    Ok((out, code))
}

fn status_name(status: &CheckStatus) -> &'static str {
    match status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skip => "skip",
    }
}
