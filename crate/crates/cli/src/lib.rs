//! `regsym`: decide global regularity of an operator from its symbol.
//!
//! Exit codes: 0 Regular, 1 NotRegular, 2 Inconclusive, 3 usage or engine error.
//! `fixtures` exits 1 on any mismatch; `selftest` exits 1 on any failed property.

pub mod fixtures;
pub mod report;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

use regsym::oracle::{cross_validate, OracleOptions};
use regsym::puiseux::ExpansionOptions;
use regsym::regularity::{decide, DecideOptions, Decision, DirectionChoice, Quantization, Verdict};
use regsym::selftest::{selftest, DEFAULT_CASES, DEFAULT_SEED};
use regsym::symbol::parse_symbol;

use report::{to_json_string, AnalysisReport};

pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "regsym", version, about = "Global regularity of polynomial-coefficient ODE operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one symbol.
    Analyze {
        symbol: String,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, value_enum, default_value_t = QuantArg::Weyl)]
        quantization: QuantArg,
        #[arg(long)]
        json: bool,
    },
    /// Run a fixture file and compare decisions with the expected ones.
    Fixtures {
        path: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Run the seeded exact property suites.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value_t = DirectionArg::Both)]
    direction: DirectionArg,
    /// Expansion depth; terms with larger exponents are computed.
    #[arg(long, default_value = "-9/4", value_parser = parse_depth, allow_hyphen_values = true)]
    depth: Rational64,
    #[arg(long, env = "REGSYM_PRECISION", default_value_t = 1e-12)]
    precision: f64,
    #[arg(long = "im-tol", default_value_t = 1e-8)]
    im_tol: f64,
    /// Cross-check the verdict numerically.
    #[arg(long)]
    oracle: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantArg {
    Weyl,
    Left,
}

impl From<QuantArg> for Quantization {
    fn from(q: QuantArg) -> Self {
        match q {
            QuantArg::Weyl => Quantization::Weyl,
            QuantArg::Left => Quantization::Left,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum DirectionArg {
    Plus,
    Minus,
    Both,
}

fn parse_depth(s: &str) -> Result<Rational64, String> {
    let s = s.trim().replace('\u{2212}', "-");
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let d: i64 = d.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
            if d == 0 {
                return Err("zero denominator".into());
            }
            Rational64::new(n, d)
        }
        None => Rational64::from_integer(s.parse().map_err(|e| format!("bad integer: {e}"))?),
    };
    if r > Rational64::from_integer(-1) {
        return Err(format!("depth {r} must be at most -1"));
    }
    Ok(r)
}

impl EngineArgs {
    pub fn options(&self, quantization: Quantization) -> DecideOptions {
        DecideOptions {
            quantization,
            directions: match self.direction {
                DirectionArg::Plus => DirectionChoice::Plus,
                DirectionArg::Minus => DirectionChoice::Minus,
                DirectionArg::Both => DirectionChoice::Both,
            },
            expansion: ExpansionOptions { depth: self.depth, precision: self.precision, ..ExpansionOptions::default() },
            im_tol: self.im_tol,
            ..DecideOptions::default()
        }
    }
}

pub fn exit_code(d: Decision) -> i32 {
    match d {
        Decision::Regular => 0,
        Decision::NotRegular => 1,
        Decision::Inconclusive => 2,
    }
}

/// Parse and decide one symbol.
pub fn analyze(symbol: &str, opts: &DecideOptions) -> Result<Verdict, String> {
    let p = parse_symbol(symbol).map_err(|e| format!("cannot parse {symbol:?}: {e}"))?;
    decide(&p, opts).map_err(|e| format!("cannot analyze {symbol:?}: {e}"))
}

/// Run with explicit output streams; `args[0]` is the program name.
pub fn run_with(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                0
            } else {
                let _ = write!(err, "{text}");
                EXIT_ERROR
            };
        }
    };
    match cli.command {
        Command::Analyze { symbol, engine, quantization, json } => {
            let opts = engine.options(quantization.into());
            let start = Instant::now();
            let verdict = match analyze(&symbol, &opts) {
                Ok(v) => v,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_ERROR;
                }
            };
            let oracle = engine.oracle.then(|| cross_validate(&verdict, &OracleOptions::default()));
            let report = AnalysisReport {
                input: &symbol,
                quantization: quantization.into(),
                verdict: &verdict,
                oracle: oracle.as_ref(),
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            let _ = if json {
                writeln!(out, "{}", to_json_string(&report.to_json()))
            } else {
                write!(out, "{}", report.to_text())
            };
            exit_code(verdict.decision)
        }
        Command::Fixtures { path, engine } => fixtures::run_fixtures(&path, &engine, out, err),
        Command::Selftest { seed, cases, json } => {
            let r = selftest(seed, cases);
            if json {
                let v = serde_json::json!({
                    "seed": r.seed,
                    "cases": r.cases,
                    "digest": r.digest,
                    "all_hold": r.all_hold(),
                    "properties": r.properties.iter().map(|p| serde_json::json!({
                        "name": p.name,
                        "cases": p.cases,
                        "failures": p.failures,
                        "first_failure": p.first_failure,
                    })).collect::<Vec<_>>(),
                });
                let _ = writeln!(out, "{}", to_json_string(&v));
            } else {
                let _ = writeln!(out, "selftest seed {} cases {}", r.seed, r.cases);
                for p in &r.properties {
                    let _ = writeln!(
                        out,
                        "{} {} ({} cases, {} failures)",
                        if p.failures == 0 { "PASS" } else { "FAIL" },
                        p.name,
                        p.cases,
                        p.failures
                    );
                    if let Some(f) = &p.first_failure {
                        let _ = writeln!(out, "  first failure: {f}");
                    }
                }
                let _ = writeln!(out, "digest {}", r.digest);
                let _ =
                    writeln!(out, "{}", if r.all_hold() { "all properties hold" } else { "some properties failed" });
            }
            if r.all_hold() {
                0
            } else {
                1
            }
        }
    }
}

/// Run against the process's standard streams.
pub fn run(args: Vec<String>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
