//! Command-line front end: checks fifth-order (and other) ODEs for the
//! Wünschmann conditions, the classification flags, the frame and the curvature.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gl2ode::catalog::{
    catalog, find_entry, ree_report, run_checks, CheckConfig, ExpectedFlags, Report, Stages, Status, SCHEMA_VERSION,
};
use gl2ode::catalog::ree::ReeConfig;
use gl2ode::gl2::Gl2Element;
use gl2ode::expr::Expr;
use gl2ode::invariants::{theta_symbols, cartan_identity_check, check_equivariance, five_dim_metric, five_dim_upsilon, InvariantKind};
use gl2ode::parse::{parse_expr, parse_ode, OdeError, OdeSpec};
use gl2ode::scalar::{rat, QSqrt3};
use rayon::prelude::*;
use serde_json::json;

const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "gl2ode", version, about = "Checks ODEs for GL(2,R) geometries")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed of every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Exact trials of each identity test.
    #[arg(long, global = true, default_value_t = 25)]
    trials: usize,
    /// Significant digits of numeric evaluation.
    #[arg(long, global = true, env = "GL2_PRECISION", default_value_t = 60)]
    precision: usize,
    /// Tolerance of numeric identity tests and structural residuals.
    #[arg(long, global = true, default_value_t = 1e-40)]
    tol: f64,
    /// Print the JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock times in the report.
    #[arg(long, global = true)]
    timings: bool,
    /// ODE file (`name =`, `order =`, `let s = ...`, `F = ...`).
    #[arg(long, global = true, conflicts_with = "expr")]
    ode: Option<PathBuf>,
    /// Right-hand side F of y^(n) = F.
    #[arg(long, global = true)]
    expr: Option<String>,
    /// Order n used with --expr.
    #[arg(long, global = true, default_value_t = 5)]
    order: usize,
    /// Built-in catalog entry; its expected flags are checked.
    #[arg(long, global = true, conflicts_with_all = ["ode", "expr"])]
    entry: Option<String>,
    /// Random chart points of the frame checks.
    #[arg(long, global = true, default_value_t = 20)]
    points: usize,
    /// Random chart points of the curvature checks.
    #[arg(long, global = true, default_value_t = 10)]
    curvature_points: usize,
    /// Chart points of the d^2 = 0 check.
    #[arg(long, global = true, default_value_t = 1)]
    d_squared_points: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Wünschmann conditions, classification, frame and curvature.
    Check,
    /// Wünschmann conditions and the classification flags.
    Classify,
    /// Wünschmann conditions and the structural equations of the frame.
    VerifyFrame,
    /// Wünschmann conditions and the curvature cross-checks.
    Curvature,
    /// Lists the built-in equations, or checks them.
    Catalog {
        /// Check every entry.
        #[arg(long)]
        all: bool,
        /// Print the ODE file of the entry given by --entry.
        #[arg(long)]
        source: bool,
    },
    /// Prints the classical invariants, their weights and the five-dimensional identities.
    InvariantsDemo,
    /// Samples solutions of the reduction for F = y3^(5/3) q(y4^3/y3^4).
    Ree {
        /// Number of sampled solutions.
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
}

/// Problems with the input, reported with exit code 3.
struct InputError(String);

impl From<OdeError> for InputError {
    fn from(e: OdeError) -> Self {
        match e {
            OdeError::Parse(p) => InputError(format!("ParseError: {p}")),
            OdeError::Validation(v) => InputError(format!("ValidationError: {v}")),
        }
    }
}

impl Global {
    fn config(&self, stages: Stages) -> CheckConfig {
        CheckConfig {
            seed: self.seed,
            trials: self.trials,
            digits: self.precision,
            tol: self.tol,
            frame_points: self.points,
            curvature_points: self.curvature_points,
            d_squared_points: self.d_squared_points,
            timings: self.timings,
            stages,
            ..CheckConfig::default()
        }
    }

    fn input(&self) -> Result<(OdeSpec, Option<ExpectedFlags>), InputError> {
        if let Some(name) = &self.entry {
            let entry = find_entry(name).ok_or_else(|| InputError(format!("unknown catalog entry '{name}'")))?;
            return Ok((entry.spec, Some(entry.expected)));
        }
        if let Some(path) = &self.ode {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
            return Ok((parse_ode(&text)?, None));
        }
        if let Some(text) = &self.expr {
            let f = parse_expr(text).map_err(|e| InputError(format!("ParseError: {e}")))?;
            return Ok((OdeSpec::new(self.order, f)?, None));
        }
        Err(InputError("no equation given; use --expr, --ode or --entry".into()))
    }
}

fn exit_code(reports: &[&Report]) -> u8 {
    if reports.iter().any(|r| r.summary.fail > 0) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.summary.inconclusive > 0) {
        EXIT_INCONCLUSIVE
    } else {
        0
    }
}

fn status_tag(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inconclusive => "INCONCLUSIVE",
        Status::Info => "INFO",
        Status::Skipped => "SKIP",
    }
}

fn print_table(report: &Report) {
    let name = report.input.name.as_deref().unwrap_or("<input>");
    println!("{name}: order {}, F = {}", report.input.order, report.input.f);
    for c in &report.checks {
        let mut line = format!("  {:<12} {:<28} {:<16} residual {}", status_tag(c.status), c.name, c.verdict, c.residual);
        if let Some(e) = &c.expected {
            line.push_str(&format!("  expected {e}"));
        }
        if let Some(o) = &c.observed {
            line.push_str(&format!("  observed {o}"));
        }
        if let Some(w) = &c.witness {
            let at: Vec<String> = w.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
            line.push_str(&format!("  witness {} at {}", w.value, at.join(" ")));
        }
        if let Some(d) = &c.detail {
            line.push_str(&format!("  ({d})"));
        }
        println!("{line}");
    }
    let s = &report.summary;
    println!("  summary: {} pass, {} fail, {} inconclusive", s.pass, s.fail, s.inconclusive);
}

fn emit(report: &Report, as_json: bool) {
    if as_json {
        println!("{}", report.to_json());
    } else {
        print_table(report);
    }
}

fn run_single(global: &Global, stages: Stages) -> Result<u8, InputError> {
    let (spec, expected) = global.input()?;
    let report = run_checks(&spec, expected.as_ref(), &global.config(stages));
    emit(&report, global.json);
    Ok(exit_code(&[&report]))
}

fn run_catalog(global: &Global, all: bool, source: bool) -> Result<u8, InputError> {
    let cfg = global.config(Stages::ALL);
    if let Some(name) = &global.entry {
        let entry = find_entry(name).ok_or_else(|| InputError(format!("unknown catalog entry '{name}'")))?;
        if source {
            print!("{}", entry.source);
            return Ok(0);
        }
        let report = run_checks(&entry.spec, Some(&entry.expected), &cfg);
        emit(&report, global.json);
        return Ok(exit_code(&[&report]));
    }
    let entries = catalog();
    if !all {
        if global.json {
            let list: Vec<_> = entries
                .iter()
                .map(|e| json!({"name": e.name, "description": e.description, "expected": e.expected, "source": e.source}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&json!({"schema": SCHEMA_VERSION, "entries": list})).expect("json"));
        } else {
            for e in &entries {
                println!("{:<16} {}", e.name, e.description);
            }
        }
        return Ok(0);
    }
    let reports: Vec<Report> = entries.par_iter().map(|e| run_checks(&e.spec, Some(&e.expected), &cfg)).collect();
    if global.json {
        let body = json!({"schema": SCHEMA_VERSION, "reports": reports});
        println!("{}", serde_json::to_string_pretty(&body).expect("json"));
    } else {
        for r in &reports {
            print_table(r);
        }
    }
    Ok(exit_code(&reports.iter().collect::<Vec<_>>()))
}

fn invariants_demo(global: &Global) -> Result<u8, InputError> {
    let a = Gl2Element::rational(rat(2, 1), rat(1, 3), rat(-1, 2), rat(3, 1)).expect("regular element");
    let mut rows = Vec::new();
    for kind in InvariantKind::ALL {
        let theta: Vec<Expr> = theta_symbols(kind.dim()).iter().map(Expr::from_symbol).collect();
        let rep = check_equivariance(kind, &a, global.trials.max(3), global.seed)
            .map_err(|e| InputError(e.to_string()))?;
        rows.push(json!({
            "invariant": kind.name(),
            "dim": kind.dim(),
            "degree": kind.degree(),
            "relative_invariant": rep.is_relative_invariant(),
            "weight": rep.weight.map(|w| w.to_string()),
            "stated_weight": rep.stated_weight,
            "polynomial": kind.poly().to_expr(&theta).to_string(),
        }));
    }
    let cartan = cartan_identity_check::<QSqrt3>(&five_dim_metric().lift(), &five_dim_upsilon::<QSqrt3>())
        .map_err(|e| InputError(e.to_string()))?;
    let ok = cartan.exact_zero && rows.iter().all(|r| r["relative_invariant"] == json!(true));
    if global.json {
        let body = json!({
            "schema": SCHEMA_VERSION,
            "invariants": rows,
            "cartan_identities": {
                "symmetry": cartan.symmetry,
                "trace": cartan.trace,
                "identity": cartan.identity,
                "exact_zero": cartan.exact_zero,
            },
        });
        println!("{}", serde_json::to_string_pretty(&body).expect("json"));
    } else {
        for r in &rows {
            println!(
                "{:<10} n = {}  degree {}  weight {}  printed weight {}  {}",
                r["invariant"].as_str().unwrap_or(""),
                r["dim"],
                r["degree"],
                r["weight"].as_str().unwrap_or("-"),
                r["stated_weight"].as_i64().map_or("-".to_string(), |w| w.to_string()),
                r["polynomial"].as_str().unwrap_or("")
            );
        }
        println!(
            "five-dimensional identities: symmetry {:e}, trace {:e}, quadratic {:e}, exact {}",
            cartan.symmetry, cartan.trace, cartan.identity, cartan.exact_zero
        );
    }
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn run(cli: &Cli) -> Result<u8, InputError> {
    let g = &cli.global;
    match &cli.command {
        Command::Check => run_single(g, Stages::ALL),
        Command::Classify => run_single(g, Stages { classify: true, frame: false, curvature: false }),
        Command::VerifyFrame => run_single(g, Stages { classify: false, frame: true, curvature: false }),
        Command::Curvature => run_single(g, Stages { classify: false, frame: false, curvature: true }),
        Command::Catalog { all, source } => run_catalog(g, *all, *source),
        Command::InvariantsDemo => invariants_demo(g),
        Command::Ree { samples } => {
            let ree = ReeConfig { samples: *samples, seed: g.seed, ..ReeConfig::default() };
            let report = ree_report(&ree, &g.config(Stages::WUNSCHMANN));
            emit(&report, g.json);
            Ok(exit_code(&[&report]))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
