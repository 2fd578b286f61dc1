use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qtri::autos::{self, Sextuple};
use qtri::deriv;
use qtri::qalgebra::center_lattice;
use qtri::structure::{self, CheckReport};
use qtri::{expr, json, Element, TriangularAlgebra};
use serde_json::{json, Value};

/// Exact computations in the quantum triangular algebras T_q(n) and UT_q(n).
#[derive(Parser)]
#[command(name = "qtri", version)]
struct Cli {
    /// Matrix size.
    #[arg(long, short, default_value_t = 2, global = true)]
    n: usize,
    /// Work in UT_q(n), with the diagonal generators inverted.
    #[arg(long, global = true)]
    localized: bool,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Normalize { expr: String },
    /// Compare two expressions; exit code 1 if they differ.
    Equal { left: String, right: String },
    /// Coproduct.
    Delta { expr: String },
    /// Counit.
    Counit { expr: String },
    /// Antipode (needs --localized).
    Antipode { expr: String },
    /// The star involution (needs --localized).
    Star { expr: String },
    /// The element b[i,j].
    B { i: usize, j: usize },
    /// Exponent lattice of the central monomials.
    Center,
    /// Run one verification suite, or all of them.
    Check {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Derivations of T_q(2) and UT_q(2).
    Derivations {
        #[command(subcommand)]
        command: DerivCommand,
    },
    /// The sextuple group of UT_q(2); sextuples are written [l12,l11,l22,j,k,l].
    Autos {
        #[command(subcommand)]
        command: AutoCommand,
    },
}

#[derive(Subcommand)]
enum DerivCommand {
    /// Test every D_{st,nu} with entries of nu up to the bound.
    Classify {
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Verify the UT_q(2) derivation table.
    CheckTable,
}

#[derive(Subcommand)]
enum AutoCommand {
    Compose { first: String, second: String },
    Invert { s: String },
    Conjugate { s: String },
    Decompose { s: String },
    IsHopf { s: String },
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

fn element_output(e: &Element) -> Output {
    Output::ok(expr::format(e), json!({ "text": expr::format(e), "terms": json::element_to_json(e) }))
}

fn report_json(r: &CheckReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn reports_output(reports: Vec<CheckReport>) -> Output {
    let ok = reports.iter().all(|r| r.passed);
    let text = reports.iter().map(CheckReport::summary).collect::<Vec<_>>().join("\n");
    let json = json!({ "passed": ok, "reports": reports.iter().map(report_json).collect::<Vec<_>>() });
    Output { text, json, ok }
}

fn sextuple_output(s: &Sextuple) -> Output {
    Output::ok(s.to_string(), json!(s.to_string()))
}

fn run(cli: &Cli) -> qtri::Result<Output> {
    let tri = || TriangularAlgebra::build(cli.n, cli.localized);
    let out = match &cli.command {
        Command::Normalize { expr: text } => element_output(&expr::parse(text, &tri()?)?),
        Command::Equal { left, right } => {
            let t = tri()?;
            let same = expr::parse(left, &t)? == expr::parse(right, &t)?;
            let text = if same { "equal" } else { "not equal" };
            Output { text: text.into(), json: json!({ "equal": same }), ok: same }
        }
        Command::Delta { expr: text } => {
            let t = tri()?;
            let d = t.coproduct(&expr::parse(text, &t)?)?;
            Output::ok(expr::format_tensor(&d), json!({ "text": expr::format_tensor(&d), "terms": json::tensor_to_json(&d) }))
        }
        Command::Counit { expr: text } => {
            let t = tri()?;
            let c = t.counit(&expr::parse(text, &t)?)?;
            Output::ok(c.to_string(), json!({ "text": c.to_string(), "terms": json::scalar_to_json(&c) }))
        }
        Command::Antipode { expr: text } => {
            let t = tri()?;
            element_output(&t.antipode(&expr::parse(text, &t)?)?)
        }
        Command::Star { expr: text } => {
            let t = tri()?;
            element_output(&t.star(&expr::parse(text, &t)?)?)
        }
        Command::B { i, j } => element_output(&tri()?.b_element(*i, *j)?),
        Command::Center => {
            let t = tri()?;
            let c = center_lattice(t.algebra());
            let text = if c.is_trivial() {
                "trivial".to_string()
            } else {
                let fmt = |v: &Vec<Vec<i64>>| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" ");
                format!("units: {}\ncone: {}", fmt(&c.unit_generators), fmt(&c.cone_generators))
            };
            Output::ok(text, serde_json::to_value(&c).expect("lattices serialize"))
        }
        Command::Check { suite } => {
            let names: Vec<&str> = if suite == "all" { structure::SUITES.to_vec() } else { vec![suite.as_str()] };
            let reports = names.iter().map(|s| structure::run_suite(s, cli.n, cli.seed)).collect::<qtri::Result<Vec<_>>>()?;
            reports_output(reports)
        }
        Command::Derivations { command: DerivCommand::Classify { bound } } => {
            let rows = deriv::classify_t2(*bound)?;
            let bad: Vec<_> = rows.iter().filter(|r| r.is_derivation != r.predicted).collect();
            let valid = rows.iter().filter(|r| r.is_derivation).count();
            let mut text = format!("{} maps, {} derivations, {} discrepancies", rows.len(), valid, bad.len());
            for r in &bad {
                text.push_str(&format!("\nD_{}{} nu=({},{},{}): derivation {}", r.s, r.t, r.nu.0, r.nu.1, r.nu.2, r.is_derivation));
            }
            let json = json!({ "rows": rows, "discrepancies": bad.len() });
            Output { text, json, ok: bad.is_empty() }
        }
        Command::Derivations { command: DerivCommand::CheckTable } => reports_output(vec![deriv::utq2_derivation_table()]),
        Command::Autos { command } => match command {
            AutoCommand::Compose { first, second } => {
                sextuple_output(&autos::g_compose(&Sextuple::parse(first)?, &Sextuple::parse(second)?))
            }
            AutoCommand::Invert { s } => sextuple_output(&autos::g_inverse(&Sextuple::parse(s)?)),
            AutoCommand::Conjugate { s } => sextuple_output(&autos::rho_conjugate(&Sextuple::parse(s)?)),
            AutoCommand::Decompose { s } => {
                let (a, b, c) = autos::g_decompose(&Sextuple::parse(s)?);
                let parts = [a.to_string(), b.to_string(), c.to_string()];
                Output::ok(parts.join(" * "), json!(parts))
            }
            AutoCommand::IsHopf { s } => {
                let hopf = autos::is_hopf_auto(&Sextuple::parse(s)?);
                Output { text: hopf.to_string(), json: json!({ "hopf": hopf }), ok: hopf }
            }
        },
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
