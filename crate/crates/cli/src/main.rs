//! `fpg`: run operations, verification suites and simulations from the shell.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 internal invariant violation.

mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fpg_core::chenfliess::{closed_loop_series, evaluate_cf, evaluate_ff, feedback_sim};
use fpg_core::composition::{compose, mixed_compose, triangle};
use fpg_core::error::{Error, Result};
use fpg_core::hopf::{antipode, coproduct_delta, delta, evaluate, rho, HopfTable};
use fpg_core::json::{series2_to_json, series_to_json};
use fpg_core::postgroup::{dot_inv, dot_mul, opposite_act, opposite_mul, star_inv, star_mul};
use fpg_core::postlie::{bullet, derived_bracket, lie_bracket, linearize_action, post_lie_act};
use fpg_core::verify::{run_suite, Suite, SuiteSpec};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "fpg", version, about = "Affine feedback algebra of Chen-Fliess series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one operation and print the result as JSON.
    Op {
        /// Operation name; `fpg op list` prints them all.
        name: String,
        /// Operands: file paths, inline JSON, or short forms such as `2*x0x1 - x1` and `[1, x1]`.
        args: Vec<String>,
        /// Truncation degree for operands given in short form.
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Run a seeded verification suite.
    Verify {
        /// One of: shuffle, group, postgroup, postlie, hopf-duality, cointeraction, numeric.
        suite: String,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Simulate the closed loop `y = F_c[u·F_{d1}[y] + F_{d2}[y]]`.
    Simulate {
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
        #[arg(long)]
        signal: String,
        #[arg(long, default_value_t = 1e-10)]
        picard_tol: f64,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        /// Degree for short-form `--c` and `--d`.
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Print δ, ρ, Δ and the antipode on every generator up to a degree.
    HopfTable {
        #[arg(long)]
        max_degree: u32,
    },
}

/// Name, operand count, operand shapes.
const OPS: &[(&str, usize, &str)] = &[
    ("shuffle", 2, "a b"),
    ("shuffle-inv", 1, "a"),
    ("compose", 2, "a b"),
    ("mixed-compose", 2, "a [d1, d2]"),
    ("triangle", 2, "[c1, c2] [d1, d2]"),
    ("dot-mul", 2, "group group"),
    ("dot-inv", 1, "group"),
    ("star-mul", 2, "group group"),
    ("star-inv", 1, "group"),
    ("opposite-mul", 2, "group group"),
    ("opposite-act", 2, "group group"),
    ("lie-bracket", 2, "lie lie"),
    ("post-lie-act", 2, "lie lie"),
    ("derived-bracket", 2, "lie lie"),
    ("bullet", 2, "lie lie"),
    ("linearize", 2, "lie lie"),
    ("closed-loop", 2, "c [d1, d2]"),
    ("evaluate-cf", 2, "c signal"),
    ("evaluate-ff", 2, "[c1, c2] signal"),
    ("hopf-delta", 1, "monomial"),
    ("hopf-rho", 1, "monomial"),
    ("hopf-coproduct", 1, "monomial"),
    ("hopf-antipode", 1, "monomial"),
    ("hopf-evaluate", 2, "monomial [c1, c2]"),
];

fn arity(name: &str, args: &[String]) -> Result<()> {
    let Some(&(_, want, shape)) = OPS.iter().find(|(n, ..)| *n == name) else {
        return Err(Error::Parse(format!("unknown operation {name:?}; try `fpg op list`")));
    };
    if args.len() != want {
        return Err(Error::Parse(format!("{name} takes {want} operand(s): {shape}")));
    }
    Ok(())
}

fn run_op(name: &str, args: &[String], deg: u32) -> Result<Value> {
    if name == "list" {
        return Ok(Value::Object(OPS.iter().map(|(n, _, s)| (n.to_string(), Value::from(*s))).collect()));
    }
    arity(name, args)?;
    let a = |i: usize| args[i].as_str();
    let s1 = |i| input::series(a(i), deg);
    let s2 = |i| input::series2(a(i), deg);
    let g = |i| input::group(a(i), deg);
    let l = |i| input::lie(a(i), deg);
    let h = |i| input::h_element(a(i));
    let group_json = |x: fpg_core::series2::GroupElement| series2_to_json(x.as_series2());
    let lie_json = |x: fpg_core::series2::LieElement| series2_to_json(x.as_series2());
    Ok(match name {
        "shuffle" => series_to_json(&s1(0)?.shuffle(&s1(1)?)?),
        "shuffle-inv" => series_to_json(&s1(0)?.shuffle_inverse()?),
        "compose" => series_to_json(&compose(&s1(0)?, &s1(1)?)?),
        "mixed-compose" => series_to_json(&mixed_compose(&s1(0)?, &s2(1)?)?),
        "triangle" => series2_to_json(&triangle(&s2(0)?, &s2(1)?)?),
        "dot-mul" => group_json(dot_mul(&g(0)?, &g(1)?)?),
        "dot-inv" => group_json(dot_inv(&g(0)?)),
        "star-mul" => group_json(star_mul(&g(0)?, &g(1)?)?),
        "star-inv" => group_json(star_inv(&g(0)?)?),
        "opposite-mul" => group_json(opposite_mul(&g(0)?, &g(1)?)?),
        "opposite-act" => group_json(opposite_act(&g(0)?, &g(1)?)?),
        "lie-bracket" => lie_json(lie_bracket(&l(0)?, &l(1)?)?),
        "post-lie-act" => lie_json(post_lie_act(&l(0)?, &l(1)?)?),
        "derived-bracket" => lie_json(derived_bracket(&l(0)?, &l(1)?)?),
        "bullet" => lie_json(bullet(&l(0)?, &l(1)?)?),
        "linearize" => lie_json(linearize_action(&l(0)?, &l(1)?)?),
        "closed-loop" => series_to_json(&closed_loop_series(&s1(0)?, &s2(1)?)?),
        "evaluate-cf" => to_value(&evaluate_cf(&s1(0)?, &input::signal(a(1))?)),
        "evaluate-ff" => to_value(&evaluate_ff(&s2(0)?, &input::signal(a(1))?)),
        "hopf-delta" => delta(&h(0)?).to_json(),
        "hopf-rho" => rho(&h(0)?).to_json(),
        "hopf-coproduct" => coproduct_delta(&h(0)?).to_json(),
        "hopf-antipode" => antipode(&h(0)?).to_json(),
        "hopf-evaluate" => Value::String(evaluate(&h(0)?, &s2(1)?)?.to_string()),
        _ => unreachable!("arity() admits only listed operations"),
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serialises")
}

fn print(v: &Value) {
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("values serialise"));
}

fn exit_for(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Invariant(_) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn verify(suite: &str, degree: Option<u32>, cases: usize, seed: u64, json: bool) -> Result<ExitCode> {
    let suite: Suite = suite.parse()?;
    let spec = SuiteSpec::new(suite, degree.unwrap_or(suite.default_degree()), cases, seed)?;
    let report = run_suite(&spec)?;
    if json {
        print(&report.to_json());
    } else {
        println!(
            "{}: degree {}, {} random cases, {} fixed checks, {} failures ({} ms)",
            suite,
            spec.max_degree,
            report.cases,
            report.fixed_checks,
            report.failures.len(),
            report.wall_time_ms
        );
        for f in &report.failures {
            let case = f.case.map_or("fixed".to_string(), |i| format!("case {i}"));
            let at = f.witness.first_difference.as_deref().unwrap_or("-");
            println!("  FAIL {case}: {} (first difference at {at})", f.witness.check);
        }
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Op { name, args, degree } => run_op(&name, &args, degree).map(|v| {
            print(&v);
            ExitCode::SUCCESS
        }),
        Command::Verify { suite, degree, cases, seed, json } => verify(&suite, degree, cases, seed, json),
        Command::Simulate { c, d, signal, picard_tol, max_iter, degree } => (|| {
            let c = input::series(&c, degree)?;
            let d = input::series2(&d, degree)?;
            let u = input::signal(&signal)?;
            let run = feedback_sim(&c, &d, &u, picard_tol, max_iter)?;
            print(&to_value(&run));
            Ok(ExitCode::SUCCESS)
        })(),
        Command::HopfTable { max_degree } => {
            print(&HopfTable::new(max_degree).to_json());
            Ok(ExitCode::SUCCESS)
        }
    };
    outcome.unwrap_or_else(|e| exit_for(&e))
}
