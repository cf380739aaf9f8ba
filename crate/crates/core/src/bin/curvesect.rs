//! Command-line front end: check point sets against the intersection-set
//! characterization, emit witnesses and certificates, run independence
//! diagnostics, generate scenario corpora, and decompose polynomials over a
//! witness pair.
//!
//! Exit codes: 0 accepted / all checks hold, 1 rejected, 2 malformed input,
//! 3 generation cap exceeded.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use curvesect::curves::{find_overloaded_conic, find_overloaded_line, CONIC_SCAN_CAP};
use curvesect::decision::{
    decide_intersection_set, noether_decompose, verify_cayley_bacharach, Decision,
};
use curvesect::generators::{
    self, gen_conic_chords, gen_line_product, gen_negative, gen_random_generic,
    gen_reducible_mixed, NegativeKind, Scenario,
};
use curvesect::independence::independence_report;
use curvesect::poly::Poly;
use curvesect::{Error, PointSet};

#[derive(Parser)]
#[command(name = "curvesect", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Text,
}

#[derive(Args)]
struct DegreesArg {
    /// Degree of the smaller curve
    #[arg(long)]
    m: i64,
    /// Degree of the larger curve
    #[arg(long)]
    n: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the points are an intersection set for (m, n)
    Check {
        #[command(flatten)]
        degrees: DegreesArg,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputMode,
        /// Point-set JSON file, or "-" for standard input
        input: String,
    },
    /// Like check, but print only the witness curves on acceptance
    Witness {
        #[command(flatten)]
        degrees: DegreesArg,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputMode,
        input: String,
    },
    /// Independence/poisedness report with overload diagnostics
    Analyze {
        /// Degree at which to analyze the set
        #[arg(long)]
        degree: i64,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputMode,
        input: String,
    },
    /// Generate a scenario (stdout) or the full corpus (--suite)
    Gen {
        #[arg(long)]
        kind: Option<GenKind>,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the full acceptance corpus plus manifest into a directory
        #[arg(long)]
        suite: Option<PathBuf>,
    },
    /// Decompose p as A*sigma_m + B*sigma_n over the witnesses for the set
    Noether {
        #[command(flatten)]
        degrees: DegreesArg,
        /// Polynomial JSON file
        #[arg(long)]
        p: PathBuf,
        /// Point-set JSON file, or "-" for standard input
        input: String,
    },
    /// Evaluate the three Cayley-Bacharach facts for the set
    CbVerify {
        #[command(flatten)]
        degrees: DegreesArg,
        input: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    #[value(alias = "line_product_grid")]
    LineProductGrid,
    #[value(alias = "conic_chords")]
    ConicChords,
    #[value(alias = "reducible_mixed")]
    ReducibleMixed,
    #[value(alias = "negative_moved_point")]
    NegativeMovedPoint,
    #[value(alias = "negative_deleted_point")]
    NegativeDeletedPoint,
    #[value(alias = "negative_collinear_overload")]
    NegativeCollinearOverload,
    #[value(alias = "random_generic")]
    RandomGeneric,
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn parse_points(path: &str) -> Result<PointSet, String> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| format!("parsing point set: {e}"))
}

const EXIT_REJECTED: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_GENERATION: u8 = 3;

fn fail(code: u8, message: String) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { degrees, output, input } => {
            run_check(degrees, output, &input, false)
        }
        Command::Witness { degrees, output, input } => {
            run_check(degrees, output, &input, true)
        }
        Command::Analyze { degree, output, input } => run_analyze(degree, output, &input),
        Command::Gen { kind, m, n, seed, suite } => run_gen(kind, m, n, seed, suite),
        Command::Noether { degrees, p, input } => run_noether(degrees, &p, &input),
        Command::CbVerify { degrees, input } => run_cb_verify(degrees, &input),
    }
}

fn render_decision(decision: &Decision, mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => serde_json::to_string(decision).expect("decision serializes"),
        OutputMode::Text => {
            let mut out = String::new();
            out.push_str(if decision.verdict {
                "verdict: intersection set\n"
            } else {
                "verdict: not an intersection set\n"
            });
            out.push_str(&format!("kappa: {}\n", decision.kappa));
            if let Some(sm) = &decision.sigma_m {
                out.push_str(&format!("sigma_m: {sm}\n"));
            }
            if let Some(sn) = &decision.sigma_n {
                out.push_str(&format!("sigma_n: {sn}\n"));
            }
            if let Some(failure) = &decision.failure {
                match failure {
                    curvesect::Failure::ConditionA { point, certificate } => out.push_str(
                        &format!(
                            "failure: condition a at point ({}, {}); separating curve: {certificate}\n",
                            point[0], point[1]
                        ),
                    ),
                    curvesect::Failure::ConditionB { certificate } => out.push_str(&format!(
                        "failure: condition b; low-degree curve through all points: {certificate}\n"
                    )),
                    curvesect::Failure::CardinalityMismatch => {
                        out.push_str("failure: cardinality mismatch\n")
                    }
                }
            }
            out
        }
    }
}

fn run_check(degrees: DegreesArg, output: OutputMode, input: &str, witness_only: bool) -> ExitCode {
    let points = match parse_points(input) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_BAD_INPUT, e),
    };
    let decision = match decide_intersection_set(&points, degrees.m, degrees.n) {
        Ok(d) => d,
        Err(e @ Error::InvalidDegrees { .. }) => return fail(EXIT_BAD_INPUT, e.to_string()),
        Err(e) => return fail(EXIT_BAD_INPUT, e.to_string()),
    };
    if witness_only && decision.verdict {
        match output {
            OutputMode::Json => {
                #[derive(serde::Serialize)]
                struct Witnesses<'a> {
                    sigma_m: &'a Poly,
                    sigma_n: &'a Poly,
                }
                let w = Witnesses {
                    sigma_m: decision.sigma_m.as_ref().expect("accepted"),
                    sigma_n: decision.sigma_n.as_ref().expect("accepted"),
                };
                println!("{}", serde_json::to_string(&w).expect("witnesses serialize"));
            }
            OutputMode::Text => {
                println!("sigma_m: {}", decision.sigma_m.as_ref().expect("accepted"));
                println!("sigma_n: {}", decision.sigma_n.as_ref().expect("accepted"));
            }
        }
    } else {
        print!("{}", render_decision(&decision, output));
        if output == OutputMode::Json {
            println!();
        }
    }
    if decision.verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_REJECTED)
    }
}

#[derive(serde::Serialize)]
struct AnalyzeOutput {
    #[serde(flatten)]
    report: curvesect::IndependenceReport,
    overloaded_line: Option<OverloadFinding>,
    overloaded_conic: Option<OverloadFinding>,
}

#[derive(serde::Serialize)]
struct OverloadFinding {
    curve: Poly,
    points: PointSet,
}

fn run_analyze(degree: i64, output: OutputMode, input: &str) -> ExitCode {
    let points = match parse_points(input) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_BAD_INPUT, e),
    };
    let report = independence_report(&points, degree);
    let overloaded_line =
        find_overloaded_line(&points, degree).map(|(curve, points)| OverloadFinding { curve, points });
    let overloaded_conic = if points.len() <= CONIC_SCAN_CAP {
        find_overloaded_conic(&points, degree)
            .expect("size checked")
            .map(|(curve, points)| OverloadFinding { curve, points })
    } else {
        None
    };
    let out = AnalyzeOutput { report, overloaded_line, overloaded_conic };
    match output {
        OutputMode::Json => {
            println!("{}", serde_json::to_string(&out).expect("report serializes"))
        }
        OutputMode::Text => {
            println!("degree: {}", out.report.n);
            println!("independent: {}", out.report.independent);
            println!("poised: {}", out.report.poised);
            println!("essentially_dependent: {}", out.report.essentially_dependent);
            if let Some(w) = &out.report.witness_point {
                println!("point without fundamental polynomial: ({}, {})", w[0], w[1]);
            }
            println!("vanishing_dim: {}", out.report.vanishing_dim);
            println!(
                "max_independent_subset: {} points",
                out.report.max_independent_subset.len()
            );
            if let Some(f) = &out.overloaded_line {
                println!("overloaded line: {} through {} points", f.curve, f.points.len());
            }
            if let Some(f) = &out.overloaded_conic {
                println!("overloaded conic: {} through {} points", f.curve, f.points.len());
            }
        }
    }
    ExitCode::SUCCESS
}

fn generate_one(kind: GenKind, m: i64, n: i64, seed: u64) -> Result<Scenario, Error> {
    match kind {
        GenKind::LineProductGrid => gen_line_product(m, n, seed),
        GenKind::ConicChords => gen_conic_chords(n, seed),
        GenKind::ReducibleMixed => gen_reducible_mixed(m, n, seed),
        GenKind::RandomGeneric => gen_random_generic(m, n, seed),
        GenKind::NegativeMovedPoint => {
            gen_negative(&gen_line_product(m, n, seed)?, NegativeKind::MovedPoint, seed)
        }
        GenKind::NegativeDeletedPoint => {
            gen_negative(&gen_line_product(m, n, seed)?, NegativeKind::DeletedPoint, seed)
        }
        GenKind::NegativeCollinearOverload => gen_negative(
            &gen_line_product(m, n, seed)?,
            NegativeKind::CollinearOverload,
            seed,
        ),
    }
}

fn run_gen(
    kind: Option<GenKind>,
    m: Option<i64>,
    n: Option<i64>,
    seed: Option<u64>,
    suite: Option<PathBuf>,
) -> ExitCode {
    if let Some(dir) = suite {
        return run_gen_suite(&dir);
    }
    let (Some(kind), Some(m), Some(n), Some(seed)) = (kind, m, n, seed) else {
        return fail(
            EXIT_BAD_INPUT,
            "gen requires --kind, --m, --n and --seed (or --suite <dir>)".into(),
        );
    };
    match generate_one(kind, m, n, seed) {
        Ok(scenario) => {
            println!("{}", serde_json::to_string(&scenario).expect("scenario serializes"));
            ExitCode::SUCCESS
        }
        Err(e @ Error::GenerationCap(_)) => fail(EXIT_GENERATION, e.to_string()),
        Err(e) => fail(EXIT_BAD_INPUT, e.to_string()),
    }
}

fn run_gen_suite(dir: &PathBuf) -> ExitCode {
    let scenarios = match generators::generate_suite() {
        Ok(s) => s,
        Err(e @ Error::GenerationCap(_)) => return fail(EXIT_GENERATION, e.to_string()),
        Err(e) => return fail(EXIT_BAD_INPUT, e.to_string()),
    };
    if let Err(e) = write_suite(dir, &scenarios) {
        return fail(EXIT_BAD_INPUT, e);
    }
    println!("wrote {} scenarios to {}", scenarios.len(), dir.display());
    ExitCode::SUCCESS
}

fn write_suite(dir: &PathBuf, scenarios: &[Scenario]) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("creating {}: {e}", dir.display()))?;
    for s in scenarios {
        let name = generators::scenario_file_name(s);
        let body = serde_json::to_string(s).expect("scenario serializes");
        fs::write(dir.join(&name), body).map_err(|e| format!("writing {name}: {e}"))?;
    }
    let manifest = generators::manifest_for(scenarios);
    let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(dir.join("manifest.json"), body)
        .map_err(|e| format!("writing manifest.json: {e}"))?;
    Ok(())
}

fn run_noether(degrees: DegreesArg, p_path: &PathBuf, input: &str) -> ExitCode {
    let points = match parse_points(input) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_BAD_INPUT, e),
    };
    let p: Poly = match fs::read_to_string(p_path)
        .map_err(|e| format!("reading {}: {e}", p_path.display()))
        .and_then(|text| {
            serde_json::from_str(&text).map_err(|e| format!("parsing polynomial: {e}"))
        }) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_BAD_INPUT, e),
    };
    let decision = match decide_intersection_set(&points, degrees.m, degrees.n) {
        Ok(d) => d,
        Err(e) => return fail(EXIT_BAD_INPUT, e.to_string()),
    };
    if !decision.verdict {
        eprintln!("error: the set is not an intersection set for these degrees");
        return ExitCode::from(EXIT_REJECTED);
    }
    let sigma_m = decision.sigma_m.expect("accepted");
    let sigma_n = decision.sigma_n.expect("accepted");
    match noether_decompose(&p, &sigma_m, &sigma_n, &points) {
        Ok(Some((a, b))) => {
            #[derive(serde::Serialize)]
            struct Parts {
                a: Poly,
                b: Poly,
                sigma_m: Poly,
                sigma_n: Poly,
            }
            let parts = Parts { a, b, sigma_m, sigma_n };
            println!("{}", serde_json::to_string(&parts).expect("parts serialize"));
            ExitCode::SUCCESS
        }
        Ok(None) => {
            eprintln!("error: decomposition system inconsistent");
            ExitCode::from(EXIT_REJECTED)
        }
        Err(e) => fail(EXIT_BAD_INPUT, e.to_string()),
    }
}

fn run_cb_verify(degrees: DegreesArg, input: &str) -> ExitCode {
    let points = match parse_points(input) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_BAD_INPUT, e),
    };
    if degrees.m < 1 || degrees.m > degrees.n {
        return fail(
            EXIT_BAD_INPUT,
            Error::InvalidDegrees { m: degrees.m, n: degrees.n }.to_string(),
        );
    }
    let report = verify_cayley_bacharach(&points, degrees.m, degrees.n);
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    if report.all_hold() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_REJECTED)
    }
}
