//! Command-line front end: classify sign patterns, emit and strictify
//! counterexample certificates, run the randomized verification harness,
//! factor class members through diagonal scalings, and export DOT graphs.
//!
//! Exit codes: 0 success, 2 malformed input, 3 resource bound exceeded,
//! 4 witness requested for a statement that holds. Anything else is 1.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qualprod::bipartite::build_graph;
use qualprod::blockcirc::BlockCirculantDigraph;
use qualprod::classify::{classify, ClassificationReport, Statement};
use qualprod::dot::{bipartite_dot, digraph_dot};
use qualprod::error::Error;
use qualprod::exact::rational::parse_rational;
use qualprod::exact::{ExactMatrix, DEFAULT_MINOR_CAP};
use qualprod::io::{write_atomic, MatrixDocument};
use qualprod::scaling::factor;
use qualprod::signpat::{MagnitudeRange, SignPattern};
use qualprod::verify::{verify, VerifyConfig};
use qualprod::witness::{strictify, witness_for};

/// Environment variable overriding the exact principal-minor order cap.
const MINOR_CAP_VAR: &str = "QUALPROD_MINOR_CAP";

#[derive(Parser)]
#[command(
    name = "qualprod",
    version,
    about = "Decide which alternating-product containments a sign pattern guarantees"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a pattern on the containment ladder and print the verdict
    /// for every statement.
    Classify(ClassifyArgs),
    /// Construct a machine-checkable counterexample for a failing
    /// statement.
    Witness(WitnessArgs),
    /// Sample random products and corroborate the classification.
    Verify(VerifyArgs),
    /// Factor one exact matrix through another by positive diagonal
    /// scalings, or report the obstructing cycle.
    Factor(FactorArgs),
    /// Export the pattern graph (and optionally the product digraph) as
    /// DOT.
    Graph(GraphArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Sign-pattern document (JSON).
    input: PathBuf,
    /// Print the full report as JSON.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Print a line-per-statement text report (default).
    #[arg(long)]
    text: bool,
    /// Also write the pattern graph as DOT to this path.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Sign-pattern document (JSON).
    input: PathBuf,
    /// Statement to refute: P0_2, P0_4, P0_6, P0_ALL, PS_2, PS_4, PS_ALL.
    #[arg(long, value_name = "STATEMENT")]
    target: String,
    /// Perturb the certificate so every factor is a strict class member.
    #[arg(long)]
    strict: bool,
    /// Write the certificate here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Sign-pattern document (JSON).
    input: PathBuf,
    /// Half-lengths to sample, comma separated: k tests 2k-factor products.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    k: Vec<usize>,
    /// Products sampled per half-length.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Seed for the whole report; equal seeds give byte-identical reports.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Probability that a sampled entry degenerates to zero (closure
    /// members).
    #[arg(long, default_value_t = 0.0, value_name = "PROB")]
    zero_prob: f64,
    /// Smallest entry magnitude, as a rational like 1/2.
    #[arg(long, default_value = "1", value_name = "RAT")]
    mag_lo: String,
    /// Largest entry magnitude, as a rational.
    #[arg(long, default_value = "10", value_name = "RAT")]
    mag_hi: String,
}

#[derive(Args)]
struct FactorArgs {
    /// Exact-matrix document: the reference member a.
    reference: PathBuf,
    /// Exact-matrix document: the target member b, to be written as DaE.
    target: PathBuf,
}

#[derive(Args)]
struct GraphArgs {
    /// Sign-pattern document (JSON).
    input: PathBuf,
    /// Write the bipartite pattern graph here (default: stdout).
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Also emit the 2k-block product digraph for this half-length.
    #[arg(long, value_name = "K")]
    digraph: Option<usize>,
    /// Write the product digraph here (default: stdout).
    #[arg(long, value_name = "PATH", requires = "digraph")]
    digraph_dot: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 2,
                Error::Resource(_) => 3,
                Error::StatementHolds(_) => 4,
                _ => 1,
            })
        }
    }
}

fn run(cmd: Cmd) -> qualprod::Result<()> {
    match cmd {
        Cmd::Classify(args) => cmd_classify(args),
        Cmd::Witness(args) => cmd_witness(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Factor(args) => cmd_factor(args),
        Cmd::Graph(args) => cmd_graph(args),
    }
}

// ---- Input plumbing ----

fn load_pattern(path: &Path) -> qualprod::Result<SignPattern> {
    match MatrixDocument::load(path)? {
        MatrixDocument::Pattern(p) => Ok(p),
        MatrixDocument::Matrix(_) => Err(Error::Parse(format!(
            "{} holds an exact matrix; this command needs a sign-pattern document",
            path.display()
        ))),
    }
}

fn load_matrix(path: &Path) -> qualprod::Result<ExactMatrix> {
    match MatrixDocument::load(path)? {
        MatrixDocument::Matrix(m) => Ok(m),
        MatrixDocument::Pattern(_) => Err(Error::Parse(format!(
            "{} holds a sign pattern; this command needs an exact-matrix document",
            path.display()
        ))),
    }
}

fn minor_cap_from_env() -> qualprod::Result<usize> {
    match std::env::var(MINOR_CAP_VAR) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&cap| cap >= 1)
            .ok_or_else(|| {
                Error::Parse(format!("{MINOR_CAP_VAR} must be a positive integer, got {raw:?}"))
            }),
        Err(_) => Ok(DEFAULT_MINOR_CAP),
    }
}

fn emit(out: Option<&Path>, contents: &str) -> qualprod::Result<()> {
    match out {
        Some(path) => write_atomic(path, contents.as_bytes()),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn pretty_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    text
}

// ---- Subcommands ----

fn text_report(report: &ClassificationReport) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let p = &report.pattern;
    writeln!(out, "pattern: {}x{}", p.rows(), p.cols()).unwrap();
    writeln!(out, "level: {}", report.level).unwrap();
    for statement in Statement::ALL {
        let verdict = if report.conclusions.get(statement) { "HOLDS" } else { "FAILS" };
        writeln!(out, "{:<6} {verdict}", statement.as_str()).unwrap();
    }
    let certs = &report.certificates;
    if let Some(c) = &certs.two_even_cycle {
        let path: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
        writeln!(
            out,
            "cycle with even length/2 + weight: {} (weight {})",
            path.join(" "),
            c.weight
        )
        .unwrap();
    } else if let Some(c) = &certs.cycle {
        let path: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
        writeln!(out, "shortest cycle: {} (weight {})", path.join(" "), c.weight).unwrap();
    }
    if let Some(t) = &certs.tstar {
        let legs: Vec<String> =
            t.legs.iter().map(|(mid, tip)| format!("{}-{}", mid, tip)).collect();
        writeln!(
            out,
            "three-legged subtree: center {} with legs {}",
            t.center,
            legs.join(", ")
        )
        .unwrap();
    }
    out
}

fn cmd_classify(args: ClassifyArgs) -> qualprod::Result<()> {
    let pattern = load_pattern(&args.input)?;
    let report = classify(&pattern);
    if let Some(dot_path) = &args.dot {
        write_atomic(dot_path, bipartite_dot(&build_graph(&pattern)).as_bytes())?;
    }
    let rendered =
        if args.json { pretty_json(&report) } else { text_report(&report) };
    print!("{rendered}");
    Ok(())
}

fn cmd_witness(args: WitnessArgs) -> qualprod::Result<()> {
    let pattern = load_pattern(&args.input)?;
    let statement: Statement = args.target.parse()?;
    let mut cert = witness_for(&pattern, statement)?;
    if args.strict {
        cert = strictify(&cert)?;
    }
    emit(args.out.as_deref(), &pretty_json(&cert))
}

fn cmd_verify(args: VerifyArgs) -> qualprod::Result<()> {
    let pattern = load_pattern(&args.input)?;
    let config = VerifyConfig {
        seed: args.seed,
        samples_per_k: args.samples,
        ks: args.k,
        magnitude: MagnitudeRange::new(
            parse_rational(&args.mag_lo)?,
            parse_rational(&args.mag_hi)?,
        )?,
        zero_probability: args.zero_prob,
        minor_cap: minor_cap_from_env()?,
    };
    let report = verify(&pattern, &config)?;
    print!("{}", pretty_json(&report));
    Ok(())
}

fn cmd_factor(args: FactorArgs) -> qualprod::Result<()> {
    let a = load_matrix(&args.reference)?;
    let b = load_matrix(&args.target)?;
    // Shape or sign mismatches are input errors at this surface.
    let outcome = factor(&a, &b).map_err(|e| match e {
        Error::Domain(msg) | Error::Dimension(msg) => Error::Parse(msg),
        other => other,
    })?;
    print!("{}", pretty_json(&outcome));
    Ok(())
}

fn cmd_graph(args: GraphArgs) -> qualprod::Result<()> {
    let pattern = load_pattern(&args.input)?;
    let g = build_graph(&pattern);
    emit(args.dot.as_deref(), &bipartite_dot(&g))?;
    if let Some(k) = args.digraph {
        if k == 0 {
            return Err(Error::Parse("--digraph needs k >= 1".into()));
        }
        let dg = BlockCirculantDigraph::from_alternating(&pattern, k)?;
        emit(args.digraph_dot.as_deref(), &digraph_dot(&dg))?;
    }
    Ok(())
}
