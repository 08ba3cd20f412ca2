//! `quadgolod`: Koszulness, Golod maps and complete-intersection witnesses
//! for standard graded quadratic algebras with `dim R_2 <= 3`.
//!
//! Input files use the line format
//!
//! ```text
//! field: GF(3)
//! vars: x, y, z
//! rel: x*y
//! rel: x^2 - y^2
//! ```
//!
//! The exit code is nonzero only when reading or parsing input fails; a
//! computation that cannot be completed is reported, not treated as a failure.

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use quadgolod::algebra::{GradedAlgebra, PresentationText};
use quadgolod::classify::{classify, parse_field, ClassifyConfig, SCHEMA_VERSION};
use quadgolod::corpus::run_corpus;
use quadgolod::field::Field;
use quadgolod::resolution::{koszul_test, ResolutionOptions, DEFAULT_N};
use quadgolod::witness::{witness_search, WitnessConfig, MAX_CODIM};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quadgolod", version, about = "Koszul and Golod computations for quadratic algebras with dim R_2 <= 3")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Override the field of the input: QQ, GF(p) or GF(p^k).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Homological truncation N.
    #[arg(long = "trunc-hom", global = true, default_value_t = DEFAULT_N)]
    trunc_hom: usize,
    /// Internal-degree truncation J.
    #[arg(long = "trunc-int", global = true, default_value_t = 10)]
    trunc_int: usize,
    /// Also write the machine-readable result to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function and series, Betti table of the residue field, Koszul verdict.
    Analyze { file: PathBuf },
    /// Search for and verify a complete-intersection witness of a Golod map.
    Witness {
        file: PathBuf,
        #[arg(long = "max-codim", default_value_t = MAX_CODIM)]
        max_codim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of candidates screened.
        #[arg(long, default_value_t = 2_000)]
        budget: usize,
    },
    /// Full classification report.
    Classify { file: PathBuf },
    /// Run the built-in corpus against its expectations.
    Corpus {
        /// Only entries whose name contains this string.
        #[arg(long)]
        name: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn config(g: &Global) -> ClassifyConfig {
    ClassifyConfig { n: g.trunc_hom, j: g.trunc_int, ..ClassifyConfig::default() }
}

/// Reads and parses an input file; failures here are the only fatal ones.
fn load(path: &Path, g: &Global) -> anyhow::Result<PresentationText> {
    let raw = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut text = PresentationText::parse(&raw).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(f) = &g.field {
        text.field = parse_field(f).with_context(|| format!("parsing field {f}"))?;
    }
    quadgolod::with_field!(text.field, f => text.instantiate(&f).map(|_| ()))
        .with_context(|| format!("parsing relations of {}", path.display()))?;
    Ok(text)
}

fn write_json(g: &Global, value: &Value) -> anyhow::Result<()> {
    if let Some(path) = &g.json {
        let body = serde_json::to_string_pretty(value)?;
        std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn failure(stage: &str, e: &quadgolod::Error) -> Value {
    println!("{stage} not completed: {e}");
    json!({ "schema_version": SCHEMA_VERSION, "error": { "stage": stage, "message": e.to_string() } })
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let g = &cli.global;
    let value = match &cli.command {
        Command::Analyze { file } => {
            let text = load(file, g)?;
            analyze(&text, g).unwrap_or_else(|e| failure("analyze", &e))
        }
        Command::Witness { file, max_codim, seed, budget } => {
            let text = load(file, g)?;
            witness(&text, g, *max_codim, *seed, *budget).unwrap_or_else(|e| failure("witness", &e))
        }
        Command::Classify { file } => {
            let text = load(file, g)?;
            match classify(&text, &config(g)) {
                Ok(report) => {
                    print!("{}", report.summary());
                    serde_json::to_value(&report)?
                }
                Err(e) => failure("classify", &e),
            }
        }
        Command::Corpus { name } => {
            let rows = run_corpus(&config(g), name.as_deref()).context("running the corpus")?;
            for r in &rows {
                println!("{}", r.line());
            }
            let passed = rows.iter().filter(|r| r.passed()).count();
            println!("{passed}/{} entries match their expectations", rows.len());
            json!({ "schema_version": SCHEMA_VERSION, "passed": passed, "total": rows.len(), "rows": rows })
        }
    };
    write_json(g, &value)
}

fn analyze(text: &PresentationText, g: &Global) -> quadgolod::Result<Value> {
    quadgolod::with_field!(text.field, f => analyze_over(text, &f, g))
}

fn analyze_over<F: Field>(text: &PresentationText, f: &F, g: &Global) -> quadgolod::Result<Value> {
    let alg = GradedAlgebra::build(&text.instantiate(f)?, g.trunc_int)?;
    let opts = ResolutionOptions::new(g.trunc_hom, g.trunc_int);
    let verdict = koszul_test(&alg, opts, true)?;
    println!("field: {}", text.field);
    println!("hilbert: {:?}", alg.hilbert());
    println!("series: {}", alg.series.render());
    println!("betti table of the residue field (rows i, columns j):");
    print!("{}", verdict.betti.to_tsv());
    println!("koszul: {}", verdict.describe());
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "input": text,
        "hilbert": alg.hilbert(),
        "hilbert_series": alg.series.render(),
        "koszul": verdict,
        "bounds": [verdict.bounds.0, verdict.bounds.1],
    }))
}

fn witness(text: &PresentationText, g: &Global, max_codim: usize, seed: u64, budget: usize) -> quadgolod::Result<Value> {
    quadgolod::with_field!(text.field, f => witness_over(text, &f, g, max_codim, seed, budget))
}

fn witness_over<F: Field>(
    text: &PresentationText,
    f: &F,
    g: &Global,
    max_codim: usize,
    seed: u64,
    budget: usize,
) -> quadgolod::Result<Value> {
    let alg = GradedAlgebra::build(&text.instantiate(f)?, g.trunc_int)?;
    let opts = ResolutionOptions::new(g.trunc_hom, g.trunc_int);
    let cfg = WitnessConfig { max_codim, seed, budget, ..WitnessConfig::new(opts) };
    let out = witness_search(&alg, &[], &cfg)?;
    for a in &out.attempts {
        println!("  {a}");
    }
    match &out.certificate {
        Some(c) => println!("witness: {}", c.describe()),
        None => println!("no witness with codimension <= {max_codim} after {} candidate(s)", out.screened),
    }
    Ok(json!({ "schema_version": SCHEMA_VERSION, "input": text, "search": out }))
}
