//! `arrlink`: invariants, residuals, Betti tables, freeness and oracle
//! verification for hyperplane arrangements, from a file or a named family.
//!
//! Exit codes: 0 when everything ran and no check failed, 1 when a check
//! failed, 2 for unreadable input or internal errors, 3 when a hypothesis of
//! the requested computation is not met (including the oracle cap).

mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use arrlink::arrangement::{Arrangement, FamilySpec};
use arrlink::oracle::{Field, Oracle};
use arrlink::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Context, Outcome, Status};

/// A prime in the range accepted by the oracle's modular filter.
const ZP_PRIME: u64 = 2_147_483_647;

#[derive(Parser)]
#[command(name = "arrlink", version, about = "Exact computations on hyperplane arrangements")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Intersection lattice, classification, Tjurina number and its bounds.
    Analyze(Options),
    /// Tjurina number with the bounds that apply and their equality flags.
    Tjurina(Options),
    /// Primary decomposition of the general residual.
    Residual(Options),
    /// Resolutions of the residual, the top part, the Jacobian ideal and the
    /// Milnor module, each tagged with the rule that produced it.
    Betti(Options),
    /// Freeness verdict by every applicable route.
    Freeness(Options),
    /// Cross-checks every structural statement against the brute-force oracle.
    Verify(Options),
    /// Writes a family member as an arrangement file.
    Gen(Options),
}

#[derive(Args, Clone, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Arrangement file (text or JSON format).
    input: Option<PathBuf>,
    /// Named family, for instance `generic:5`, `three-pencils:iii,2,2,2`.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args, Clone, Debug)]
struct Options {
    #[command(flatten)]
    source: Source,
    /// Seed for general choices (family coordinates, the general form).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest degree the oracle examines (default 2d).
    #[arg(long)]
    max_degree: Option<usize>,
    /// Field of the oracle's rank filter; every reported number is exact
    /// over the rationals either way.
    #[arg(long, value_enum, default_value_t = FieldArg::Q)]
    field: FieldArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Q,
    Zp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn load(source: &Source, seed: u64) -> Result<(String, Arrangement), String> {
    match (&source.input, &source.family) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let a = Arrangement::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok((path.display().to_string(), a))
        }
        (None, Some(spec)) => {
            let family: FamilySpec = spec.parse().map_err(|e: Error| e.to_string())?;
            let a = family.build(seed).map_err(|e| e.to_string())?;
            Ok((family.to_string(), a))
        }
        _ => Err("give exactly one of an input file or --family".into()),
    }
}

fn emit(outcome: &Outcome, format: Format, out: Option<&PathBuf>) -> Result<(), String> {
    let mut body = match format {
        Format::Text => outcome.text.clone(),
        Format::Json => serde_json::to_string_pretty(&outcome.json).map_err(|e| e.to_string())?,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match out {
        Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(Outcome, Options), String> {
    let (verb, opts) = match cli.verb {
        Verb::Analyze(o) => ("analyze", o),
        Verb::Tjurina(o) => ("tjurina", o),
        Verb::Residual(o) => ("residual", o),
        Verb::Betti(o) => ("betti", o),
        Verb::Freeness(o) => ("freeness", o),
        Verb::Verify(o) => ("verify", o),
        Verb::Gen(o) => ("gen", o),
    };
    let (source, a) = load(&opts.source, opts.seed)?;
    let field = match opts.field {
        FieldArg::Q => Field::Rational,
        FieldArg::Zp => Field::Prime(ZP_PRIME),
    };
    let oracle = Oracle::new().with_field(field).map_err(|e| e.to_string())?;
    let ctx = Context {
        source,
        a,
        seed: opts.seed,
        max_degree: opts.max_degree,
        oracle,
    };
    let result = match verb {
        "analyze" => commands::analyze(&ctx),
        "tjurina" => commands::tjurina(&ctx),
        "residual" => commands::residual(&ctx),
        "betti" => commands::betti(&ctx),
        "freeness" => commands::freeness(&ctx),
        "verify" => commands::verify(&ctx),
        _ => commands::gen(&ctx),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => commands::refusal(verb, &ctx.source, e)?,
    };
    Ok((outcome, opts))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, opts)) => {
            if let Err(e) = emit(&outcome, opts.format, opts.out.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match outcome.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::ChecksFailed => ExitCode::from(1),
                Status::Refused => ExitCode::from(3),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
