use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use geproci_cli::{gpc, report};
use geproci_core::classify::{
    canonical_configuration, classify, derive_harmonic_solutions, golden_incidence_table, incidence_table_mismatches,
    reproduce_incidence_table, CanonicalName, ClassifyError, HalfGridInput,
};
use geproci_core::proj::{
    cross_ratio, cross_ratio_stabilizer, cross_ratio_type, search_equivalence, transversal_pair, ProjError,
    SearchOptions,
};
use geproci_core::verify::{verify_configuration, Verdict, VerifyError, DEFAULT_TRIALS};
use geproci_core::{ProjLine, ProjPoint};
use serde_json::{json, Value};

/// "0xGEPROCI" with the non-hex letters read as digits: G=6, P=9, R=4, O=0, I=1.
const DEFAULT_SEED: u64 = 0x6E940C1;

#[derive(Parser)]
#[command(name = "geproci", version, about = "Exact geproci tests and (4,4) half-grid classification over Q(ε)")]
struct Cli {
    /// Seed for the projection centers (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    seed: u64,
    /// Number of random projection centers.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in configuration: anharmonic, harmonic-v1, harmonic-v2, d4, grid:AxB.
    Gen { name: String },
    /// Test the (a,b)-geproci property and look for grid and half-grid structure.
    Verify { input: String, a: u32, b: u32 },
    /// Classify a (4,4) half grid given with its four lines of four points.
    Classify { input: String },
    /// Cross-ratio of four collinear points, e.g. `1:0:0:0` or `(-1:0:1:1)`.
    CrossRatio {
        #[arg(num_args = 4)]
        points: Vec<String>,
    },
    /// Common transversals of four skew lines, each given as `P/Q`.
    Transversals {
        #[arg(num_args = 4)]
        lines: Vec<String>,
    },
    /// Decide projective equivalence of two configurations.
    Equiv { first: String, second: String },
    /// Recompute the harmonic incidence table and diff it against the stored one.
    Table1,
    /// Solve for the fourth line of the harmonic half grid.
    DeriveHarmonic,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

enum Failure {
    Validation(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Validation(_) => "validation",
            Failure::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<gpc::GpcError> for Failure {
    fn from(e: gpc::GpcError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::SizeMismatch { .. }
            | VerifyError::NoGrouping
            | VerifyError::NoTrials
            | VerifyError::ImageLinesCollide(..) => Failure::Validation(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let name = format!("{e:?}");
        let name = name.split(['(', ' ', '{']).next().unwrap_or("").to_string();
        let msg = format!("{name}: {e}");
        if e.is_validation() {
            Failure::Validation(msg)
        } else {
            Failure::Internal(msg)
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

/// Report body, and whether the outcome is positive.
type Outcome = Result<(Value, bool), Failure>;

fn parse_point(s: &str) -> Result<ProjPoint, Failure> {
    s.parse().map_err(invalid)
}

fn parse_line(s: &str) -> Result<ProjLine, Failure> {
    let (p, q) = s.split_once('/').ok_or_else(|| invalid(format!("expected `P/Q` for a line, got `{s}`")))?;
    ProjLine::through(&parse_point(p)?, &parse_point(q)?).map_err(|e| invalid(format!("line `{s}`: {e}")))
}

fn cmd_verify(cli: &Cli, input: &str, a: u32, b: u32) -> Outcome {
    let z = gpc::load(input)?;
    let r = verify_configuration(&z, a, b, cli.trials, cli.seed)?;
    Ok((report::verification(z.len(), &r), r.geproci.verdict == Verdict::Geproci))
}

fn cmd_classify(input: &str) -> Outcome {
    let z = gpc::load(input)?;
    let h = HalfGridInput::from_configuration(&z)?;
    let c = classify(&h)?;
    Ok((report::classification(&c), true))
}

fn cmd_cross_ratio(points: &[String]) -> Outcome {
    let p: Vec<ProjPoint> = points.iter().map(|s| parse_point(s)).collect::<Result<_, _>>()?;
    let p: [ProjPoint; 4] = p.try_into().map_err(|_| invalid("need four points"))?;
    let j = cross_ratio(&p).map_err(invalid)?;
    let stab = cross_ratio_stabilizer(&p).map_err(invalid)?;
    Ok((
        json!({
            "value": j.to_string(),
            "type": cross_ratio_type(&j).to_string(),
            "stabilizer": stab.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        true,
    ))
}

fn cmd_transversals(lines: &[String]) -> Outcome {
    let l: Vec<ProjLine> = lines.iter().map(|s| parse_line(s)).collect::<Result<_, _>>()?;
    let pair = transversal_pair([&l[0], &l[1], &l[2], &l[3]]).map_err(|e| match e {
        ProjError::NotSkew | ProjError::OnCommonQuadric => invalid(e),
        other => Failure::Internal(other.to_string()),
    })?;
    Ok((
        json!({
            "quadric": pair.quadric.to_string(),
            "meeting_form": pair.meeting_form.to_string(),
            "transversals": report::transversals(&pair.transversals),
        }),
        true,
    ))
}

fn cmd_equiv(first: &str, second: &str) -> Outcome {
    let (z1, z2) = (gpc::load(first)?, gpc::load(second)?);
    let s = search_equivalence(z1.points(), z2.points(), SearchOptions::default()).map_err(invalid)?;
    let pos = s.projectivity.is_some();
    Ok((report::equivalence(&s), pos))
}

fn cmd_table1() -> Outcome {
    let t = reproduce_incidence_table();
    let diffs = incidence_table_mismatches(&t, &golden_incidence_table());
    Ok((report::incidence_table(&t, &diffs), diffs.is_empty()))
}

fn cmd_derive_harmonic(cli: &Cli) -> Outcome {
    let s = derive_harmonic_solutions(cli.seed)?;
    let pos = s.solutions.len() == 2 && s.equivalence.is_some();
    Ok((report::harmonic_solutions(&s), pos))
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(|e| invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    if let Command::Gen { name } = &cli.command {
        let name: CanonicalName = name.parse().map_err(invalid)?;
        let z = canonical_configuration(name);
        let body = match cli.format {
            Format::Text => gpc::print(&z),
            Format::Json => {
                let f = gpc::ConfigFile::from_configuration(&z);
                serde_json::to_string_pretty(&f).expect("plain data serializes") + "\n"
            }
        };
        emit(cli, &body)?;
        return Ok(true);
    }
    let start = Instant::now();
    let (name, result) = match &cli.command {
        Command::Gen { .. } => unreachable!(),
        Command::Verify { input, a, b } => ("verify", cmd_verify(cli, input, *a, *b)),
        Command::Classify { input } => ("classify", cmd_classify(input)),
        Command::CrossRatio { points } => ("cross-ratio", cmd_cross_ratio(points)),
        Command::Transversals { lines } => ("transversals", cmd_transversals(lines)),
        Command::Equiv { first, second } => ("equiv", cmd_equiv(first, second)),
        Command::Table1 => ("table1", cmd_table1()),
        Command::DeriveHarmonic => ("derive-harmonic", cmd_derive_harmonic(cli)),
    };
    let mut envelope = json!({
        "command": name,
        "args": std::env::args().skip(1).collect::<Vec<_>>(),
        "seed": format!("{:#x}", cli.seed),
        "version": env!("CARGO_PKG_VERSION"),
    });
    let outcome = match result {
        Ok((body, positive)) => {
            envelope["result"] = body;
            envelope["positive"] = json!(positive);
            Ok(positive)
        }
        Err(f) => {
            envelope["error"] = json!({"kind": f.kind(), "message": f.message()});
            Err(f)
        }
    };
    if cli.timings {
        envelope["timings_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&envelope).expect("json") + "\n",
        Format::Text => report::to_text(&envelope),
    };
    emit(cli, &body)?;
    outcome
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
