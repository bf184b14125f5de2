//! `lrseq`: classify, bound, and decide linear recurrence sequences.
//!
//! Exit codes: 0 on success, 2 on invalid input or usage, 3 when the
//! result is Unknown (inapplicable case or over-budget bound), so scripts
//! can tell "decided No" from "could not decide". Diagnostics go to
//! stderr; stdout carries exactly one JSON document (or its text form).

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrseq_core::{
    bounds_from_parameters, classify_at, decide_positivity_at, decide_skolem_at, decide_upp_at,
    density_scan, iterate_terms, minimal_annihilator, rational_to_string, Answer, BoundCase,
    BoundInputs, BoundReport, CaseTag, Family, LRSpec, Mode, Verdict, PRECISION_CAP,
};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lrseq",
    version,
    about = "Decision engine for linear recurrence sequences with rational coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified classification of the maximal-modulus root configuration
    Classify(SpecArgs),
    /// Term-count bound for the exact scan, by case and problem
    Bound {
        #[command(flatten)]
        spec: SpecArgs,
        /// Which decision problem the bound is for
        #[arg(long, value_enum, default_value_t = ProblemArg::Sp)]
        problem: ProblemArg,
    },
    /// Decide the Skolem, positivity, or ultimate positivity problem
    Decide {
        #[command(flatten)]
        spec: SpecArgs,
        /// Which decision problem to solve
        #[arg(long, value_enum)]
        problem: ProblemArg,
        /// Largest index the plain scan may visit
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
        /// plain scans to the theorem bound; sharp stops at the certified n0
        #[arg(long, value_enum, default_value_t = ModeArg::Sharp)]
        mode: ModeArg,
    },
    /// Print the first terms of the sequence
    Terms {
        #[command(flatten)]
        spec: SpecArgs,
        /// How many terms to print, starting from u_0
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Classify a whole box of integer polynomials by root configuration
    Density {
        /// Polynomial degree m
        #[arg(long)]
        degree: usize,
        /// Coefficient height H
        #[arg(long)]
        height: u32,
        #[arg(long, value_enum, default_value_t = FamilyArg::Monic)]
        family: FamilyArg,
        /// Sample this many members instead of exhausting the box
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for the sampling streams (ignored when exhaustive)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Path to the sequence spec: {"coefficients":[...],"initial":[...]}
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Starting precision in bits for interval refinement
    #[arg(long, default_value_t = 128)]
    precision: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemArg {
    Sp,
    Pp,
    Upp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Plain,
    Sharp,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Plain => Mode::Plain,
            ModeArg::Sharp => Mode::Sharp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Monic,
    General,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Monic => Family::Monic,
            FamilyArg::General => Family::General,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_spec(args: &SpecArgs) -> Result<LRSpec, String> {
    if args.precision < 16 || args.precision > PRECISION_CAP {
        return Err(format!(
            "precision must lie between 16 and {PRECISION_CAP} bits"
        ));
    }
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("cannot read {}: {e}", args.input.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid sequence spec: {e}"))
}

fn minimalize(spec: &LRSpec) -> LRSpec {
    if spec.is_minimal() {
        spec.clone()
    } else {
        minimal_annihilator(spec)
    }
}

fn case_reason(tag: CaseTag) -> &'static str {
    match tag {
        CaseTag::NotSimple => "the characteristic polynomial has repeated roots",
        CaseTag::DegenerateMaxPair => "the maximal-modulus pair ratio is a root of unity",
        CaseTag::Inconclusive => "the root configuration is outside the decidable cases",
        _ => unreachable!(),
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Classify(args) => {
            let spec = load_spec(&args)?;
            let reduced = minimalize(&spec);
            let tag = classify_at(&reduced, args.precision).map_err(|e| e.to_string())?;
            match args.format {
                FormatArg::Json => {
                    let doc = serde_json::json!({ "case": tag, "order": reduced.order() });
                    println!("{doc}");
                }
                FormatArg::Text => println!("{tag} (minimal order {})", reduced.order()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound { spec: args, problem } => {
            let spec = load_spec(&args)?;
            let reduced = minimalize(&spec);
            if reduced.order() == 1 {
                eprintln!("order-1 sequences need no scan bound: u_n = u_0 a_1^n");
                return Ok(ExitCode::from(3));
            }
            let tag = classify_at(&reduced, args.precision).map_err(|e| e.to_string())?;
            let case = match tag {
                CaseTag::Dominant => BoundCase::Dominant,
                CaseTag::TwoMaxNonDegenerate => match problem {
                    ProblemArg::Sp => BoundCase::EqualModulus,
                    _ => {
                        eprintln!(
                            "no finite scan bound for positivity without a dominant root; \
                             the decider routes this case through witness search"
                        );
                        return Ok(ExitCode::from(3));
                    }
                },
                other => {
                    eprintln!("no scan bound applies: {}", case_reason(other));
                    return Ok(ExitCode::from(3));
                }
            };
            let report = bounds_from_parameters(&BoundInputs::from_spec(&reduced), case)
                .map_err(|e| e.to_string())?;
            match args.format {
                FormatArg::Json => {
                    println!("{}", serde_json::to_string(&report).expect("report serializes"))
                }
                FormatArg::Text => print!("{}", bound_text(&report)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decide { spec: args, problem, cutoff, mode } => {
            let spec = load_spec(&args)?;
            let mode = Mode::from(mode);
            let verdict = match problem {
                ProblemArg::Sp => decide_skolem_at(&spec, cutoff, mode, args.precision),
                ProblemArg::Pp => decide_positivity_at(&spec, cutoff, mode, args.precision),
                ProblemArg::Upp => decide_upp_at(&spec, cutoff, mode, args.precision),
            }
            .map_err(|e| e.to_string())?;
            match args.format {
                FormatArg::Json => {
                    println!("{}", serde_json::to_string(&verdict).expect("verdict serializes"))
                }
                FormatArg::Text => print!("{}", verdict_text(&verdict)),
            }
            if verdict.answer == Answer::Unknown {
                Ok(ExitCode::from(3))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Terms { spec: args, count } => {
            let spec = load_spec(&args)?;
            let terms: Vec<String> =
                iterate_terms(&spec, count).iter().map(rational_to_string).collect();
            match args.format {
                FormatArg::Json => {
                    println!("{}", serde_json::json!({ "terms": terms }));
                }
                FormatArg::Text => {
                    for t in &terms {
                        println!("{t}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Density { degree, height, family, samples, seed, format } => {
            if degree < 1 {
                return Err("degree must be at least 1".into());
            }
            if height < 1 {
                return Err("height must be at least 1".into());
            }
            if samples == Some(0) {
                return Err("sample size must be at least 1".into());
            }
            if samples.is_none() {
                let b = 2 * height as u64 + 1;
                let space = b.checked_pow(degree as u32).and_then(|t| match family {
                    FamilyArg::Monic => Some(t),
                    FamilyArg::General => t.checked_mul(2 * height as u64),
                });
                if space.is_none() {
                    return Err("box too large to enumerate; use --samples".into());
                }
            }
            let report = density_scan(degree, height, family.into(), samples, seed);
            match format {
                FormatArg::Json => {
                    println!("{}", serde_json::to_string(&report).expect("report serializes"))
                }
                FormatArg::Text => print!("{}", density_text(&report)),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn bound_text(report: &BoundReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theorem: {}", report.theorem);
    let _ = writeln!(out, "floor: {}", report.bound.floor);
    let _ = writeln!(out, "log10: {}", report.bound.log10);
    let _ = writeln!(out, "components:");
    for (name, value) in &report.bound.components {
        let _ = writeln!(out, "  {name} = {value}");
    }
    out
}

fn verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {} ({} mode)", v.problem, v.answer, v.mode);
    if let Some((lo, hi)) = v.scanned {
        let _ = writeln!(out, "scanned: {lo}..={hi}");
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "witness: u_{} = {}", w.index, rational_to_string(&w.value));
    }
    if let Some(c) = &v.certificate {
        let _ = match c.n0 {
            Some(n0) => writeln!(out, "certificate: n0 = {n0}, sign(b1) = {:+}", c.b1_sign),
            None => writeln!(out, "certificate: sign(b1) = {:+}", c.b1_sign),
        };
    }
    if let Some(b) = &v.bound {
        let _ = writeln!(out, "bound {}: floor {} (log10 {})", b.theorem, b.bound.floor, b.bound.log10);
    }
    if let Some(r) = &v.reason {
        let _ = writeln!(out, "reason: {r}");
    }
    out
}

fn density_text(r: &lrseq_core::DensityReport) -> String {
    let mut out = String::new();
    let family = match r.family {
        Family::Monic => "monic",
        Family::General => "general",
    };
    let _ = writeln!(out, "family {family}, degree {}, height {} ({})", r.degree, r.height, r.mode);
    let _ = writeln!(out, "total: {}", r.total);
    let _ = writeln!(out, "dominant: {} ({:.6})", r.dominant, r.fraction_dominant);
    let _ = writeln!(out, "two max: {} ({:.6})", r.two_max, r.fraction_two_max);
    let _ = writeln!(out, "three or more max: {}", r.three_plus);
    let _ = writeln!(out, "degenerate: {} ({:.6})", r.degenerate, r.fraction_degenerate);
    out
}
