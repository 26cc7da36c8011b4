//! Command-line front end: every subcommand wraps one library operation and
//! prints a single JSON object, with all rationals rendered exactly as `p/q`
//! strings.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use genus2_core::autgroup::{classify_sextic_report, classify_uv, involution_class_count};
use genus2_core::census::count_case1_tuple_classes;
use genus2_core::igusa::{absolute_invariants, igusa_invariants, BinarySextic, IgusaInvariants};
use genus2_core::locus::{
    equal_j_family, igusa_from_uv, jpair_discriminant, jpair_from_uv, l2_equation, m1_embedding,
    uv_from_igusa, uv_from_s, UVPoint,
};
use genus2_core::rational::{parse_rational, parse_rational_list, Rational};
use genus2_core::search::{count_triple_classes, SearchConfig, SearchMode, SearchOutcome};
use genus2_core::stabchain::GenerationResult;
use genus2_core::tuples::CaseId;
use genus2_core::verify::verify_identities;
use genus2_core::Error;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_DOMAIN: u8 = 1;
const EXIT_IDENTITY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "genus2",
    about = "Exact invariants, elliptic subfields and automorphisms of genus-2 curves",
    disable_help_subcommand = true
)]
struct Cli {
    /// Worker threads for the tuple search (default: GENUS2_THREADS or 2)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical invariants of a binary sextic
    Igusa {
        /// seven rationals "a0 a1 a2 a3 a4 a5 a6"
        #[arg(long)]
        sextic: String,
    },
    /// Parameter point from normal-form coefficients s1 s2 [s3]
    Uv {
        #[arg(long)]
        s: String,
    },
    /// j-invariant pair of the two elliptic subfields at a parameter point
    Jpair {
        /// "u v"
        #[arg(long)]
        uv: String,
    },
    /// Automorphism-group classification
    Classify(ClassifyArgs),
    /// Evaluate the locus equation
    L2(L2Args),
    /// Parameter points of a moduli point on the locus
    Invert(L2Args),
    /// The equal-j curve for a given j-invariant
    Embed {
        #[arg(long)]
        j: String,
    },
    /// Branch-cycle tuple searches
    #[command(subcommand)]
    Tuples(TuplesCommand),
    /// Run the full identity suite
    VerifyIdentities {
        #[arg(long, default_value_t = 200)]
        sample_size: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, conflicts_with = "uv")]
    sextic: Option<String>,
    #[arg(long)]
    uv: Option<String>,
}

#[derive(Args)]
struct L2Args {
    #[arg(long, conflicts_with_all = ["igusa", "uv"])]
    sextic: Option<String>,
    /// four rationals "J2 J4 J6 J10"
    #[arg(long, conflicts_with = "uv")]
    igusa: Option<String>,
    #[arg(long)]
    uv: Option<String>,
}

#[derive(Subcommand)]
enum TuplesCommand {
    /// Count symmetric-tuple classes for one (case, n) cell
    Count {
        #[arg(long)]
        case: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// samples for random mode
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Exhaustive census of case-1 tuple classes
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn rat_s(r: &Rational) -> String {
    r.to_string()
}

fn uv_json(p: &UVPoint) -> Value {
    json!([rat_s(p.u()), rat_s(p.v())])
}

fn invariants_json(i: &IgusaInvariants) -> Value {
    json!({
        "J2": rat_s(&i.j2),
        "J4": rat_s(&i.j4),
        "J6": rat_s(&i.j6),
        "J10": rat_s(&i.j10),
    })
}

fn parse_uv(s: &str) -> Result<UVPoint, Error> {
    let v = parse_rational_list(s)?;
    if v.len() != 2 {
        return Err(Error::Parse("expected \"u v\"".into()));
    }
    UVPoint::new(v[0].clone(), v[1].clone())
}

fn parse_igusa(s: &str) -> Result<IgusaInvariants, Error> {
    let v = parse_rational_list(s)?;
    if v.len() != 4 {
        return Err(Error::Parse("expected \"J2 J4 J6 J10\"".into()));
    }
    Ok(IgusaInvariants {
        j2: v[0].clone(),
        j4: v[1].clone(),
        j6: v[2].clone(),
        j10: v[3].clone(),
    })
}

fn default_threads(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var("GENUS2_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(2)
        .max(1)
}

fn run(cli: Cli) -> Result<Value, Error> {
    match cli.command {
        Command::Igusa { sextic } => {
            let f = BinarySextic::parse(&sextic)?;
            let inv = igusa_invariants(&f);
            let mut out = invariants_json(&inv);
            if let Ok(a) = absolute_invariants(&inv) {
                out["absolute"] = json!({
                    "i1": rat_s(&a.i1),
                    "i2": rat_s(&a.i2),
                    "i3": rat_s(&a.i3),
                });
            }
            Ok(out)
        }
        Command::Uv { s } => {
            let v = parse_rational_list(&s)?;
            let (s1, s2, s3) = match v.len() {
                2 => (v[0].clone(), v[1].clone(), parse_rational("1")?),
                3 => (v[0].clone(), v[1].clone(), v[2].clone()),
                _ => return Err(Error::Parse("expected \"s1 s2\" or \"s1 s2 s3\"".into())),
            };
            let p = uv_from_s(&s1, &s2, &s3)?;
            Ok(json!({
                "u": rat_s(p.u()),
                "v": rat_s(p.v()),
                "delta": rat_s(&p.delta()),
            }))
        }
        Command::Jpair { uv } => {
            let p = parse_uv(&uv)?;
            let jp = jpair_from_uv(&p);
            Ok(json!({
                "e1": rat_s(&jp.e1),
                "e2": rat_s(&jp.e2),
                "split": jp.split.as_ref().map(|(a, b)| json!([rat_s(a), rat_s(b)])),
                "discriminant": rat_s(&jpair_discriminant(&p)),
            }))
        }
        Command::Classify(args) => match (args.sextic, args.uv) {
            (Some(s), None) => {
                let rep = classify_sextic_report(&BinarySextic::parse(&s)?)?;
                Ok(json!({
                    "group": rep.group.name(),
                    "involution_classes": rep.involution_classes,
                    "uv_preimages": rep.uv_preimages.iter().map(uv_json).collect::<Vec<_>>(),
                }))
            }
            (None, Some(uv)) => {
                let p = parse_uv(&uv)?;
                let g = classify_uv(&p);
                Ok(json!({
                    "group": g.name(),
                    "involution_classes": involution_class_count(g),
                    "uv_preimages": [uv_json(&p)],
                }))
            }
            _ => Err(Error::Parse("pass exactly one of --sextic or --uv".into())),
        },
        Command::L2(args) => {
            let inv = l2_input(&args)?;
            let value = l2_equation(&inv);
            Ok(json!({
                "value": rat_s(&value),
                "on_locus": value == Rational::from_integer(0.into()),
            }))
        }
        Command::Invert(args) => {
            let inv = l2_input(&args)?;
            let pts = uv_from_igusa(&inv)?;
            Ok(json!({
                "points": pts.iter().map(uv_json).collect::<Vec<_>>(),
            }))
        }
        Command::Embed { j } => {
            let j = parse_rational(&j)?;
            let p = equal_j_family(&j)?;
            let inv = m1_embedding(&j)?;
            debug_assert_eq!(inv, igusa_from_uv(&p));
            let mut out = invariants_json(&inv);
            out["u"] = json!(rat_s(p.u()));
            out["v"] = json!(rat_s(p.v()));
            Ok(out)
        }
        Command::Tuples(TuplesCommand::Count {
            case,
            n,
            mode,
            budget,
            workers,
            seed,
            checkpoint,
        }) => {
            let case = CaseId::from_number(case)?;
            let mode = match mode.as_str() {
                "exhaustive" => SearchMode::Exhaustive,
                "random" | "randomized" => SearchMode::Randomized { budget },
                other => return Err(Error::Parse(format!("unknown mode `{other}`"))),
            };
            let cfg = SearchConfig {
                case,
                n,
                mode,
                workers: default_threads(workers.or(cli.threads)),
                seed,
                checkpoint,
            };
            let out = count_triple_classes(&cfg)?;
            Ok(search_json(&out))
        }
        Command::Tuples(TuplesCommand::Census { n, workers }) => {
            let out = count_case1_tuple_classes(n, default_threads(workers.or(cli.threads)))?;
            Ok(json!({
                "n": out.n,
                "count": out.class_count,
                "an_classes": out.an_classes,
                "labeled_with_s1_fixed": out.labeled_with_s1_fixed,
                "centralizer_order": out.centralizer_order,
                "self_check": out.self_check,
                "symmetric_classes": out.symmetric_classes,
                "elapsed_ms": out.elapsed_ms as u64,
            }))
        }
        Command::VerifyIdentities { sample_size, seed } => {
            let report = verify_identities(sample_size, seed);
            let val = serde_json::to_value(&report).expect("report serializes");
            if !report.all_passed {
                // the full report still goes to stdout before the error exit
                println!("{}", serde_json::to_string_pretty(&val).unwrap());
                return Err(Error::IdentityViolation(
                    report
                        .records
                        .iter()
                        .filter(|r| !r.passed)
                        .map(|r| r.operation.clone())
                        .collect::<Vec<_>>()
                        .join(", "),
                ));
            }
            Ok(val)
        }
    }
}

fn l2_input(args: &L2Args) -> Result<IgusaInvariants, Error> {
    match (&args.sextic, &args.igusa, &args.uv) {
        (Some(s), None, None) => Ok(igusa_invariants(&BinarySextic::parse(s)?)),
        (None, Some(i), None) => parse_igusa(i),
        (None, None, Some(uv)) => Ok(igusa_from_uv(&parse_uv(uv)?)),
        _ => Err(Error::Parse(
            "pass exactly one of --sextic, --igusa, --uv".into(),
        )),
    }
}

fn search_json(out: &SearchOutcome) -> Value {
    json!({
        "case": out.case.number(),
        "n": out.n,
        "count": out.count,
        "complete": out.complete,
        "orbit_sizes": out.orbit_sizes,
        "sn_classes": out.sn_classes,
        "an_classes": out.an_classes,
        "candidates": out.candidates,
        "rejected_classes": out.rejected_classes,
        "elapsed_ms": out.elapsed_ms as u64,
        "orbits": out.orbits.iter().map(|o| json!({
            "rep": o.rep.one_line(),
            "size": o.size,
            "generates": match o.generates {
                GenerationResult::SymmetricGroup => "Sn",
                GenerationResult::AlternatingGroup => "An",
                GenerationResult::Other => "other",
            },
        })).collect::<Vec<_>>(),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(value) => {
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            ExitCode::from(EXIT_OK)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::IdentityViolation(_) => EXIT_IDENTITY,
                _ => EXIT_DOMAIN,
            };
            ExitCode::from(code)
        }
    }
}
