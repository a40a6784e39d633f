//! `superk`: one entry point for every construction, emitting JSON.
//!
//! Exit codes: 0 success, 1 malformed input, 2 contract violation or
//! rejected certificate, 64 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use superk::certificate::{self, Certificate, MemberJson};
use superk::classes::{CylinderSpec, OrderedGround, GO_FAMILY_BOUND};
use superk::io::{complex_from_json, point_from_json, ComplexJson, PointJson, PointsJson};
use superk::star::{st2_membership, star_cover, CoverMember};
use superk::{Error, NamedSet, SetSystem, Simplex, SimplicialComplex};

#[derive(Parser)]
#[command(name = "superk", version, about = "Exact star covers, sweeps, realizations and binary families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Second-subdivision stars
    #[command(subcommand)]
    Star(StarCmd),
    /// Sweeping out a complex onto a subcomplex
    #[command(subcommand)]
    Sweep(SweepCmd),
    /// Order-complex realization of a layered set system
    Realize {
        #[arg(long)]
        system: PathBuf,
    },
    /// Binary family synthesis and checking
    #[command(subcommand)]
    Knet(KnetCmd),
    /// Order-convex families
    #[command(subcommand)]
    Go(GoCmd),
    /// Cylinder families of products
    #[command(subcommand)]
    Product(ProductCmd),
    /// Re-check a certificate
    Verify {
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Subcommand)]
enum StarCmd {
    /// Decide whether a point lies in the closed star of a simplex's barycenter
    Member {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        point: PathBuf,
        /// Comma-separated vertices of the base simplex
        #[arg(long)]
        simplex: String,
    },
    /// List the star cover of a subcomplex, grouped by base cardinality
    Cover(CoverArgs),
    /// Emit a discreteness certificate for the star cover of a complex
    Certify {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Emit an intersection witness for a linked family of stars and subcomplexes
    Witness {
        #[arg(long)]
        complex: PathBuf,
        /// JSON list of {"star": [...]} or {"subcomplex": complex}
        #[arg(long)]
        members: PathBuf,
    },
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long)]
    complex: PathBuf,
    /// Ambient complex; defaults to the complex itself
    #[arg(long)]
    ambient: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SweepCmd {
    /// Retract a complex onto a subcomplex plus finitely many points, with a trace certificate
    Run {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        subcomplex: PathBuf,
        #[arg(long)]
        points: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum KnetCmd {
    /// Build a binary family from a layered system
    Synthesize {
        #[arg(long)]
        system: PathBuf,
    },
    /// Check a finite family for binarity
    Verify {
        #[arg(long)]
        family: PathBuf,
    },
    /// Key-refine one set against a system
    Refine {
        #[arg(long)]
        system: PathBuf,
        /// JSON {"name": ..., "members": [...]}
        #[arg(long)]
        set: PathBuf,
    },
}

#[derive(Subcommand)]
enum GoCmd {
    /// Witness interval for a pairwise-intersecting convex family
    Witness {
        /// {"order": [...], "sets": [[...]]}, or a bare list of sets with --ground
        #[arg(long)]
        sets: PathBuf,
        #[arg(long)]
        ground: Option<PathBuf>,
    },
    /// All convex sets of an ordered ground, with a binarity certificate
    Family {
        #[arg(long)]
        ground: PathBuf,
        #[arg(long, default_value_t = GO_FAMILY_BOUND)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum ProductCmd {
    /// Build the cylinder family of a product of finite families and certify its binarity
    Build {
        #[arg(long)]
        spec: PathBuf,
    },
}

enum Failure {
    Malformed(String),
    Violation(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Violation(json!({ "error": e.to_string() }))
    }
}

type Outcome = Result<Value, Failure>;

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::Malformed(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
    })
}

fn domain<T>(path: &Path, r: superk::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    let j: ComplexJson = read(path)?;
    domain(path, complex_from_json(&j))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output serializes")
}

fn cert(c: Certificate) -> Value {
    to_value(&c)
}

/// Emits `c`, failing with exit 2 when its payload reports a negative result.
fn cert_or_violation(c: Certificate, ok: bool) -> Outcome {
    if ok {
        Ok(cert(c))
    } else {
        Err(Failure::Violation(cert(c)))
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Star(s) => star(s),
        Command::Sweep(SweepCmd::Run {
            complex,
            subcomplex,
            points,
        }) => {
            let l = read_complex(&complex)?;
            let k = read_complex(&subcomplex)?;
            let pts = match &points {
                Some(p) => {
                    let raw: PointsJson = read(p)?;
                    raw.into_vec()
                        .iter()
                        .map(|q| domain(p, point_from_json(q)))
                        .collect::<Result<Vec<_>, _>>()?
                }
                None => Vec::new(),
            };
            Ok(cert(certificate::sweep_trace(&l, &k, &pts)?))
        }
        Command::Realize { system } => {
            let s: SetSystem = read(&system)?;
            Ok(cert(certificate::realization(&s)?))
        }
        Command::Knet(k) => knet(k),
        Command::Go(g) => go(g),
        Command::Product(ProductCmd::Build { spec }) => {
            let spec: CylinderSpec = read(&spec)?;
            let c = certificate::binarity_of_product(&spec)?;
            let ok = c.payload["binary"] == Value::Bool(true);
            cert_or_violation(c, ok)
        }
        Command::Verify { certificate } => {
            let c: Certificate = read(&certificate)?;
            match certificate::verify(&c) {
                Ok(()) => Ok(json!({ "verified": true, "kind": c.kind })),
                Err(e) => Err(Failure::Violation(json!({
                    "verified": false,
                    "kind": c.kind,
                    "error": e.to_string(),
                }))),
            }
        }
    }
}

fn parse_simplex(s: &str) -> Result<Simplex, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let simplex = superk::io::simplex_from_json(&parts.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    simplex.map_err(|e| Failure::Malformed(format!("--simplex {s:?}: {e}")))
}

fn star(cmd: StarCmd) -> Outcome {
    match cmd {
        StarCmd::Member { complex, point, simplex } => {
            let k = read_complex(&complex)?;
            let pj: PointJson = read(&point)?;
            let p = domain(&point, point_from_json(&pj))?;
            let tau = parse_simplex(&simplex)?;
            let member = st2_membership(&p, &tau, &k)?;
            Ok(json!({ "simplex": tau.to_strings(), "point": pj, "member": member }))
        }
        StarCmd::Cover(CoverArgs { complex, ambient }) => {
            let c = read_complex(&complex)?;
            let k = match &ambient {
                Some(a) => read_complex(a)?,
                None => c.clone(),
            };
            let f = star_cover(&c, &k)?;
            let groups: Vec<Value> = f
                .groups()
                .iter()
                .map(|(card, bases)| {
                    json!({
                        "cardinality": card,
                        "bases": bases.iter().map(Simplex::to_strings).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(json!({ "n": f.discreteness_index(), "stars": f.len(), "groups": groups }))
        }
        StarCmd::Certify { complex } => {
            let c = certificate::discreteness(&read_complex(&complex)?)?;
            let ok = c.payload["holds"] == Value::Bool(true);
            cert_or_violation(c, ok)
        }
        StarCmd::Witness { complex, members } => {
            let k = read_complex(&complex)?;
            let raw: Vec<MemberJson> = read(&members)?;
            let ms = raw
                .iter()
                .map(|m| match m {
                    MemberJson::Star(t) => domain(&members, superk::io::simplex_from_json(t)).map(CoverMember::Star),
                    MemberJson::Subcomplex(f) => domain(&members, complex_from_json(f)).map(CoverMember::Subcomplex),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(cert(certificate::star_witness(&k, &ms)?))
        }
    }
}

fn knet(cmd: KnetCmd) -> Outcome {
    match cmd {
        KnetCmd::Synthesize { system } => {
            let s: SetSystem = read(&system)?;
            let (c, report) = certificate::binarity_of_synthesis(&s)?;
            cert_or_violation(c, report.is_sound())
        }
        KnetCmd::Verify { family } => {
            let f: Vec<NamedSet> = read(&family)?;
            let c = certificate::binarity_of_family(&f)?;
            let ok = c.payload["binary"] == Value::Bool(true);
            cert_or_violation(c, ok)
        }
        KnetCmd::Refine { system, set } => {
            let s: SetSystem = read(&system)?;
            let c: NamedSet = read(&set)?;
            Ok(cert(certificate::refinement(&s, &c)?))
        }
    }
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum SetsJson {
    Ordered { order: Vec<String>, sets: Vec<Vec<String>> },
    Bare(Vec<Vec<String>>),
}

fn go(cmd: GoCmd) -> Outcome {
    match cmd {
        GoCmd::Witness { sets, ground } => {
            let raw: SetsJson = read(&sets)?;
            let given = match &ground {
                Some(g) => Some(read::<OrderedGround>(g)?),
                None => None,
            };
            let (g, list) = match (raw, given) {
                (SetsJson::Bare(list), Some(g)) => (g, list),
                (SetsJson::Ordered { order, sets: list }, None) => (domain(&sets, OrderedGround::new(order))?, list),
                (SetsJson::Ordered { .. }, Some(_)) => {
                    return Err(Failure::Malformed("sets file carries its own order; drop --ground".into()))
                }
                (SetsJson::Bare(_), None) => {
                    return Err(Failure::Malformed("a bare list of sets needs --ground".into()))
                }
            };
            Ok(cert(certificate::order_witness(&g, &list)?))
        }
        GoCmd::Family { ground, bound } => {
            let g: OrderedGround = read(&ground)?;
            let c = certificate::binarity_of_order(&g, bound)?;
            let ok = c.payload["binary"] == Value::Bool(true);
            cert_or_violation(c, ok)
        }
    }
}

fn print(v: &Value) {
    use std::io::Write;
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).expect("value serializes"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    let _ = e.print();
                    ExitCode::from(64)
                }
            };
        }
    };
    match run(cli.command) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: malformed input: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(v)) => {
            print(&v);
            eprintln!("error: contract violation");
            ExitCode::from(2)
        }
    }
}
