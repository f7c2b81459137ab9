//! Command line front end. Documents come in as JSON on stdin or from a
//! file argument; results go to stdout as one-line JSON. Exit codes: 0 on
//! success, 2 for unreadable input, 3 when the input violates a
//! precondition of the requested operation.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use linepin::classify::classify_ortho_pinning;
use linepin::doc::{polytope_report_json, strings_of, verdict_json, Document};
use linepin::generators::{generate, Generated};
use linepin::linespace::orthogonalize_family;
use linepin::oracle::{sample_escape, SampleBudget};
use linepin::pinning::{
    decide_pinning, helly_flat_reduce, minimize_pinning, positive_cone_reduce, steinitz_reduce,
};
use linepin::polytopes::{decide_polytope_pinning, minimize_polytope_pinning};
use linepin::rat::{parse_rat, RVec};
use linepin::{Error, Result};

#[derive(Parser)]
#[command(name = "linepin", version, about = "Pinning analysis for line families")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the family pins the axis
    Check { file: Option<PathBuf> },
    /// Shrink the family to an irreducible pinning subfamily
    Minimize { file: Option<PathBuf> },
    /// Name the minimal orthogonal pinning class of the family
    Classify { file: Option<PathBuf> },
    /// Replace each member by its orthogonal companion through the same point
    Orthogonalize { file: Option<PathBuf> },
    /// Emit a named example family
    Generate {
        name: String,
        /// Size parameter for scalable families
        n: Option<usize>,
    },
    /// Sample shrinking neighbourhoods of the axis for satisfying lines
    Oracle {
        file: Option<PathBuf>,
        /// Probe radius, repeatable (rational, e.g. 1/16)
        #[arg(long)]
        radius: Vec<String>,
        /// Grid points per half-axis
        #[arg(long)]
        grid: Option<usize>,
        /// Random samples per radius
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Shrink a pinning body family to an irreducible one
    ReducePolytopes { file: Option<PathBuf> },
    /// Reduce points surrounding the origin in R^d to at most 2d of them
    Steinitz { file: Option<PathBuf> },
    /// Reduce halfspaces cutting a linear flat to at most 2d-2j of them
    HellyFlat { file: Option<PathBuf> },
    /// Reduce halfspaces with a one-sided cone to at most 2d-2 of them
    PositiveCone { file: Option<PathBuf> },
}

#[derive(Serialize)]
struct KeptRepr {
    kept: Vec<usize>,
}

#[derive(Serialize)]
struct ClassRepr {
    class: &'static str,
}

#[derive(Serialize)]
struct FindingRepr {
    radius: String,
    samples: usize,
    satisfying: Option<Vec<String>>,
    ray_witness: Option<Vec<String>>,
}

#[derive(Serialize)]
struct OracleRepr {
    findings: Vec<FindingRepr>,
    certifies_escape: bool,
    no_ray_witness: bool,
}

fn read_document(file: &Option<PathBuf>) -> Result<Document> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    Document::parse(&text)
}

/// A document must carry exactly one of the two family sections here.
fn reject_mixed(doc: &Document) -> Result<()> {
    if !doc.constraints.is_empty() && !doc.polytopes.is_empty() {
        return Err(Error::Parse(
            "document has both constraints and polytopes; provide one".into(),
        ));
    }
    Ok(())
}

fn dim_of(doc: &Document, rows: &[RVec]) -> Result<usize> {
    if let Some(d) = doc.dim {
        return Ok(d);
    }
    match rows.first() {
        Some(r) => Ok(r.len()),
        None => Err(Error::EmptyFamily),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serialization cannot fail")
}

fn run(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Check { file } => {
            let doc = read_document(&file)?;
            reject_mixed(&doc)?;
            if !doc.polytopes.is_empty() {
                let report = decide_polytope_pinning(&doc.polytope_family()?)?;
                Ok(polytope_report_json(&report))
            } else {
                let verdict = decide_pinning(&doc.constraint_family()?)?;
                Ok(verdict_json(&verdict))
            }
        }
        Cmd::Minimize { file } => {
            let doc = read_document(&file)?;
            reject_mixed(&doc)?;
            let kept = if !doc.polytopes.is_empty() {
                minimize_polytope_pinning(&doc.polytope_family()?)?
            } else {
                minimize_pinning(&doc.constraint_family()?)?
            };
            Ok(json(&KeptRepr { kept }))
        }
        Cmd::Classify { file } => {
            let doc = read_document(&file)?;
            let class = classify_ortho_pinning(&doc.constraint_family()?)?;
            Ok(json(&ClassRepr { class: class.label() }))
        }
        Cmd::Orthogonalize { file } => {
            let doc = read_document(&file)?;
            let family = orthogonalize_family(&doc.constraint_family()?);
            Ok(Document::with_constraints(&family).to_json())
        }
        Cmd::Generate { name, n } => match generate(&name, n)? {
            Generated::Constraints(family) => Ok(Document::with_constraints(&family).to_json()),
            Generated::Polytopes(bodies) => Ok(Document::with_polytopes(&bodies).to_json()),
        },
        Cmd::Oracle { file, radius, grid, random, seed } => {
            let doc = read_document(&file)?;
            let mut budget = SampleBudget::default();
            if !radius.is_empty() {
                budget.radii = radius.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
            }
            if let Some(g) = grid {
                budget.grid = g;
            }
            if let Some(r) = random {
                budget.random = r;
            }
            if let Some(s) = seed {
                budget.seed = s;
            }
            let report = sample_escape(&doc.constraint_family()?, &budget)?;
            let repr = OracleRepr {
                certifies_escape: report.certifies_escape(),
                no_ray_witness: report.no_ray_witness(),
                findings: report
                    .findings
                    .into_iter()
                    .map(|f| FindingRepr {
                        radius: linepin::rat::fmt_rat(&f.radius),
                        samples: f.samples,
                        satisfying: f.satisfying.map(|u| strings_of(&u[..])),
                        ray_witness: f.ray_witness.map(|u| strings_of(&u[..])),
                    })
                    .collect(),
            };
            Ok(json(&repr))
        }
        Cmd::ReducePolytopes { file } => {
            let doc = read_document(&file)?;
            let kept = minimize_polytope_pinning(&doc.polytope_family()?)?;
            Ok(json(&KeptRepr { kept }))
        }
        Cmd::Steinitz { file } => {
            let doc = read_document(&file)?;
            let points = doc.point_set()?;
            let d = dim_of(&doc, &points)?;
            Ok(json(&KeptRepr { kept: steinitz_reduce(&points, d)? }))
        }
        Cmd::HellyFlat { file } => {
            let doc = read_document(&file)?;
            let halfspaces = doc.halfspace_set()?;
            let d = dim_of(&doc, &halfspaces)?;
            Ok(json(&KeptRepr { kept: helly_flat_reduce(&halfspaces, d)? }))
        }
        Cmd::PositiveCone { file } => {
            let doc = read_document(&file)?;
            let halfspaces = doc.halfspace_set()?;
            let d = dim_of(&doc, &halfspaces)?;
            Ok(json(&KeptRepr { kept: positive_cone_reduce(&halfspaces, d)? }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(line) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}
