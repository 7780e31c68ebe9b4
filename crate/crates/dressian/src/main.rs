use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dressian::error::{Error, Result};
use dressian::fan::{self, ConeReport};
use dressian::fixtures;
use dressian::format::{read_json, to_json, ArrangementDoc, FanDoc, Ordering, SubdivisionDoc, WeightDoc};
use dressian::verify;
use dressian_core::arrangement::{
    arrangement_from_weight, generalized_whitehead_diff, metrize_abstract_arrangement, weight_from_arrangement,
};
use dressian_core::cone::adjacent_cones;
use dressian_core::pluecker::{cone_signature, dressian_violation};
use dressian_core::subdivision::regular_subdivision;
use dressian_core::{AbstractArrangement, KSubset, TreeArrangement, WhiteheadDiff};
use serde::Serialize;

/// Like `println!`, but a closed pipe (`| head`) is not an error.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

/// Exact computations on Dressians, matroidal subdivisions and tree
/// arrangements.
#[derive(Parser)]
#[command(name = "dressian", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dressian membership and cone signature of a weight.
    Check { weight: PathBuf },
    /// Regular subdivision of the hypersimplex induced by a weight.
    Subdivide {
        weight: PathBuf,
        /// Report the basis exchange verdict of every cell.
        #[arg(long)]
        certify_matroidal: bool,
    },
    /// Tree arrangement of a weight in the Dressian.
    Arrange { weight: PathBuf },
    /// Weight of a compatible metric arrangement.
    Pi { arrangement: PathBuf },
    /// Edge lengths making an abstract arrangement compatible.
    Metrize { arrangement: PathBuf },
    /// Maximal cones sharing a facet with the cone of a weight.
    Adjacent { weight: PathBuf },
    /// Whitehead distance between two arrangements.
    Compare { a: PathBuf, b: PathBuf },
    /// Interior points, signatures and arrangements of an external fan.
    IngestFan {
        fan: PathBuf,
        /// Entry order of the ray and lineality vectors.
        #[arg(long, default_value = "lex")]
        ordering: Ordering,
    },
    /// Runs the acceptance checks on the bundled fixtures.
    VerifyFixtures {
        /// Also print the time each check took.
        #[arg(long)]
        timings: bool,
    },
    /// Prints a bundled fixture as a weight or arrangement document.
    Fixture {
        /// dr25-weight, delta48-weight, delta48-contracted, or a Dr(3,6)
        /// class name such as cone5
        name: String,
    },
}

fn weight(path: &Path) -> Result<dressian_core::WeightVector> {
    read_json::<WeightDoc>(path)?.to_weight()
}

fn arrangement(path: &Path) -> Result<TreeArrangement> {
    read_json::<ArrangementDoc>(path)?.to_arrangement()
}

fn cherry_strings(c: &[KSubset]) -> Vec<String> {
    c.iter().map(|s| s.to_string()).collect()
}

#[derive(Serialize)]
struct NeighbourReport {
    signature: String,
    representative: WeightDoc,
    arrangement: ArrangementDoc,
    classification: String,
    differing: Vec<Vec<u32>>,
    cherries: Vec<String>,
}

#[derive(Serialize)]
struct AdjacencyReport {
    signature: String,
    dimension: usize,
    facets: usize,
    boundary_facets: Vec<usize>,
    neighbours: Vec<NeighbourReport>,
}

fn classify(d: &WhiteheadDiff) -> (String, Vec<Vec<u32>>) {
    match d {
        WhiteheadDiff::Identical => ("identical".into(), Vec::new()),
        WhiteheadDiff::GeneralizedWhitehead(ds) => {
            ("generalized-whitehead".into(), ds.iter().map(|j| j.to_vec()).collect())
        }
        WhiteheadDiff::Farther => ("farther".into(), Vec::new()),
    }
}

/// Returns the exit code.
fn execute(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Check { weight: p } => {
            let w = weight(&p)?;
            match dressian_violation(&w) {
                Some(r) => {
                    out!("not in Dressian: relation {r} has a unique minimum");
                    Ok(1)
                }
                None => {
                    out!("in Dressian");
                    out!("signature {}", cone_signature(&w)?);
                    Ok(0)
                }
            }
        }
        Command::Subdivide { weight: p, certify_matroidal } => {
            let s = regular_subdivision(&weight(&p)?);
            out!("{}", to_json(&SubdivisionDoc::from_subdivision(&s, certify_matroidal)));
            Ok(0)
        }
        Command::Arrange { weight: p } => {
            let a = arrangement_from_weight(&weight(&p)?)?;
            out!("{}", to_json(&ArrangementDoc::from_arrangement(&a)));
            Ok(0)
        }
        Command::Pi { arrangement: p } => {
            let w = weight_from_arrangement(&arrangement(&p)?)?;
            out!("{}", to_json(&WeightDoc::from_weight(&w, Ordering::Lex)));
            Ok(0)
        }
        Command::Metrize { arrangement: p } => {
            let doc: ArrangementDoc = read_json(&p)?;
            let a = AbstractArrangement::new(doc.k, doc.n, doc.to_arrangement()?.trees().clone())?;
            match metrize_abstract_arrangement(&a)? {
                Some(t) => {
                    out!("{}", to_json(&ArrangementDoc::from_arrangement(&t)));
                    Ok(0)
                }
                None => {
                    out!("infeasible");
                    Ok(1)
                }
            }
        }
        Command::Adjacent { weight: p } => {
            let w = weight(&p)?;
            let adj = adjacent_cones(&w)?;
            let base = arrangement_from_weight(&w)?;
            let mut neighbours = Vec::new();
            for nb in &adj.neighbours {
                let a = arrangement_from_weight(&nb.representative)?;
                let (classification, differing) = classify(&generalized_whitehead_diff(&base, &a)?);
                neighbours.push(NeighbourReport {
                    signature: nb.signature.to_string(),
                    representative: WeightDoc::from_weight(&nb.representative, Ordering::Lex),
                    arrangement: ArrangementDoc::from_arrangement(&a),
                    classification,
                    differing,
                    cherries: cherry_strings(&a.cherries()),
                });
            }
            let report = AdjacencyReport {
                signature: adj.source.signature.to_string(),
                dimension: adj.source.dimension,
                facets: adj.facets.len(),
                boundary_facets: adj.boundary_facets.clone(),
                neighbours,
            };
            out!("{}", to_json(&report));
            Ok(0)
        }
        Command::Compare { a, b } => {
            let (class, differing) = classify(&generalized_whitehead_diff(&arrangement(&a)?, &arrangement(&b)?)?);
            if differing.is_empty() {
                out!("{class}");
            } else {
                let d: Vec<String> = differing
                    .iter()
                    .map(|j| j.iter().map(|x| x.to_string()).collect::<String>())
                    .collect();
                out!("{class} {}", d.join(","));
            }
            Ok(0)
        }
        Command::IngestFan { fan: p, ordering } => {
            let doc: FanDoc = read_json(&p)?;
            let cones = fan::ingest(&doc, ordering)?;
            let reports: Vec<ConeReport> = cones.iter().map(ConeReport::new).collect();
            out!("{}", to_json(&reports));
            Ok(0)
        }
        Command::VerifyFixtures { timings } => {
            let mut all = true;
            for r in verify::run_all() {
                all &= r.ok();
                if timings {
                    out!("{}", r.line());
                } else {
                    let verdict = if r.ok() { "PASS" } else { "FAIL" };
                    out!("{verdict} {} {}: {}", r.id, r.name, r.detail);
                }
            }
            Ok(if all { 0 } else { 1 })
        }
        Command::Fixture { name } => {
            let text = match name.as_str() {
                "dr25-weight" => to_json(&fixtures::dr25().weight),
                "delta48-weight" => to_json(&fixtures::delta48().weight),
                "delta48-contracted" => to_json(&fixtures::delta48().contracted_weight),
                _ => {
                    let d = fixtures::dr36();
                    let wanted = name.to_ascii_lowercase().replace(' ', "");
                    let c = d
                        .cones
                        .iter()
                        .find(|c| c.name.to_ascii_lowercase().replace(' ', "") == wanted)
                        .ok_or_else(|| Error::Format(format!("unknown fixture {name:?}")))?;
                    let a = c.arrangement(d.n)?;
                    let t = TreeArrangement::new(a.k(), a.n(), a.trees().clone())?;
                    to_json(&ArrangementDoc::from_arrangement(&t))
                }
            };
            out!("{text}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
