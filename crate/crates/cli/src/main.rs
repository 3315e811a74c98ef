//! `digitop` — command-line frontend for the digital-topology engine.
//!
//! Structured JSON goes to standard output, human diagnostics to standard
//! error, so subcommands compose in pipelines: every subcommand that
//! emits a graph emits exactly the format every graph-consuming
//! subcommand accepts.
//!
//! Exit codes: 0 success; 1 definite negative (`check` on a
//! non-contractible graph, `verify-trace` on a bad trace); 2 undecided
//! within the budget (partial results are still printed); 3 usage,
//! parse, or I/O error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use digitop::contract::ContractionCertificate;
use digitop::cubical::{
    intersection_graph, minimal_digital_sphere, rational_from_decimal, voxelize, BigRational,
    Bounds, ImplicitSurface,
};
use digitop::invariants::{betti_numbers, full_clique_complex};
use digitop::thinning::{thin, ThinningConfig};
use digitop::transform::{replay, Trace};
use digitop::{Graph, Oracle, OracleBudget, Ternary, VertexLabel};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "digitop",
    version,
    about = "Digital topology on graphs: contractibility, simple points and sets, thinning, homology invariants, and voxelized surface models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Read input from this file instead of standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Recursion budget for each contractibility decision.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide contractibility of the input graph (exit 0 contractible, 1
    /// not, 2 undecided); a contractible verdict carries a deletion-order
    /// certificate.
    Check,
    /// List the simple points, simple edges, and simple sets of the
    /// input graph.
    Simple {
        /// Largest simple-set size to enumerate (sets of size 2..=K).
        #[arg(long, default_value_t = 3)]
        max_set_size: usize,
    },
    /// Thin the input graph to a skeleton, emitting the skeleton, a
    /// replayable trace, and statistics.
    Thin {
        /// Largest set size the contraction phase may use (2..=K).
        #[arg(long, default_value_t = 3)]
        max_set_size: usize,
        /// What to print: the full report or just the skeleton graph.
        #[arg(long, value_enum, default_value_t = ThinEmit::Report)]
        emit: ThinEmit,
    },
    /// Euler characteristic, Betti numbers, and clique counts of the
    /// input graph's clique complex.
    Invariants,
    /// Voxelize a circle (--n 2) or sphere (--n 3) of the given radius
    /// centered at the origin into grid cubes of the given edge length.
    Cubify {
        /// Ambient dimension: 2 for a circle, 3 for a sphere.
        #[arg(long)]
        n: usize,
        /// Radius, as a decimal ("2.5") or fraction ("5/2"); exact.
        #[arg(long)]
        radius: String,
        /// Grid edge length, decimal or fraction; exact.
        #[arg(long, default_value = "1")]
        edge_length: String,
        /// What to print: the intersection graph or the cubical model.
        #[arg(long, value_enum, default_value_t = CubifyEmit::Graph)]
        emit: CubifyEmit,
    },
    /// Replay a trace against the input graph with full verification of
    /// every step; exit 0 iff it verifies. Prints the final graph.
    VerifyTrace {
        /// File holding the trace JSON.
        #[arg(long)]
        trace: PathBuf,
    },
    /// Export the input graph in DOT format.
    ExportDot,
    /// Emit the minimal digital n-sphere graph (join of n+1 point
    /// pairs): --n 1 is a 4-cycle, --n 2 the octahedron.
    Sphere {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ThinEmit {
    Report,
    Skeleton,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CubifyEmit {
    Graph,
    Model,
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    contractible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a ContractionCertificate>,
}

#[derive(Serialize)]
struct CandidateLists<T: Serialize> {
    simple: Vec<T>,
    undecided: Vec<T>,
}

#[derive(Serialize)]
struct SimpleOutput {
    points: CandidateLists<VertexLabel>,
    edges: CandidateLists<(VertexLabel, VertexLabel)>,
    sets: CandidateLists<Vec<VertexLabel>>,
}

#[derive(Serialize)]
struct InvariantsOutput {
    euler: i64,
    betti: Vec<usize>,
    clique_counts: Vec<usize>,
}

/// A diagnosed failure: message for standard error plus the exit code.
struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn error(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: EXIT_ERROR,
        }
    }

    fn negative(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: EXIT_NEGATIVE,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::from(EXIT_OK);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_ERROR);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let oracle = Oracle::new();
    let budget = OracleBudget::new(cli.budget);

    match &cli.command {
        Command::Check => {
            let g = read_graph(&cli)?;
            let verdict = oracle.is_contractible(&g, budget);
            let (code, output) = match verdict.certificate() {
                Some(cert) => (
                    EXIT_OK,
                    CheckOutput {
                        contractible: Some(true),
                        certificate: Some(cert),
                    },
                ),
                None => match verdict.ternary() {
                    Ternary::False => (
                        EXIT_NEGATIVE,
                        CheckOutput {
                            contractible: Some(false),
                            certificate: None,
                        },
                    ),
                    _ => {
                        eprintln!(
                            "undecided within --budget {}; rerun with a larger budget",
                            cli.budget
                        );
                        (
                            EXIT_UNDECIDED,
                            CheckOutput {
                                contractible: None,
                                certificate: None,
                            },
                        )
                    }
                },
            };
            write_output(&cli, &to_json(&output))?;
            Ok(code)
        }

        Command::Simple { max_set_size } => {
            let g = read_graph(&cli)?;
            let points = oracle.enumerate_simple_points(&g, budget);
            let edges = oracle.enumerate_simple_edges(&g, budget);
            let sets = oracle.enumerate_simple_sets(&g, 2, *max_set_size, budget);
            let any_undecided = !points.undecided.is_empty()
                || !edges.undecided.is_empty()
                || !sets.undecided.is_empty();
            let output = SimpleOutput {
                points: CandidateLists {
                    simple: points.simple,
                    undecided: points.undecided,
                },
                edges: CandidateLists {
                    simple: edges.simple,
                    undecided: edges.undecided,
                },
                sets: CandidateLists {
                    simple: sets.simple.iter().map(|s| s.iter().cloned().collect()).collect(),
                    undecided: sets
                        .undecided
                        .iter()
                        .map(|s| s.iter().cloned().collect())
                        .collect(),
                },
            };
            write_output(&cli, &to_json(&output))?;
            if any_undecided {
                eprintln!(
                    "some candidates were undecided within --budget {}; results are partial",
                    cli.budget
                );
                Ok(EXIT_UNDECIDED)
            } else {
                Ok(EXIT_OK)
            }
        }

        Command::Thin { max_set_size, emit } => {
            if *max_set_size < 2 {
                return Err(Failure::error("--max-set-size must be at least 2"));
            }
            let g = read_graph(&cli)?;
            let config = ThinningConfig {
                max_set_size: *max_set_size,
                budget,
            };
            let report = thin(&oracle, &g, &config);
            let text = match emit {
                ThinEmit::Report => report.to_json(),
                ThinEmit::Skeleton => report.skeleton.to_json(),
            };
            write_output(&cli, &text)?;
            if report.stats.undecided_candidates_skipped > 0 {
                eprintln!(
                    "{} candidate(s) undecided within --budget {}; the skeleton may be reducible",
                    report.stats.undecided_candidates_skipped, cli.budget
                );
                Ok(EXIT_UNDECIDED)
            } else {
                Ok(EXIT_OK)
            }
        }

        Command::Invariants => {
            let g = read_graph(&cli)?;
            let counts = full_clique_complex(&g).counts();
            let euler = counts
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum();
            let betti = if counts.is_empty() {
                Vec::new()
            } else {
                betti_numbers(&g, counts.len() - 1)
            };
            let output = InvariantsOutput {
                euler,
                betti,
                clique_counts: counts,
            };
            write_output(&cli, &to_json(&output))?;
            Ok(EXIT_OK)
        }

        Command::Cubify {
            n,
            radius,
            edge_length,
            emit,
        } => {
            let radius = rational_from_decimal(radius).map_err(|e| Failure::error(e.to_string()))?;
            let edge = rational_from_decimal(edge_length)
                .map_err(|e| Failure::error(e.to_string()))?;
            let surface = match n {
                2 => ImplicitSurface::Circle {
                    center: [zero_rational(), zero_rational()],
                    radius: radius.clone(),
                },
                3 => ImplicitSurface::Sphere {
                    center: [zero_rational(), zero_rational(), zero_rational()],
                    radius: radius.clone(),
                },
                other => {
                    return Err(Failure::error(format!(
                        "--n must be 2 (circle) or 3 (sphere), got {other}"
                    )))
                }
            };
            // Search box: the surface plus a two-cell margin on each side.
            let half_width = &radius + &edge + &edge;
            let bounds = Bounds {
                lo: (0..*n).map(|_| -half_width.clone()).collect(),
                hi: (0..*n).map(|_| half_width.clone()).collect(),
            };
            let vox =
                voxelize(&surface, &bounds, &edge).map_err(|e| Failure::error(e.to_string()))?;
            if vox.boundary_contact {
                eprintln!(
                    "warning: the model touches the search bounds; it may be clipped"
                );
            }
            let text = match emit {
                CubifyEmit::Graph => intersection_graph(&vox.model).to_json(),
                CubifyEmit::Model => vox.model.to_json(),
            };
            write_output(&cli, &text)?;
            Ok(EXIT_OK)
        }

        Command::VerifyTrace { trace } => {
            let g = read_graph(&cli)?;
            let trace_text = fs::read_to_string(trace).map_err(|e| {
                Failure::error(format!("cannot read {}: {e}", trace.display()))
            })?;
            let trace = Trace::parse_json(&trace_text)
                .map_err(|e| Failure::error(e.to_string()))?;
            match replay(&oracle, &trace, &g, budget) {
                Ok(final_graph) => {
                    write_output(&cli, &final_graph.to_json())?;
                    Ok(EXIT_OK)
                }
                Err(e) => Err(Failure::negative(format!("trace rejected: {e}"))),
            }
        }

        Command::ExportDot => {
            let g = read_graph(&cli)?;
            write_output(&cli, g.to_dot().trim_end())?;
            Ok(EXIT_OK)
        }

        Command::Sphere { n } => {
            let g = minimal_digital_sphere(*n);
            write_output(&cli, &g.to_json())?;
            Ok(EXIT_OK)
        }
    }
}

fn zero_rational() -> BigRational {
    rational_from_decimal("0").expect("zero parses")
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serialization cannot fail")
}

fn read_graph(cli: &Cli) -> Result<Graph, Failure> {
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::error(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| Failure::error(format!("cannot read standard input: {e}")))?;
            buffer
        }
    };
    Graph::parse_json(&text).map_err(|e| Failure::error(e.to_string()))
}

fn write_output(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::error(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
