//! The `sigcover` command line.
//!
//! Exit status: 0 on success or a passing check, 1 when a property fails or
//! a requested cover or structure does not exist, 2 on bad input, 3 when a
//! search hits its resource limit.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::circuits::{
    coloops, enumerate_circuits, enumerate_signed_circuits, SignedCircuitKind,
};
use crate::cover::{find_k_cover, min_uniform_cover, verify_cover, CoverCertificate};
use crate::decomposition::{
    all_decompositions, greedy_decomposition, intersection_graph, optimal_decomposition,
    CircuitDecomposition,
};
use crate::edgeset::EdgeSet;
use crate::error::Error;
use crate::format::{parse_edge_list, write_edge_list};
use crate::graph::SignedGraph;
use crate::necklace::{build_necklace, detect_necklace};
use crate::signing::is_balanced;
use crate::survey::{self, Outcome, SweepBounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sigcover", version, about = "Signed-circuit covers of signed multigraphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Balance, Eulerian and flow-admissibility summary with coloops.
    Analyze {
        /// Edge-list file, or - for stdin.
        input: PathBuf,
    },
    /// All circuits with their balance.
    Circuits {
        /// Edge-list file, or - for stdin.
        input: PathBuf,
    },
    /// All signed circuits: balanced circuits and barbells.
    SignedCircuits {
        /// Edge-list file, or - for stdin.
        input: PathBuf,
    },
    /// Find a k-cover by signed circuits.
    Cover {
        /// Number of times every edge must be covered.
        #[arg(long)]
        k: u32,
        /// Edge-list file, or - for stdin.
        input: PathBuf,
    },
    /// Least k up to --max with a k-cover.
    MinCover {
        /// Largest k to try.
        #[arg(long, default_value_t = 6)]
        max: u32,
        /// Edge-list file, or - for stdin.
        input: PathBuf,
    },
    /// Circuit decompositions of an Eulerian graph.
    #[command(group(ArgGroup::new("mode").args(["optimal", "all", "greedy"])))]
    Decompose {
        /// An optimal decomposition found exhaustively (default).
        #[arg(long)]
        optimal: bool,
        /// Every decomposition.
        #[arg(long)]
        all: bool,
        /// Unbalanced circuits first, without an optimality certificate.
        #[arg(long)]
        greedy: bool,
        /// Edge-list file, or - for stdin.
        input: PathBuf,
    },
    /// Detect or build necklaces.
    #[command(group(ArgGroup::new("action").args(["detect", "build"]).required(true)))]
    Necklace {
        /// Report the necklace structure of the input graph.
        #[arg(long, requires = "input")]
        detect: bool,
        /// Print a necklace built from --k, --lengths and --neg.
        #[arg(long, requires = "k")]
        build: bool,
        /// Number of beads.
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated branch path lengths, two per small circuit.
        #[arg(long, value_delimiter = ',')]
        lengths: Option<Vec<usize>>,
        /// Small circuit that carries the two negative edges.
        #[arg(long, default_value_t = 0)]
        neg: usize,
        /// Edge-list file, or - for stdin.
        input: Option<PathBuf>,
    },
    /// Check a property on every generated instance within the bounds.
    Sweep {
        /// Property name, see `lemma --list`.
        #[arg(long)]
        property: String,
        /// Largest vertex count.
        #[arg(long)]
        max_v: usize,
        /// Largest edge count.
        #[arg(long)]
        max_e: usize,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory to write counterexamples to, one edge-list file each.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Check a named property on one graph, or list the properties.
    Lemma {
        /// Property name.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// Edge-list file, or - for stdin.
        input: Option<PathBuf>,
        /// List the properties with their filters.
        #[arg(long)]
        list: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit(_) => EXIT_LIMIT,
            Error::InvalidArgument(_) | Error::Parse { .. } => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // a closed stdout (`| head`) is not worth a message
        let message = if e.kind() == io::ErrorKind::BrokenPipe { String::new() } else { e.to_string() };
        Failure { code: EXIT_INPUT, message }
    }
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(&cli, stdin, out) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn read_graph(path: &Path, stdin: &mut dyn Read) -> Result<SignedGraph, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("{}: {e}", path.display()),
        })?
    };
    parse_edge_list(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => Failure {
            code: EXIT_INPUT,
            message: format!("{}:{line}:{column}: {message}", path.display()),
        },
        other => other.into(),
    })
}

fn ids(set: &EdgeSet) -> Vec<u32> {
    set.iter().map(|e| e.0).collect()
}

fn id_list(set: &EdgeSet) -> String {
    join(set.iter().map(|e| e.0))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn emit(out: &mut dyn Write, format: OutputFormat, value: &impl Serialize, text: impl FnOnce() -> String) -> io::Result<()> {
    match format {
        OutputFormat::Json => {
            let s = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
            writeln!(out, "{s}")
        }
        OutputFormat::Text => write!(out, "{}", text()),
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Analyze { input } => {
            let g = read_graph(input, stdin)?;
            let co = coloops(&g);
            let report = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "negative_edges": ids(&g.negative_edges()),
                "balanced": is_balanced(&g),
                "connected": g.is_connected(),
                "eulerian": g.is_eulerian(),
                "two_edge_connected": g.is_two_edge_connected(),
                "two_connected": g.is_two_connected(),
                "flow_admissible": co.is_empty(),
                "coloops": ids(&co),
            });
            emit(out, fmt, &report, || {
                format!(
                    "vertices: {}\nedges: {}\nnegative_edges: {}\nbalanced: {}\nconnected: {}\neulerian: {}\ntwo_edge_connected: {}\ntwo_connected: {}\nflow_admissible: {}\ncoloops: {}\n",
                    g.vertex_count(),
                    g.edge_count(),
                    id_list(&g.negative_edges()),
                    is_balanced(&g),
                    g.is_connected(),
                    g.is_eulerian(),
                    g.is_two_edge_connected(),
                    g.is_two_connected(),
                    co.is_empty(),
                    id_list(&co),
                )
            })?;
            Ok(EXIT_OK)
        }
        Command::Circuits { input } => {
            let g = read_graph(input, stdin)?;
            let cs = enumerate_circuits(&g);
            let list: Vec<_> = cs
                .iter()
                .map(|c| {
                    json!({
                        "edges": ids(&c.edge_set()),
                        "vertices": c.vertices().iter().map(|v| g.name(*v)).collect::<Vec<_>>(),
                        "balanced": c.is_balanced(&g),
                    })
                })
                .collect();
            emit(out, fmt, &json!({ "circuits": list }), || {
                let mut s = format!("circuits: {}\n", cs.len());
                for c in &cs {
                    let kind = if c.is_balanced(&g) { "balanced" } else { "unbalanced" };
                    s.push_str(&format!("{kind}: {}\n", id_list(&c.edge_set())));
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::SignedCircuits { input } => {
            let g = read_graph(input, stdin)?;
            let cs = enumerate_signed_circuits(&g);
            let list: Vec<_> = cs
                .iter()
                .map(|c| json!({ "kind": c.kind(), "edges": ids(&c.edge_set()) }))
                .collect();
            emit(out, fmt, &json!({ "signed_circuits": list }), || {
                let mut s = format!("signed_circuits: {}\n", cs.len());
                for c in &cs {
                    s.push_str(&format!("{}: {}\n", kind_name(c.kind()), id_list(&c.edge_set())));
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Cover { k, input } => {
            let g = read_graph(input, stdin)?;
            let cert = find_k_cover(&g, *k)?;
            if let Some(c) = &cert {
                checked(&g, c)?;
            }
            emit(out, fmt, &json!({ "k": k, "found": cert.is_some(), "certificate": cert }), || {
                match &cert {
                    None => format!("no {k}-cover\n"),
                    Some(c) => certificate_text(c),
                }
            })?;
            Ok(if cert.is_some() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::MinCover { max, input } => {
            let g = read_graph(input, stdin)?;
            let least = min_uniform_cover(&g, *max)?;
            emit(out, fmt, &json!({ "max": max, "min_cover": least }), || match least {
                Some(k) => format!("min_cover: {k}\n"),
                None => format!("min_cover: none up to {max}\n"),
            })?;
            Ok(if least.is_some() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Decompose { all, greedy, input, .. } => {
            let g = read_graph(input, stdin)?;
            let (mode, certified, list) = if *all {
                ("all", true, all_decompositions(&g)?)
            } else if *greedy {
                ("greedy", false, vec![greedy_decomposition(&g)?])
            } else {
                ("optimal", true, vec![optimal_decomposition(&g)?])
            };
            let report = json!({
                "mode": mode,
                "certified": certified,
                "decompositions": list.iter().map(|d| decomposition_json(&g, d)).collect::<Vec<_>>(),
            });
            emit(out, fmt, &report, || {
                let mut s = format!("mode: {mode}\ncertified: {certified}\ndecompositions: {}\n", list.len());
                for d in &list {
                    s.push_str(&decomposition_text(&g, d));
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Necklace { detect, k, lengths, neg, input, .. } => {
            if *detect {
                let path = input.as_ref().expect("clap requires an input with --detect");
                let g = read_graph(path, stdin)?;
                let found = detect_necklace(&g);
                let report = match &found {
                    None => json!({ "necklace": false }),
                    Some(s) => json!({
                        "necklace": true,
                        "length": s.length,
                        "beads": s.beads.iter().map(|v| g.name(*v)).collect::<Vec<_>>(),
                        "small_circuits": s.small_circuits.iter().map(|c| json!({
                            "ends": [g.name(c.ends.0), g.name(c.ends.1)],
                            "paths": [c.paths[0].iter().map(|e| e.0).collect::<Vec<_>>(),
                                      c.paths[1].iter().map(|e| e.0).collect::<Vec<_>>()],
                        })).collect::<Vec<_>>(),
                        "negative_pair": [s.negative_pair.0, s.negative_pair.1],
                        "switch_set": s.switch_set.iter().map(|v| g.name(v)).collect::<Vec<_>>(),
                    }),
                };
                emit(out, fmt, &report, || match &found {
                    None => "necklace: false\n".to_string(),
                    Some(s) => {
                        let mut t = format!(
                            "necklace: true\nlength: {}\nbeads: {}\nnegative_pair: {} {}\nswitch_set: {}\n",
                            s.length,
                            join(s.beads.iter().map(|v| g.name(*v))),
                            s.negative_pair.0,
                            s.negative_pair.1,
                            join(s.switch_set.iter().map(|v| g.name(v))),
                        );
                        for c in &s.small_circuits {
                            t.push_str(&format!(
                                "small_circuit: {} {} | {} | {}\n",
                                g.name(c.ends.0),
                                g.name(c.ends.1),
                                join(c.paths[0].iter()),
                                join(c.paths[1].iter()),
                            ));
                        }
                        t
                    }
                })?;
                Ok(if found.is_some() { EXIT_OK } else { EXIT_FAILED })
            } else {
                let k = k.expect("clap requires --k with --build");
                let lengths = lengths.clone().unwrap_or_else(|| vec![1; 2 * k]);
                let g = build_necklace(k, &lengths, *neg)?;
                let text = write_edge_list(&g);
                emit(out, fmt, &json!({ "graph": text }), || text.clone())?;
                Ok(EXIT_OK)
            }
        }
        Command::Sweep { property, max_v, max_e, jobs, save } => {
            let bounds = SweepBounds {
                max_vertices: *max_v,
                max_edges: *max_e,
            };
            let report = survey::run_sweep(property, bounds, *jobs)?;
            if let Some(dir) = save {
                fs::create_dir_all(dir)?;
                for (i, f) in report.counterexamples.iter().enumerate() {
                    let body = format!("# {}\n{}", f.detail, f.graph);
                    fs::write(dir.join(format!("{property}-{i}.txt")), body)?;
                }
            }
            emit(out, fmt, &report, || report.to_text())?;
            Ok(if !report.counterexamples.is_empty() {
                EXIT_FAILED
            } else if !report.inconclusive.is_empty() {
                EXIT_LIMIT
            } else {
                EXIT_OK
            })
        }
        Command::Lemma { name, input, list } => {
            if *list {
                let props: Vec<_> = survey::properties()
                    .iter()
                    .map(|p| json!({ "name": p.name, "filter": p.filter, "summary": p.summary }))
                    .collect();
                emit(out, fmt, &json!({ "properties": props }), || {
                    survey::properties()
                        .iter()
                        .map(|p| format!("{} [{}]: {}\n", p.name, p.filter, p.summary))
                        .collect()
                })?;
                return Ok(EXIT_OK);
            }
            let name = name.as_deref().expect("clap requires a name");
            let property = survey::property(name)?;
            let Some(path) = input else {
                return Err(Failure {
                    code: EXIT_INPUT,
                    message: "an input graph is required".into(),
                });
            };
            let g = read_graph(path, stdin)?;
            let verdict = property.check(&g)?;
            emit(
                out,
                fmt,
                &json!({ "property": name, "result": verdict.outcome, "min_cover": verdict.min_cover }),
                || match &verdict.outcome {
                    Outcome::Pass => format!("{name}: pass\n"),
                    Outcome::NotApplicable => format!("{name}: not applicable\n"),
                    Outcome::Fail(d) => format!("{name}: fail\ndetail: {d}\n"),
                },
            )?;
            Ok(match verdict.outcome {
                Outcome::Fail(_) => EXIT_FAILED,
                _ => EXIT_OK,
            })
        }
    }
}

fn kind_name(kind: SignedCircuitKind) -> &'static str {
    match kind {
        SignedCircuitKind::Circuit => "circuit",
        SignedCircuitKind::Barbell => "barbell",
    }
}

/// Certificates are re-verified against the graph before they are printed.
fn checked(g: &SignedGraph, c: &CoverCertificate) -> Result<(), Failure> {
    match verify_cover(g, c) {
        Ok(r) if r.valid => Ok(()),
        Ok(r) => Err(Failure {
            code: EXIT_FAILED,
            message: format!("certificate does not cover evenly: {:?}", r.multiplicities),
        }),
        Err(rej) => Err(Failure {
            code: EXIT_FAILED,
            message: format!("certificate rejected: {rej}"),
        }),
    }
}

fn certificate_text(c: &CoverCertificate) -> String {
    let mut s = format!("k: {}\nmembers: {}\n", c.k, c.size());
    for m in &c.members {
        s.push_str(&format!("{} x{}: {}\n", kind_name(m.kind), m.multiplicity, id_list(&m.edges)));
    }
    s
}

fn decomposition_json(g: &SignedGraph, d: &CircuitDecomposition) -> serde_json::Value {
    let h = intersection_graph(g, d);
    let (unbalanced, circuits) = d.score(g);
    json!({
        "circuits": d.circuits().iter().map(|c| json!({
            "edges": ids(&c.edge_set()),
            "balanced": c.is_balanced(g),
        })).collect::<Vec<_>>(),
        "unbalanced": unbalanced,
        "count": circuits,
        "intersection": h.edges().iter().map(|&(i, j)| [i, j, h.shared(i, j)]).collect::<Vec<_>>(),
    })
}

fn decomposition_text(g: &SignedGraph, d: &CircuitDecomposition) -> String {
    let h = intersection_graph(g, d);
    let (unbalanced, count) = d.score(g);
    let mut s = format!("\ncircuits: {count}\nunbalanced: {unbalanced}\n");
    for (i, c) in d.circuits().iter().enumerate() {
        let label = if c.is_balanced(g) { "balanced" } else { "unbalanced" };
        s.push_str(&format!("circuit {i} ({label}): {}\n", id_list(&c.edge_set())));
    }
    for (i, j) in h.edges() {
        s.push_str(&format!("adjacent: {i} {j} shared {}\n", h.shared(i, j)));
    }
    s
}

/// Entry point used by the binary.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run(args, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock());
    let _ = io::stdout().flush();
    code
}
