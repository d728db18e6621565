//! The `treeconn` command line. [`run`] takes explicit streams so commands
//! can be driven in-process by tests.
//!
//! Exit codes: 0 success, 1 a mathematical claim was refuted, 2 usage or
//! input error.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{build_extremal, build_h, figure_fixture, smooth};
use crate::extremal::{
    filter_kappa, verify_lemma3, verify_lemma4, verify_lemma5, verify_theorem1, CampaignReport,
    KappaPredicate,
};
use crate::graph::{Graph, VertexSet};
use crate::io::{
    emit_certificate, emit_dot, emit_edge_list, emit_graph6, parse_edge_list, parse_graph6,
};
use crate::packing::{KappaResult, Solver};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "treeconn",
    version,
    about = "Exact generalized 3-connectivity toolkit"
)]
struct Cli {
    /// Largest graph order the solver accepts (default 20, or $TREECONN_SOLVER_LIMIT).
    #[arg(long, global = true)]
    limit: Option<usize>,
    /// Worker threads (default: available cores). Results do not depend on it.
    #[arg(long, global = true)]
    parallel: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edges,
    G6,
}

#[derive(Debug, Args)]
struct SolveOutput {
    /// Write the certificate document here.
    #[arg(long, value_name = "PATH")]
    certificates: Option<PathBuf>,
    /// Write a Graphviz rendering with the certificate trees colored.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Print the certificate document instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute kappa_3 with a witness triple and certificate trees.
    Kappa3 {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "edges")]
        format: Format,
        #[command(flatten)]
        out: SolveOutput,
    },
    /// Compute kappa(S) for one terminal set.
    KappaSet {
        #[arg(default_value = "-")]
        input: String,
        /// Comma-separated terminal vertices, e.g. 2,6,9.
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value = "edges")]
        format: Format,
        #[command(flatten)]
        out: SolveOutput,
    },
    /// Build one of the named graphs.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
        /// Output format.
        #[arg(long, value_enum, default_value = "edges", global = true)]
        format: Format,
        /// Output file (default: standard output).
        #[arg(long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run a verification campaign.
    Verify {
        #[command(subcommand)]
        campaign: Campaign,
        /// Print the report as JSON.
        #[arg(long, global = true)]
        json: bool,
    },
    /// Keep graph6 lines from standard input whose kappa_3 matches.
    Filter {
        /// Keep graphs with exactly this kappa_3.
        #[arg(long, group = "predicate")]
        kappa3: Option<usize>,
        /// Keep graphs with at least this kappa_3.
        #[arg(long, group = "predicate")]
        min_kappa3: Option<usize>,
        /// Keep graphs with at most this kappa_3.
        #[arg(long, group = "predicate")]
        max_kappa3: Option<usize>,
        /// Exit with status 2 when any input line cannot be processed.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ConstructKind {
    /// The H(k) family: order 5k, size 6k.
    H {
        #[arg(long)]
        k: usize,
    },
    /// Figure graph 1..=6.
    Figure {
        #[arg(long)]
        id: u8,
    },
    /// Extremal graph of order n >= 4.
    Extremal {
        #[arg(long)]
        n: usize,
    },
    /// Smooth a degree-2 vertex of an input graph.
    Smooth {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_enum, default_value = "edges")]
        input_format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum Campaign {
    /// Order 10, size 12 candidates all have kappa_3 <= 1.
    Lemma3,
    /// Order 9, size 11 candidates all have kappa_3 <= 1.
    Lemma4,
    /// Smoothing never lowers kappa_3 (seeded random graphs).
    Lemma5 {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Sharpness rows of the ceil(6n/5) bound.
    Theorem1 {
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn solver_for(cli: &Cli) -> Result<Solver, Failure> {
    let base = Solver::from_env();
    let limit = cli.limit.unwrap_or(base.limit());
    let threads = cli
        .parallel
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(usage("--parallel must be at least 1"));
    }
    base.with_limit(limit)
        .with_threads(threads)
        .map_err(|e| usage(format!("cannot start worker pool: {e}")))
}

fn dispatch(
    cli: Cli,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Outcome {
    let solver = solver_for(&cli)?;
    let io_err = |e: std::io::Error| usage(format!("write failed: {e}"));
    match cli.command {
        Command::Kappa3 { input, format, out } => {
            let text = read_input(&input, stdin)?;
            let graphs = parse_graphs(&text, format)?;
            for g in &graphs {
                let r = solver.kappa3(g).map_err(usage)?;
                report_result(g, &r, &out, "kappa3", stdout).map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
        Command::KappaSet {
            input,
            set,
            format,
            out,
        } => {
            let text = read_input(&input, stdin)?;
            let s = parse_set(&set)?;
            let graphs = parse_graphs(&text, format)?;
            for g in &graphs {
                let r = solver.kappa_of_set(g, &s).map_err(usage)?;
                report_result(g, &r, &out, "kappa(S)", stdout).map_err(io_err)?;
                if !out.json {
                    for (i, t) in r.family.trees.iter().enumerate() {
                        let edges: Vec<String> =
                            t.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                        writeln!(stdout, "tree {i}: {}", edges.join(" ")).map_err(io_err)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Construct {
            kind,
            format,
            output,
        } => {
            let g = match kind {
                ConstructKind::H { k } => build_h(k).map_err(usage)?,
                ConstructKind::Figure { id } => figure_fixture(id).map_err(usage)?,
                ConstructKind::Extremal { n } => build_extremal(n).map_err(usage)?,
                ConstructKind::Smooth {
                    input,
                    vertex,
                    input_format,
                } => {
                    let text = read_input(&input, stdin)?;
                    let graphs = parse_graphs(&text, input_format)?;
                    let [g] = &graphs[..] else {
                        return Err(usage(format!(
                            "smooth expects exactly one input graph, found {}",
                            graphs.len()
                        )));
                    };
                    smooth(g, vertex).map_err(usage)?
                }
            };
            let text = match format {
                Format::Edges => emit_edge_list(&g),
                Format::G6 => format!("{}\n", emit_graph6(&g).map_err(usage)?),
            };
            match output {
                Some(path) => write_file(&path, &text)?,
                None => stdout.write_all(text.as_bytes()).map_err(io_err)?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { campaign, json } => {
            let report: CampaignReport = match campaign {
                Campaign::Lemma3 => verify_lemma3(&solver),
                Campaign::Lemma4 => verify_lemma4(&solver),
                Campaign::Lemma5 { samples, seed } => {
                    if samples == 0 {
                        return Err(usage("--samples must be at least 1"));
                    }
                    verify_lemma5(&solver, samples, seed)
                }
                Campaign::Theorem1 { max_k } => {
                    if max_k < 3 {
                        return Err(usage("--max-k must be at least 3"));
                    }
                    verify_theorem1(&solver, max_k)
                }
            }
            .map_err(usage)?;
            let text = if json {
                format!("{}\n", report.to_json())
            } else {
                report.to_text()
            };
            stdout.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Filter {
            kappa3,
            min_kappa3,
            max_kappa3,
            strict,
        } => {
            let pred = match (kappa3, min_kappa3, max_kappa3) {
                (Some(v), None, None) => KappaPredicate::Equals(v),
                (None, Some(v), None) => KappaPredicate::AtLeast(v),
                (None, None, Some(v)) => KappaPredicate::AtMost(v),
                _ => {
                    return Err(usage(
                        "give exactly one of --kappa3, --min-kappa3, --max-kappa3",
                    ))
                }
            };
            let summary = filter_kappa(&solver, stdin, pred, stdout, stderr)
                .map_err(|e| usage(format!("unreadable input: {e}")))?;
            if strict && !summary.errors.is_empty() {
                return Err(usage(format!(
                    "{} input lines could not be processed",
                    summary.errors.len()
                )));
            }
            Ok(EXIT_OK)
        }
    }
}

fn read_input(path: &str, stdin: &mut dyn BufRead) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| usage(format!("cannot read standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_graphs(text: &str, format: Format) -> Result<Vec<Graph>, Failure> {
    match format {
        Format::Edges => Ok(vec![parse_edge_list(text).map_err(usage)?]),
        Format::G6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_graph6(l.trim()).map_err(|e| usage(format!("line {}: {e}", i + 1))))
            .collect(),
    }
}

fn parse_set(text: &str) -> Result<VertexSet, Failure> {
    let members = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("bad vertex {p:?} in --set")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    VertexSet::new(members).map_err(usage)
}

fn report_result(
    g: &Graph,
    r: &KappaResult,
    out: &SolveOutput,
    label: &str,
    stdout: &mut dyn Write,
) -> std::io::Result<()> {
    let cert = emit_certificate(g, r);
    if let Some(path) = &out.certificates {
        std::fs::write(path, &cert)?;
    }
    if let Some(path) = &out.dot {
        std::fs::write(path, emit_dot(g, Some(&r.family)))?;
    }
    if out.json {
        writeln!(stdout, "{cert}")
    } else if label == "kappa3" {
        writeln!(stdout, "kappa3 = {}, witness {}", r.kappa, r.witness_set)
    } else {
        writeln!(stdout, "{label} = {}, set {}", r.kappa, r.witness_set)
    }
}
