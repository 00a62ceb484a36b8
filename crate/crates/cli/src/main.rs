//! `nonrep`: colour, verify and bound nonrepetitive colourings from the shell,
//! writing JSON certificates.
//!
//! Exit codes: 0 pass, 1 usage or input error, 2 verification counterexample.

mod certificate;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nonrep_core::bounds;
use nonrep_core::corpus;
use nonrep_core::graph::{parse_graph, GraphFormat};
use nonrep_core::planar::{
    colour_genus, colour_planar, compute_product_structure, parse_product_structure, validate_product_structure,
    PipelineColouring, ProductStructure,
};
use nonrep_core::treedecomp::{heuristic_td, parse_td, validate_td, width, TreeDecomposition};
use nonrep_core::twcolour::strongly_nonrepetitive_colouring;
use nonrep_core::verify::{
    find_bad_lazy_walk, find_repetitive_path, is_proper, DEFAULT_MAX_ORDER, DEFAULT_MAX_WALK,
};
use nonrep_core::words::path_colouring_4;
use nonrep_core::{Colouring, Graph};
use serde_json::json;

use certificate::{emit, sha256_hex, BoundCheck, Certificate, ColouringReport, GraphSummary, InputDigest};

#[derive(Parser)]
#[command(name = "nonrep", version, about = "Nonrepetitive graph colourings with bounded-search certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a colouring and certify it.
    Colour {
        #[command(subcommand)]
        target: ColourTarget,
    },
    /// Check a given colouring of a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        /// JSON `{"colours": [...], "palette": p}`; `palette` may be omitted.
        #[arg(long)]
        colouring: PathBuf,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Out,
    },
    /// Evaluate a closed-form palette bound.
    Bounds(BoundsArgs),
    /// Check or build a product structure for a planar triangulation.
    Structure {
        #[command(subcommand)]
        action: StructureAction,
    },
    /// Write a graph from the seeded corpus as an edge list.
    Generate(GenerateArgs),
}

#[derive(Subcommand)]
enum ColourTarget {
    /// Four-colouring of the path on `n` vertices.
    Path {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Out,
    },
    /// At most `4^k` colours from a decomposition of width `k`.
    Tw {
        #[arg(long)]
        graph: PathBuf,
        /// PACE `.td` file; a min-fill decomposition is used when omitted.
        #[arg(long)]
        td: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Out,
    },
    /// At most 768 colours through a product structure with three copies.
    Planar(PipelineArgs),
    /// At most `256 * ell` colours through a product structure.
    Genus(PipelineArgs),
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Product structure JSON.
    #[arg(long, required_unless_present = "compute_structure", conflicts_with = "compute_structure")]
    structure: Option<PathBuf>,
    /// Build the structure (planar triangulations only).
    #[arg(long)]
    compute_structure: bool,
    /// PACE decomposition of `H`; min-fill when omitted.
    #[arg(long, conflicts_with = "compute_structure")]
    h_td: Option<PathBuf>,
    #[command(flatten)]
    caps: Caps,
    #[command(flatten)]
    out: Out,
}

#[derive(Subcommand)]
enum StructureAction {
    /// Check that a structure realises the graph.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        structure: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Build a structure with `ell = 3` for a planar triangulation.
    Compute {
        #[arg(long)]
        graph: PathBuf,
        /// Where to write the PACE decomposition of `H`.
        #[arg(long)]
        td_out: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Caps {
    /// Largest path order searched for repetitions (even).
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Largest lazy-walk length searched (even).
    #[arg(long, default_value_t = DEFAULT_MAX_WALK)]
    max_walk: usize,
}

#[derive(Args)]
struct Out {
    /// Output file, written atomically; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(value_parser = bounds::FORMULAS)]
    formula: String,
    #[arg(long, allow_negative_numbers = true)]
    g: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    c_prime: Option<i64>,
    #[command(flatten)]
    out: Out,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Complete,
    Octahedron,
    Icosahedron,
    Triangulation,
    PartialKtree,
    Chordal,
}

#[derive(Args)]
struct GenerateArgs {
    family: Family,
    /// Number of vertices (ignored for the named solids).
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Width for partial k-trees, clique size for chordal graphs.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Edge retention probability for partial k-trees.
    #[arg(long, default_value_t = 0.7)]
    keep: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the decomposition of a partial k-tree.
    #[arg(long)]
    td_out: Option<PathBuf>,
    #[command(flatten)]
    out: Out,
}

/// A failure that is the caller's fault: bad flags, unreadable or malformed
/// input. Always exit code 1.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<bool, InputError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Run {
    match command {
        Command::Colour { target } => colour(target),
        Command::Verify {
            graph,
            colouring,
            caps,
            out,
        } => {
            let mut cert = Certificate::new("verify");
            let g = load_graph(&mut cert, &graph)?;
            let c: Colouring = read_json(&mut cert, "colouring", &colouring)?;
            caps.record(&mut cert);
            certify(&mut cert, &g, &c, &caps)?;
            finish(cert, &out)
        }
        Command::Bounds(args) => {
            let params: BTreeMap<&str, i64> = [("g", args.g), ("k", args.k), ("r", args.r), ("c", args.c), ("c_prime", args.c_prime)]
                .into_iter()
                .filter_map(|(k, v)| v.map(|v| (k, v)))
                .collect();
            let report = bounds::evaluate(&args.formula, &params)?;
            emit(args.out.out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))?;
            Ok(true)
        }
        Command::Structure { action } => structure(action),
        Command::Generate(args) => generate(args),
    }
}

impl Caps {
    fn record(&self, cert: &mut Certificate) {
        cert.param("max_order", self.max_order);
        cert.param("max_walk", self.max_walk);
    }
}

fn colour(target: ColourTarget) -> Run {
    match target {
        ColourTarget::Path { n, caps, out } => {
            let mut cert = Certificate::new("colour path");
            cert.param("n", n);
            caps.record(&mut cert);
            let g = Graph::path(n);
            let c = Colouring::new(path_colouring_4(n).colours().iter().map(|&x| x as usize).collect(), 4)?;
            cert.graph = Some(summary(&g));
            certify(&mut cert, &g, &c, &caps)?;
            cert.bound = Some(bound_check(4, &c, true));
            finish(cert, &out)
        }
        ColourTarget::Tw { graph, td, caps, out } => {
            let mut cert = Certificate::new("colour tw");
            let g = load_graph(&mut cert, &graph)?;
            let td = match td {
                Some(path) => {
                    let td = parse_td(&read_input(&mut cert, "td", &path)?)?;
                    if let Some(v) = validate_td(&g, &td) {
                        return Err(InputError(format!("decomposition does not fit the graph: {v:?}")));
                    }
                    cert.param("td", "file");
                    td
                }
                None => {
                    cert.param("td", "min_fill");
                    heuristic_td(&g)
                }
            };
            caps.record(&mut cert);
            let c = strongly_nonrepetitive_colouring(&g, &td)?;
            let k = if g.n() == 0 { 0 } else { width(&td)? };
            cert.extra.insert("width".into(), json!(k));
            certify(&mut cert, &g, &c, &caps)?;
            // the colouring itself fails when 4^k overflows
            cert.bound = Some(bound_check(4u64.pow(k as u32), &c, true));
            finish(cert, &out)
        }
        ColourTarget::Planar(args) => pipeline("colour planar", args, colour_planar),
        ColourTarget::Genus(args) => pipeline("colour genus", args, colour_genus),
    }
}

type Pipeline = fn(&Graph, &ProductStructure, Option<&TreeDecomposition>) -> nonrep_core::Result<PipelineColouring>;

fn pipeline(name: &str, args: PipelineArgs, colour: Pipeline) -> Run {
    let mut cert = Certificate::new(name);
    let g = load_graph(&mut cert, &args.graph)?;
    let (s, h_td) = if args.compute_structure {
        cert.param("structure", "computed");
        let ps = compute_product_structure(&g)?;
        (ps.structure, Some(ps.h_td))
    } else {
        let path = args.structure.as_deref().expect("clap requires --structure");
        let s = parse_product_structure(&read_input(&mut cert, "structure", path)?)?;
        if let Some(v) = validate_product_structure(&g, &s)? {
            return Err(InputError(format!("structure does not realise the graph: {}", serde_json::to_string(&v)?)));
        }
        cert.param("structure", "file");
        let h_td = match &args.h_td {
            Some(p) => Some(parse_td(&read_input(&mut cert, "h_td", p)?)?),
            None => None,
        };
        (s, h_td)
    };
    args.caps.record(&mut cert);
    let out = colour(&g, &s, h_td.as_ref())?;
    cert.extra.insert("ell".into(), json!(s.ell()));
    cert.extra.insert("h_vertices".into(), json!(s.h().n()));
    cert.extra.insert("h_width".into(), json!(out.h_width));
    certify(&mut cert, &g, &out.colouring, &args.caps)?;
    cert.bound = Some(bound_check(out.bound, &out.colouring, out.certified));
    finish(cert, &args.out)
}

fn structure(action: StructureAction) -> Run {
    match action {
        StructureAction::Validate { graph, structure, out } => {
            let mut cert = Certificate::new("structure validate");
            let g = load_graph(&mut cert, &graph)?;
            let s = parse_product_structure(&read_input(&mut cert, "structure", &structure)?)?;
            let violation = validate_product_structure(&g, &s)?;
            cert.pass = violation.is_none();
            cert.extra.insert("ell".into(), json!(s.ell()));
            cert.extra.insert("violation".into(), serde_json::to_value(&violation)?);
            finish(cert, &out)
        }
        StructureAction::Compute { graph, td_out, out } => {
            let mut cert = Certificate::new("structure compute");
            let g = load_graph(&mut cert, &graph)?;
            let ps = compute_product_structure(&g)?;
            if let Some(path) = td_out {
                emit(Some(&path), &ps.h_td.to_pace())?;
            }
            emit(out.out.as_deref(), &(ps.structure.to_json() + "\n"))?;
            Ok(true)
        }
    }
}

fn generate(args: GenerateArgs) -> Run {
    let mut rng = corpus::rng(args.seed);
    let mut td = None;
    let g = match args.family {
        Family::Path => Graph::path(args.n),
        Family::Cycle => Graph::cycle(args.n),
        Family::Complete => Graph::complete(args.n),
        Family::Octahedron => corpus::octahedron(),
        Family::Icosahedron => corpus::icosahedron(),
        Family::Triangulation => corpus::random_triangulation(&mut rng, args.n, 3 * args.n)?,
        Family::PartialKtree => {
            if !(0.0..=1.0).contains(&args.keep) {
                return Err(InputError(format!("--keep must lie in [0, 1], got {}", args.keep)));
            }
            let (g, t) = corpus::random_partial_ktree(&mut rng, args.n, args.k, args.keep)?;
            td = Some(t);
            g
        }
        Family::Chordal => corpus::random_chordal(&mut rng, args.n, args.k)?,
    };
    if let Some(path) = args.td_out {
        let td = td.unwrap_or_else(|| heuristic_td(&g));
        emit(Some(&path), &td.to_pace())?;
    }
    emit(args.out.out.as_deref(), &g.to_edge_list())?;
    Ok(true)
}

fn read_input(cert: &mut Certificate, role: &'static str, path: &Path) -> Result<String, InputError> {
    let bytes = fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    cert.inputs.push(InputDigest {
        role,
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    });
    String::from_utf8(bytes).map_err(|_| InputError(format!("{}: not UTF-8", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(cert: &mut Certificate, role: &'static str, path: &Path) -> Result<T, InputError> {
    let text = read_input(cert, role, path)?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Graph files are read by extension: `.g6` graph6, `.json` the
/// `{"n", "edges"}` object, anything else an edge list.
fn load_graph(cert: &mut Certificate, path: &Path) -> Result<Graph, InputError> {
    let text = read_input(cert, "graph", path)?;
    let g = match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => parse_graph(text.trim(), GraphFormat::Graph6),
        Some("json") => serde_json::from_str(&text).map_err(|e| nonrep_core::Error::Parse {
            line: e.line(),
            message: e.to_string(),
        }),
        _ => parse_graph(&text, GraphFormat::EdgeList),
    }
    .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    cert.graph = Some(summary(&g));
    Ok(g)
}

fn summary(g: &Graph) -> GraphSummary {
    GraphSummary {
        vertices: g.n(),
        edges: g.edge_count(),
    }
}

fn certify(cert: &mut Certificate, g: &Graph, c: &Colouring, caps: &Caps) -> Result<(), InputError> {
    cert.verdict(is_proper(g, c)?);
    cert.verdict(find_repetitive_path(g, c, caps.max_order)?);
    cert.verdict(find_bad_lazy_walk(g, c, caps.max_walk)?);
    cert.colouring = Some(ColouringReport::from(c));
    Ok(())
}

fn bound_check(claimed: u64, c: &Colouring, certified: bool) -> BoundCheck {
    BoundCheck {
        claimed: claimed.to_string(),
        palette: c.palette(),
        within: c.palette() as u64 <= claimed,
        certified,
    }
}

fn finish(mut cert: Certificate, out: &Out) -> Run {
    cert.finish();
    emit(out.out.as_deref(), &(serde_json::to_string_pretty(&cert)? + "\n"))?;
    Ok(cert.pass)
}
