//! `lpa`: batch front end for graph analysis and element arithmetic.

mod text;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lpa_core::algebra::Algebra;
use lpa_core::branching::{
    act, validate, vp_finitely_presented, vp_gradedness, BranchingSystem, InfinitePathSpec, ModuleVector, NvcSystem,
    PathSystem, VpSystem,
};
use lpa_core::graph::{parse_graph, Graph};
use lpa_core::matrix::{realize_acyclic, realize_blocks, realize_comet, verify_iso, MatrixElement, Realization};
use lpa_core::structure::{classify, graded_prime_ideals, graded_socle};
use lpa_core::Error;

#[derive(Parser)]
#[command(name = "lpa", version, about = "Leavitt path algebra analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Graph file; may instead be given as the first positional argument.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Human-readable output instead of JSON.
    #[arg(long)]
    text: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Acyclic,
    Comet,
    Blocks,
}

#[derive(Subcommand)]
enum Command {
    /// Socle, graded primes and classification in one report.
    Analyze {
        #[command(flatten)]
        common: Common,
        file: Option<PathBuf>,
        /// Index paths listed per infinite socle block.
        #[arg(long, default_value_t = 5)]
        bound: usize,
    },
    /// Block decomposition of the graded socle.
    Socle {
        #[command(flatten)]
        common: Common,
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        bound: usize,
    },
    /// Graded prime ideals and which of them are primitive.
    Primes {
        #[command(flatten)]
        common: Common,
        file: Option<PathBuf>,
    },
    /// Classification verdicts with certificates.
    Classify {
        #[command(flatten)]
        common: Common,
        file: Option<PathBuf>,
    },
    /// Normal form of an element: `[GRAPH] EXPR`.
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
    },
    /// Normal form of a product: `[GRAPH] A B`.
    Mul {
        #[command(flatten)]
        common: Common,
        #[arg(required = true, num_args = 2..=3)]
        args: Vec<String>,
    },
    /// Action of an element on a module vector: `[GRAPH] EXPR`.
    Act {
        #[command(flatten)]
        common: Common,
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
        /// `nvc <v>`, `sink <w>`, `emitter <v>` or `vp <path>`.
        #[arg(long, value_name = "SPEC")]
        module: String,
        /// Vector to act on; defaults to the module generator.
        #[arg(long, value_name = "VECTOR")]
        vector: Option<String>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Graded matrix-ring realization, optionally with element images and
    /// randomized isomorphism checks.
    Realize {
        #[command(flatten)]
        common: Common,
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Blocks)]
        mode: Mode,
        /// Element to map; may be repeated.
        #[arg(long, value_name = "EXPR")]
        element: Vec<String>,
        /// Number of random samples for the isomorphism checks.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rationality, gradedness and finite presentation of `V_[p]`:
    /// `[GRAPH] PATH`.
    Vp {
        #[command(flatten)]
        common: Common,
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
        /// Depth for validating the degree map.
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Checks the branching-system conditions up to a depth.
    ValidateBs {
        #[command(flatten)]
        common: Common,
        file: Option<PathBuf>,
        #[arg(long, value_name = "SPEC")]
        module: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

enum Failure {
    Usage(String),
    Analysis { kind: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Graph(_) => "graph",
            Error::Algebra(_) => "algebra",
            Error::Module(_) => "module",
            Error::Structure(_) => "structure",
            Error::Matrix(_) => "matrix",
        };
        Failure::Analysis { kind, message: e.to_string() }
    }
}

fn fail<E: Into<Error>>(e: E) -> Failure {
    Failure::from(e.into())
}

/// Rendered command output.
enum Output {
    Json(Value),
    Literal(String),
}

struct Run {
    output: Output,
    text: Option<String>,
}

fn json_of<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn load(common: &Common, file: Option<PathBuf>) -> Result<Graph, Failure> {
    let path = match (&common.graph, file) {
        (Some(_), Some(_)) => return Err(Failure::Usage("give the graph either with --graph or positionally".into())),
        (Some(p), None) => p.clone(),
        (None, Some(p)) => p,
        (None, None) => return Err(Failure::Usage("missing graph file".into())),
    };
    let source = fs::read_to_string(&path)
        .map_err(|e| Failure::Analysis { kind: "io", message: format!("{}: {e}", path.display()) })?;
    parse_graph(&source).map_err(fail)
}

/// Splits `[GRAPH] REST...` according to whether `--graph` was given.
fn load_with_args(common: &Common, mut args: Vec<String>, rest: usize) -> Result<(Graph, Vec<String>), Failure> {
    let file = match (common.graph.is_some(), args.len()) {
        (true, n) if n == rest => None,
        (false, n) if n == rest + 1 => Some(PathBuf::from(args.remove(0))),
        _ => {
            let graph = if common.graph.is_some() { "" } else { "GRAPH and " };
            return Err(Failure::Usage(format!("expected {graph}{rest} more argument(s)")));
        }
    };
    Ok((load(common, file)?, args))
}

fn module<'g>(g: &'g Graph, spec: &str) -> Result<Box<dyn BranchingSystem + 'g>, Failure> {
    let spec = spec.trim();
    let (kind, rest) = spec.split_once(char::is_whitespace).unwrap_or((spec, ""));
    let rest = rest.trim();
    let vertex = || g.vertex(rest).map_err(fail);
    Ok(match kind {
        "nvc" => Box::new(NvcSystem::new(g, vertex()?).map_err(fail)?),
        "sink" => Box::new(PathSystem::sink(g, vertex()?).map_err(fail)?),
        "emitter" => Box::new(PathSystem::infinite_emitter(g, vertex()?).map_err(fail)?),
        "vp" => {
            let p = InfinitePathSpec::parse(g, rest).map_err(fail)?;
            Box::new(VpSystem::new(g, &p).map_err(fail)?)
        }
        _ => return Err(Failure::Usage(format!("unknown module `{kind}`; expected nvc, sink, emitter or vp"))),
    })
}

#[derive(Serialize)]
struct Entry {
    row: usize,
    col: usize,
    entry: String,
}

/// Nonzero entries with 1-based indices.
fn entries(m: &MatrixElement) -> Vec<Entry> {
    let mut out = Vec::new();
    for i in 0..m.n {
        for j in 0..m.n {
            if !m.entry(i, j).is_zero() {
                out.push(Entry { row: i + 1, col: j + 1, entry: m.entry(i, j).to_string() });
            }
        }
    }
    out
}

fn realization<'g>(g: &'g Graph, mode: Mode) -> Result<Realization<'g>, Failure> {
    match mode {
        Mode::Acyclic => realize_acyclic(g),
        Mode::Comet => realize_comet(g),
        Mode::Blocks => realize_blocks(g),
    }
    .map_err(fail)
}

fn run(command: Command) -> Result<Run, Failure> {
    let (common, output) = match command {
        Command::Analyze { common, file, bound } => {
            let g = load(&common, file)?;
            let socle = graded_socle(&g, bound).report(&g);
            let primes = graded_prime_ideals(&g).map_err(fail)?;
            let vertices: Vec<Value> = g
                .vertices()
                .map(|v| {
                    json!({
                        "name": g.vertex_name(v),
                        "class": g.classify(v).to_string(),
                        "line_point": g.is_line_point(v),
                        "laurent": g.is_laurent_vertex(v),
                    })
                })
                .collect();
            let report = json!({
                "vertices": vertices,
                "socle": json_of(&socle),
                "primes": json_of(&primes),
                "classification": json_of(&classify(&g)),
            });
            (common, Output::Json(report))
        }
        Command::Socle { common, file, bound } => {
            let g = load(&common, file)?;
            (common, Output::Json(json_of(&graded_socle(&g, bound).report(&g))))
        }
        Command::Primes { common, file } => {
            let g = load(&common, file)?;
            (common, Output::Json(json_of(&graded_prime_ideals(&g).map_err(fail)?)))
        }
        Command::Classify { common, file } => {
            let g = load(&common, file)?;
            (common, Output::Json(json_of(&classify(&g))))
        }
        Command::Nf { common, args } => {
            let (g, args) = load_with_args(&common, args, 1)?;
            let alg = Algebra::new(&g);
            let a = alg.parse(&args[0]).map_err(fail)?;
            (common, Output::Literal(alg.format(&a).map_err(fail)?))
        }
        Command::Mul { common, args } => {
            let (g, args) = load_with_args(&common, args, 2)?;
            let alg = Algebra::new(&g);
            let a = alg.parse(&args[0]).map_err(fail)?;
            let b = alg.parse(&args[1]).map_err(fail)?;
            let ab = alg.multiply(&a, &b).map_err(fail)?;
            (common, Output::Literal(alg.format(&ab).map_err(fail)?))
        }
        Command::Act { common, args, module: spec, vector, depth } => {
            let (g, args) = load_with_args(&common, args, 1)?;
            let b = module(&g, &spec)?;
            let a = Algebra::new(&g).parse(&args[0]).map_err(fail)?;
            let m = match vector {
                Some(text) => ModuleVector::parse(b.as_ref(), &text).map_err(fail)?,
                None => ModuleVector::basis(b.generator()),
            };
            let image = act(b.as_ref(), &a, &m, depth).map_err(fail)?;
            let literal = if image.is_zero() { "0".to_string() } else { image.display(b.as_ref()) };
            (common, Output::Literal(literal))
        }
        Command::Realize { common, file, mode, element, samples, seed } => {
            let g = load(&common, file)?;
            let r = realization(&g, mode)?;
            let alg = Algebra::new(&g);
            let mut images = Vec::new();
            for text in &element {
                let a = alg.normal_form(&alg.parse(text).map_err(fail)?).map_err(fail)?;
                let blocks: Vec<Vec<Entry>> = r.apply(&a).iter().map(entries).collect();
                images.push(json!({ "element": a.display(&g).to_string(), "blocks": blocks }));
            }
            let mut report = json!({ "realization": json_of(&r.report()), "images": images });
            if samples > 0 {
                report["verification"] = json_of(&verify_iso(&r, samples, seed).map_err(fail)?);
            }
            (common, Output::Json(report))
        }
        Command::Vp { common, args, depth } => {
            let (g, args) = load_with_args(&common, args, 1)?;
            let p = InfinitePathSpec::parse(&g, &args[0]).map_err(fail)?;
            let gradedness = vp_gradedness(&g, &p, depth).map_err(fail)?;
            let fp = match vp_finitely_presented(&g, &p) {
                Ok((holds, reason)) => json!({ "holds": holds, "reason": reason }),
                Err(e) => json!({ "holds": null, "reason": e.to_string() }),
            };
            let report = json!({
                "path": p.describe(&g),
                "rationality": json_of(&p.rationality(&g).map_err(fail)?),
                "gradedness": json_of(&gradedness),
                "finitely_presented": fp,
            });
            (common, Output::Json(report))
        }
        Command::ValidateBs { common, file, module: spec, depth } => {
            let g = load(&common, file)?;
            let b = module(&g, &spec)?;
            let report = validate(b.as_ref(), depth);
            let mut value = json_of(&report);
            value["passed"] = json!(report.passed());
            (common, Output::Json(value))
        }
    };
    let text = match (&output, common.text) {
        (Output::Json(v), true) => Some(text::render(v)),
        _ => None,
    };
    Ok(Run { output, text })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut stdout = io::stdout().lock();
    match run(cli.command) {
        Ok(Run { text: Some(t), .. }) => {
            let _ = write!(stdout, "{t}");
            ExitCode::SUCCESS
        }
        Ok(Run { output: Output::Json(v), .. }) => {
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::SUCCESS
        }
        Ok(Run { output: Output::Literal(s), .. }) => {
            let _ = writeln!(stdout, "{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Analysis { kind, message }) => {
            eprintln!("{}", json!({ "error": { "kind": kind, "message": message } }));
            ExitCode::from(1)
        }
    }
}
