//! Command-line front end: every result goes to a file or stdout as JSON,
//! diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 violations found or no coloring exists,
//! 2 solver budget exhausted, 3 malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use setcolor::composition::{compose, ComposeOptions, CompositionError};
use setcolor::discharging::audit;
use setcolor::fractional::chi_f;
use setcolor::generators::{Family, GeneratorRequest};
use setcolor::reduction::{enhance_traced, extend_traced, EngineError, EngineOptions, Instance};
use setcolor::set_coloring::Violation;
use setcolor::{solve, verify, ColoringSpec, Graph, PlaneGraph, SetColoring, SolveOptions, SolveOutcome, VertexId};

#[derive(Parser, Debug)]
#[command(name = "setcolor", version, about = "Set colorings of triangle-free and girth-5 plane graphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search nodes allowed per solver call.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated plane graph.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an (a:b)-coloring; `--x` vertices need exactly `--x-size` colors.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        x: Vec<VertexId>,
        #[arg(long)]
        x_size: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring against an (a:b) spec, `a` taken from the coloring.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, default_value_t = 2)]
        b: u32,
        /// Vertices that need exactly 3 colors.
        #[arg(long)]
        x: Vec<VertexId>,
    },
    /// Exact fractional chromatic number, printed as p/q.
    Chif {
        #[arg(long)]
        input: PathBuf,
        /// Where to write the cover and dual witness.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Enhanced coloring with three colors on `--x`.
    Enhance {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        x: VertexId,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Extend the precoloring of an instance file.
    Extend {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Charge audit of an instance file.
    Discharge {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Union of enhanced colorings over distance-`s` classes.
    Compose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        s: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// A failed run and its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }

    fn malformed(e: impl std::fmt::Display) -> Failure {
        Failure::new(3, e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::new(3, format!("{e:#}"))
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        match e {
            EngineError::Instance(e) => Failure::malformed(e),
            EngineError::Budget => Failure::new(2, e.to_string()),
            e => Failure::new(1, e.to_string()),
        }
    }
}

impl From<CompositionError> for Failure {
    fn from(e: CompositionError) -> Failure {
        match e {
            CompositionError::Budget(_) | CompositionError::Engine(EngineError::Budget) => Failure::new(2, e.to_string()),
            CompositionError::ZeroDistance | CompositionError::Engine(EngineError::Instance(_)) => Failure::malformed(e),
            e => Failure::new(1, e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<PlaneGraph, Failure> {
    PlaneGraph::from_json(&read(path)?).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    Instance::from_json(&read(path)?).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

/// Writes `text` to `path`, or to stdout without one.
fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(|e| Failure::new(3, format!("{e:#}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Graphviz rendering with each vertex labelled by its color set.
fn coloring_dot(g: &PlaneGraph, c: &SetColoring) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertex_ids() {
        let colors: Vec<String> = c.get(v).map(|s| s.iter().map(|k| k.to_string()).collect()).unwrap_or_default();
        out.push_str(&format!("  {v} [label=\"{v}: {{{}}}\"];\n", colors.join(",")));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

fn render(fmt: Format, g: &PlaneGraph, c: &SetColoring) -> String {
    match fmt {
        Format::Json => pretty(&c.to_json_value()),
        Format::Dot => coloring_dot(g, c),
    }
}

fn violations_json(vs: &[Violation]) -> Value {
    Value::Array(vs.iter().map(|v| Value::String(format!("{v:?}"))).collect())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let common = &cli.common;
    let solve_opts = SolveOptions { budget: common.budget, threads: common.threads.max(1) };
    let engine_opts = EngineOptions { threads: common.threads.max(1), budget: common.budget, ..EngineOptions::default() };
    match &cli.command {
        Command::Generate { family, n, out } => {
            let family = Family::from_name(family).ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                Failure::malformed(format!("unknown family {family}; expected one of {}", names.join(", ")))
            })?;
            let g = GeneratorRequest { family, n: *n, seed: common.seed }.generate().map_err(Failure::malformed)?;
            let text = match common.format {
                Format::Json => pretty(&g.to_json_value()),
                Format::Dot => g.to_dot(),
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Solve { input, a, b, x, x_size, out } => {
            let g = read_graph(input)?;
            let mut spec = ColoringSpec::uniform(*a, *b);
            for &v in x {
                spec = spec.with_exact(v, x_size.unwrap_or(b + 1));
            }
            match solve(&g, &spec, &solve_opts).map_err(Failure::malformed)? {
                SolveOutcome::Sat(c) => {
                    emit(out.as_deref(), &render(common.format, &g, &c))?;
                    Ok(0)
                }
                SolveOutcome::Unsat => Err(Failure::new(1, format!("no ({a}:{b})-coloring exists"))),
                SolveOutcome::Budget => Err(Failure::new(2, "the solver budget ran out")),
            }
        }
        Command::Verify { input, coloring, b, x } => {
            let g = read_graph(input)?;
            let c = SetColoring::from_json(&read(coloring)?).map_err(Failure::malformed)?;
            let spec = ColoringSpec { enhanced: x.iter().copied().collect(), ..ColoringSpec::uniform(c.palette, *b) };
            match verify(&g, &c, &spec) {
                Ok(()) => {
                    println!("{}", pretty(&json!({"ok": true, "violations": []})));
                    Ok(0)
                }
                Err(vs) => {
                    println!("{}", pretty(&json!({"ok": false, "violations": violations_json(&vs)})));
                    eprintln!("{} violation(s)", vs.len());
                    Ok(1)
                }
            }
        }
        Command::Chif { input, certificate } => {
            let g = read_graph(input)?;
            let res = chi_f(&g).map_err(Failure::malformed)?;
            let value = res.to_json_value();
            println!("{}", value["chi_f"].as_str().expect("ratio string"));
            if let Some(p) = certificate {
                emit(Some(p), &pretty(&value))?;
            }
            Ok(0)
        }
        Command::Enhance { input, x, out, trace } => {
            let g = read_graph(input)?;
            if !g.contains_vertex(*x) {
                return Err(Failure::malformed(format!("vertex {x} does not exist")));
            }
            let ext = enhance_traced(&g, *x, &engine_opts)?;
            emit(out.as_deref(), &render(common.format, &g, &ext.coloring))?;
            if let Some(p) = trace {
                emit(Some(p), &pretty(&serde_json::to_value(&ext.trace).expect("serializable")))?;
            }
            Ok(0)
        }
        Command::Extend { input, out, trace } => {
            let inst = read_instance(input)?;
            let ext = extend_traced(&inst, &engine_opts)?;
            emit(out.as_deref(), &render(common.format, &inst.g, &ext.coloring))?;
            if let Some(p) = trace {
                emit(Some(p), &pretty(&serde_json::to_value(&ext.trace).expect("serializable")))?;
            }
            Ok(0)
        }
        Command::Discharge { input, report } => {
            let inst = read_instance(input)?;
            let rep = audit(&inst).map_err(Failure::malformed)?;
            emit(report.as_deref(), &rep.to_json())?;
            if !rep.conserved {
                return Err(Failure::new(1, "charge is not conserved"));
            }
            eprintln!("{} element(s) violate their bound", rep.violations.len());
            Ok(0)
        }
        Command::Compose { input, s, out, report } => {
            let g = read_graph(input)?;
            let opts = ComposeOptions { threads: common.threads.max(1), budget: common.budget };
            let comp = compose(&g, *s, &opts)?;
            emit(out.as_deref(), &render(common.format, &g, &comp.assembly.coloring))?;
            let rep = serde_json::to_value(comp.report()).expect("serializable");
            match report {
                Some(p) => emit(Some(p), &pretty(&rep))?,
                None => eprintln!("{}", pretty(&rep)),
            }
            Ok(0)
        }
    }
}
