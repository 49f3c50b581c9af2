use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maghom::check::{run_check, CheckConfig};
use maghom::export::{delta_pair_json, k_pair_json, to_off};
use maghom::geometric::{build_k_pair, CrossValidateOptions};
use maghom::report::{compute, render_structured, render_text, ComputeConfig, Method, TypeLabeling};
use maghom::tree::{build_delta_pair, decompose_tree_component};
use maghom::{ComponentKey, Error, Execution, Graph};

const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "maghom", version, about = "Integer magnitude homology of finite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute MH_{k,l} for every vertex pair (or one pair) and print a table.
    Compute(ComputeArgs),
    /// Compare the geometric and direct methods on random connected graphs.
    Check(CheckArgs),
    /// Write the simplicial pair of one component as JSON or OFF.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Structured,
    Off,
}

#[derive(Args)]
struct Common {
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Generator spec (path:n, cycle:n, complete:n, star:n, random-tree:n:seed, sq2) or a file.
    #[arg(long)]
    graph: String,
    /// Length, or an inclusive range `lo..hi`.
    #[arg(long = "l", value_parser = parse_lengths)]
    lengths: Lengths,
    /// Highest degree reported; defaults to l.
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, default_value = "auto")]
    method: Method,
    /// Restrict to one ordered pair `u,v`.
    #[arg(long)]
    pair: Option<String>,
    /// Vertex-pair labeling file for the grouped table.
    #[arg(long)]
    types: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 6)]
    max_vertices: usize,
    /// Lengths checked on every trial graph.
    #[arg(long = "l", value_parser = parse_lengths, default_value = "3..5")]
    lengths: Lengths,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Negate the relative boundary before comparison.
    #[arg(long, hide = true)]
    inject_sign_fault: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    graph: String,
    #[arg(long = "l")]
    l: usize,
    /// Ordered pair `u,v`.
    #[arg(long)]
    pair: String,
    /// Export the tree pair of this walk (`x0,x1,...,xl`) instead.
    #[arg(long)]
    walk: Option<String>,
    #[arg(long, value_enum, default_value = "structured")]
    format: ExportFormat,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Debug)]
struct Lengths(Vec<usize>);

fn parse_lengths(s: &str) -> Result<Lengths, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a length"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(format!("empty range {s}"));
            }
            Ok(Lengths((lo..=hi).collect()))
        }
        None => Ok(Lengths(vec![num(s)?])),
    }
}

/// An error together with the exit code it maps to.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Consistency(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

fn load_graph(spec: &str) -> Result<Graph, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{spec}: {e}")))?;
        return Graph::parse(&text).map_err(|e| Failure(EXIT_USAGE, format!("{spec}: {e}")));
    }
    Graph::generate(spec).map_err(|e| match e {
        Error::UnknownFamily(_) => Failure(EXIT_USAGE, format!("`{spec}` is neither a file nor a known graph family")),
        e => e.into(),
    })
}

fn parse_pair(g: &Graph, s: &str) -> Result<(usize, usize), Failure> {
    let (u, v) = s
        .split_once(',')
        .ok_or_else(|| Failure(EXIT_USAGE, format!("pair `{s}` must be `u,v`")))?;
    Ok((g.vertex(u.trim())?, g.vertex(v.trim())?))
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_compute(args: &ComputeArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let pair = args.pair.as_deref().map(|p| parse_pair(&g, p)).transpose()?;
    let types = match &args.types {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            let labeling = TypeLabeling::parse(&text)?;
            labeling.validate(&g)?;
            Some(labeling)
        }
        None => None,
    };
    if types.is_some() && pair.is_some() {
        return Err(Failure(EXIT_USAGE, "--types needs every pair; drop --pair".into()));
    }
    let config = ComputeConfig {
        lengths: args.lengths.0.clone(),
        kmax: args.kmax,
        method: args.method,
        pair,
        exec: args.common.exec(),
    };
    let tables = compute(&g, &config)?;
    let text = match args.format {
        Format::Table => render_text(&g, &args.graph, &tables, types.as_ref())?,
        Format::Structured => render_structured(&g, &args.graph, &tables, types.as_ref())?,
    };
    emit(&args.common, &text)
}

fn run_check_cmd(args: &CheckArgs) -> Result<(), Failure> {
    if args.inject_sign_fault && !cfg!(debug_assertions) {
        return Err(Failure(EXIT_USAGE, "--inject-sign-fault is only available in debug builds".into()));
    }
    let config = CheckConfig {
        trials: args.trials,
        max_vertices: args.max_vertices,
        lengths: args.lengths.0.clone(),
        seed: args.seed,
        exec: args.common.exec(),
        options: CrossValidateOptions {
            inject_sign_fault: args.inject_sign_fault,
        },
    };
    let report = run_check(&config)?;
    let text = match args.format {
        Format::Structured => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Table => {
            let mut s = String::new();
            for t in &report.trials {
                s += &format!(
                    "trial {:>3}  n={} e={:<2} components={:<4} {}\n",
                    t.trial,
                    t.vertices,
                    t.edges,
                    t.components_checked,
                    if t.passed { "ok" } else { "FAIL" }
                );
            }
            let failed = report.trials.iter().filter(|t| !t.passed).count();
            s += &format!("{} trials, {failed} failed, seed {}\n", report.trials.len(), report.seed);
            s
        }
    };
    emit(&args.common, &text)?;
    if let Some(w) = &report.warning {
        eprintln!("warning: {w}");
    }
    match report.first_failure() {
        None => Ok(()),
        Some(c) => {
            let detail = serde_json::to_string(c).expect("counterexample serializes");
            let code = if c.mismatch.is_internal() { EXIT_INTERNAL } else { EXIT_MISMATCH };
            Err(Failure(code, format!("counterexample: {detail}")))
        }
    }
}

fn run_export(args: &ExportArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let (a, b) = parse_pair(&g, &args.pair)?;
    let key = ComponentKey::new(a, b, args.l);
    if g.dist(a, b) > args.l {
        eprintln!(
            "notice: d({},{}) = {} exceeds l = {}; the complex is empty",
            g.name(a),
            g.name(b),
            g.dist(a, b),
            args.l
        );
    }
    let text = match &args.walk {
        Some(walk) => {
            let points = walk
                .split(',')
                .map(|v| g.vertex(v.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let comp = decompose_tree_component(&g, key)?
                .into_iter()
                .find(|c| c.walk.points() == points)
                .ok_or_else(|| {
                    Failure(EXIT_USAGE, format!("`{walk}` is not a walk of {} steps from the pair", args.l))
                })?;
            let dp = build_delta_pair(&comp, args.l)?;
            match args.format {
                ExportFormat::Structured => delta_pair_json(&g, &points, &dp),
                ExportFormat::Off => to_off(dp.ambient(), dp.sub())?,
            }
        }
        None => {
            let kp = build_k_pair(&g, key)?;
            match args.format {
                ExportFormat::Structured => k_pair_json(&g, &kp),
                ExportFormat::Off => to_off(kp.total(), kp.sub())?,
            }
        }
    };
    emit(&args.common, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Check(args) => run_check_cmd(args),
        Command::Export(args) => run_export(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
