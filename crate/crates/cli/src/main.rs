//! `burst`: command-line front end for burst-core.
//!
//! Exit status: 0 when the burst condition holds (or the command succeeded),
//! 1 when it fails, 2 on usage or input errors.

mod input;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use burst_core::constructions::{NodeOutcome, Step};
use burst_core::generators::random_corpus;
use burst_core::graph6::to_graph6_string;
use burst_core::search::{open_output, InputIdentity};
use burst_core::tran::{DEFAULT_WITNESS_CAP, MIN_CYCLE_LEN};
use burst_core::{
    all_graphs, annotate_verdict, check_tran_condition, enumerate_induced_cycles, gen_complete,
    gen_cycle, gen_hypercube, gen_path, is_burst, iterate_doubles, scan_stream, star_double_minus,
    write_edge_list, EnumBounds, Graph, IterateOptions, ScanOptions, TranOptions, TranVerdict,
    VertexPolicy,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::input::{load_graphs, load_one, Format};

#[derive(Parser, Debug)]
#[command(
    name = "burst",
    version,
    about = "Burst-cycle analysis of right-angled Coxeter defining graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that every induced cycle of length >= 4 is burst.
    Check(CheckArgs),
    /// List induced cycles with burst flags and witnesses.
    Cycles(CyclesArgs),
    /// Double over the star of a vertex and delete it.
    Double(DoubleArgs),
    /// Scan a graph6 stream for counterexamples.
    Search(SearchArgs),
    /// Generate standard graphs.
    Gen(GenArgs),
    /// Convert between graph formats.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edges,
    Dot,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value = "auto")]
    format: Format,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Longest cycle length examined (default: number of vertices).
    #[arg(long)]
    max_len: Option<usize>,
    /// Number of non-burst cycles and burst witnesses reported.
    #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
    witness_cap: usize,
}

impl BoundArgs {
    fn tran_options(&self, early_exit: bool) -> TranOptions {
        TranOptions {
            max_len: self.max_len,
            witness_cap: self.witness_cap,
            early_exit,
            node_budget: None,
        }
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    bounds: BoundArgs,
    /// Stop at the first non-burst cycle.
    #[arg(long)]
    early_exit: bool,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputMode,
}

#[derive(Args, Debug)]
struct CyclesArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = MIN_CYCLE_LEN)]
    min_len: usize,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputMode,
}

#[derive(Args, Debug)]
struct DoubleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Vertex label to double over. Repeatable with --depth.
    #[arg(long)]
    vertex: Vec<String>,
    /// Run the burst check on the result; the exit status follows it.
    #[arg(long)]
    check: bool,
    /// Iterate star doubling this many levels over the selected vertices
    /// (all vertices when --vertex is absent).
    #[arg(long)]
    depth: Option<usize>,
    /// Largest double built during iteration.
    #[arg(long, default_value_t = 64)]
    max_n: usize,
    #[command(flatten)]
    bounds: BoundArgs,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputMode,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// graph6 stream, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
    #[arg(long)]
    max_len: Option<usize>,
    /// Only double over these vertex labels (default: every vertex).
    #[arg(long)]
    vertex: Vec<String>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = 1024)]
    batch_size: usize,
    /// Checkpoint file; an existing one is resumed.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Write JSON Lines here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stop after this many records (simulates an interruption).
    #[arg(long, hide = true)]
    stop_after: Option<u64>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(long, value_enum, default_value = "graph6", global = true)]
    to: GraphFormat,
}

#[derive(Subcommand, Debug)]
enum Family {
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Hypercube {
        d: usize,
    },
    /// Every graph on exactly N vertices up to isomorphism.
    All {
        n: usize,
    },
    /// Erdős–Rényi G(n, p) samples.
    Random {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    to: GraphFormat,
}

/// Anything that ends the command with exit status 2.
enum Fail {
    Input(String),
    /// The reader of standard output went away; exit quietly.
    Closed,
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Fail::Closed
        } else {
            Fail::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Cycles(a) => cmd_cycles(a),
        Command::Double(a) => cmd_double(a),
        Command::Search(a) => cmd_search(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Convert(a) => cmd_convert(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Closed) => ExitCode::SUCCESS,
    }
}

fn verdict_code(v: &TranVerdict) -> u8 {
    if v.all_burst {
        0
    } else {
        1
    }
}

fn print_verdict(
    out: &mut impl Write,
    g: &Graph,
    v: &TranVerdict,
    mode: OutputMode,
) -> io::Result<()> {
    match mode {
        OutputMode::Json => {
            let report = v.check_report(g);
            writeln!(
                out,
                "{}",
                serde_json::to_string(&report).expect("serialisable")
            )
        }
        _ => write_verdict_text(out, g, v),
    }
}

fn write_verdict_text(out: &mut impl Write, g: &Graph, v: &TranVerdict) -> io::Result<()> {
    writeln!(out, "all_burst: {}", v.all_burst)?;
    writeln!(out, "truncated: {}", v.truncated)?;
    let counts: Vec<String> = v.counts.iter().map(|(k, c)| format!("{k}:{c}")).collect();
    writeln!(out, "induced cycles by length: {}", counts.join(" "))?;
    if v.non_burst_total > 0 {
        writeln!(out, "non-burst cycles: {}", v.non_burst_total)?;
        for c in &v.non_burst_cycles {
            writeln!(out, "  {}", c.labels(g).join(" "))?;
        }
    }
    for note in annotate_verdict(v) {
        writeln!(out, "note: {note}")?;
    }
    Ok(())
}

fn cmd_check(a: CheckArgs) -> Result<u8, Fail> {
    let g = load_one(&a.input.input, a.input.format).map_err(Fail::Input)?;
    let v = check_tran_condition(&g, &a.bounds.tran_options(a.early_exit));
    print_verdict(&mut io::stdout().lock(), &g, &v, a.output)?;
    Ok(verdict_code(&v))
}

fn cmd_cycles(a: CyclesArgs) -> Result<u8, Fail> {
    let g = load_one(&a.input.input, a.input.format).map_err(Fail::Input)?;
    let bounds = EnumBounds::new(a.min_len, a.max_len.unwrap_or(g.n()));
    let mut rows = Vec::new();
    let stats = enumerate_induced_cycles(&g, bounds, |c| {
        rows.push((
            c.clone(),
            is_burst(&g, c).expect("enumerated cycles are valid"),
        ));
        std::ops::ControlFlow::Continue(())
    });
    let mut out = io::stdout().lock();
    match a.output {
        OutputMode::Json => {
            let cycles: Vec<_> = rows
                .iter()
                .map(|(c, w)| {
                    json!({
                        "cycle": c.labels(&g),
                        "length": c.len(),
                        "burst": w.is_some(),
                        "witness": w.as_ref().map(|w| json!({
                            "pair": [g.label(w.pair.0), g.label(w.pair.1)],
                            "square": w.square.map(|v| g.label(v)),
                        })),
                    })
                })
                .collect();
            let report = json!({
                "truncated": stats.truncated,
                "counts": stats.counts,
                "cycles": cycles,
            });
            writeln!(out, "{report}")?;
        }
        _ => {
            for (c, w) in &rows {
                match w {
                    Some(w) => writeln!(
                        out,
                        "{} burst {} | square {}",
                        c.len(),
                        c.labels(&g).join(" "),
                        w.square.map(|v| g.label(v)).join(" ")
                    )?,
                    None => writeln!(out, "{} non-burst {}", c.len(), c.labels(&g).join(" "))?,
                }
            }
            if stats.truncated {
                writeln!(out, "(truncated at length {})", bounds.max_len)?;
            }
        }
    }
    Ok(0)
}

fn cmd_double(a: DoubleArgs) -> Result<u8, Fail> {
    let g = load_one(&a.input.input, a.input.format).map_err(Fail::Input)?;
    if let Some(depth) = a.depth {
        return iterate(&g, &a, depth);
    }
    let [label] = a.vertex.as_slice() else {
        return Err(Fail::Input(
            "double needs exactly one --vertex (or --depth)".into(),
        ));
    };
    let x = g.vertex(label).map_err(|e| Fail::Input(e.to_string()))?;
    let d = star_double_minus(&g, x).map_err(|e| Fail::Input(e.to_string()))?;
    let verdict = a
        .check
        .then(|| check_tran_condition(&d.graph, &a.bounds.tran_options(false)));
    let mut out = io::stdout().lock();
    match a.output {
        OutputMode::Json => {
            let mut report = serde_json::to_value(d.report(&g)).expect("serialisable");
            if let Some(v) = &verdict {
                report["check"] =
                    serde_json::to_value(v.check_report(&d.graph)).expect("serialisable");
            }
            writeln!(out, "{report}")?;
        }
        OutputMode::Text => {
            for (i, o) in d.origin.iter().enumerate() {
                let side = serde_json::to_value(o.side).expect("serialisable");
                writeln!(
                    out,
                    "# origin {} {} {}",
                    d.graph.label(i),
                    side.as_str().unwrap_or_default(),
                    g.label(o.original)
                )?;
            }
            write!(out, "{}", write_edge_list(&d.graph))?;
        }
        OutputMode::Dot => write!(out, "{}", d.graph.to_dot())?,
    }
    if let Some(v) = &verdict {
        if a.output != OutputMode::Json {
            write_verdict_text(&mut io::stderr().lock(), &d.graph, v)?;
        }
        return Ok(verdict_code(v));
    }
    Ok(0)
}

fn iterate(g: &Graph, a: &DoubleArgs, depth: usize) -> Result<u8, Fail> {
    for label in &a.vertex {
        g.vertex(label).map_err(|e| Fail::Input(e.to_string()))?;
    }
    let policy = if a.vertex.is_empty() {
        VertexPolicy::All
    } else {
        VertexPolicy::Listed(a.vertex.clone())
    };
    let opts = IterateOptions {
        depth,
        policy,
        max_n: a.max_n,
        tran: a.bounds.tran_options(false),
    };
    let nodes = iterate_doubles(g, &opts);
    let mut out = io::stdout().lock();
    let path_text = |p: &[Step]| {
        p.iter()
            .map(|s| format!("{}->{}", s.vertex, s.n))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut json_nodes = Vec::new();
    for node in &nodes {
        match &node.outcome {
            NodeOutcome::Evaluated {
                graph,
                verdict,
                duplicate_of,
            } => match a.output {
                OutputMode::Json => json_nodes.push(json!({
                    "path": node.path,
                    "n": graph.n(),
                    "graph6": to_graph6_string(graph).unwrap_or_default(),
                    "all_burst": verdict.all_burst,
                    "truncated": verdict.truncated,
                    "counts": verdict.counts,
                    "non_burst_cycles": verdict.non_burst_cycles.iter().map(|c| c.labels(graph)).collect::<Vec<_>>(),
                    "duplicate_of": duplicate_of,
                })),
                _ => writeln!(
                    out,
                    "[{}] n={} all_burst={}{}",
                    path_text(&node.path),
                    graph.n(),
                    verdict.all_burst,
                    duplicate_of.map_or(String::new(), |d| format!(" duplicate_of={d}"))
                )?,
            },
            NodeOutcome::TooLarge { n } => match a.output {
                OutputMode::Json => json_nodes.push(json!({
                    "path": node.path,
                    "n": n,
                    "too_large": true,
                })),
                _ => writeln!(out, "[{}] n={} skipped: exceeds --max-n", path_text(&node.path), n)?,
            },
        }
    }
    if a.output == OutputMode::Json {
        writeln!(out, "{}", json!({ "nodes": json_nodes }))?;
    }
    Ok(0)
}

fn cmd_search(a: SearchArgs) -> Result<u8, Fail> {
    let fail = |e: burst_core::search::SearchError| Fail::Input(e.to_string());
    let identity = match a.input.as_str() {
        "-" if a.checkpoint.is_some() => {
            return Err(Fail::Input("--checkpoint needs a named input file".into()))
        }
        "-" => None,
        path => Some(
            InputIdentity::of_file(path.as_ref())
                .map_err(|e| Fail::Input(format!("{path}: {e}")))?,
        ),
    };
    let mut opts = ScanOptions {
        max_len: a.max_len,
        policy: if a.vertex.is_empty() {
            VertexPolicy::All
        } else {
            VertexPolicy::Listed(a.vertex.clone())
        },
        batch_size: a.batch_size,
        checkpoint: a.checkpoint.clone(),
        stop_after: a.stop_after,
        ..ScanOptions::default()
    };
    if let Some(w) = a.workers {
        opts.workers = w;
    }
    let reader: Box<dyn io::BufRead> = if a.input == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        Box::new(BufReader::new(
            File::open(&a.input).map_err(|e| Fail::Input(format!("{}: {e}", a.input)))?,
        ))
    };
    let outcome = match &a.out {
        Some(path) => {
            let file = open_output(path, a.checkpoint.as_deref()).map_err(fail)?;
            scan_stream(reader, identity, &opts, &mut BufWriter::new(file)).map_err(fail)?
        }
        None => scan_stream(reader, identity, &opts, &mut io::stdout().lock()).map_err(fail)?,
    };
    for m in &outcome.malformed {
        eprintln!(
            "warning: skipped malformed record {} at byte {}: {}",
            m.record, m.offset, m.error
        );
    }
    eprintln!("{}", outcome.stats.kv_line());
    Ok(0)
}

fn emit(out: &mut impl Write, graphs: &[Graph], to: GraphFormat) -> io::Result<()> {
    for (i, g) in graphs.iter().enumerate() {
        match to {
            GraphFormat::Graph6 => {
                writeln!(out, "{}", to_graph6_string(g).map_err(io::Error::other)?)?
            }
            GraphFormat::Edges => {
                if graphs.len() > 1 {
                    writeln!(out, "# graph {i}")?;
                }
                write!(out, "{}", write_edge_list(g))?;
            }
            GraphFormat::Dot => write!(out, "{}", g.to_dot())?,
        }
    }
    Ok(())
}

fn cmd_gen(a: GenArgs) -> Result<u8, Fail> {
    let err = |e: burst_core::generators::GenError| Fail::Input(e.to_string());
    let graphs = match a.family {
        Family::Cycle { n } => vec![gen_cycle(n).map_err(err)?],
        Family::Path { n } => vec![gen_path(n)],
        Family::Complete { n } => vec![gen_complete(n).map_err(err)?],
        Family::Hypercube { d } => vec![gen_hypercube(d).map_err(err)?],
        Family::All { n } => all_graphs(n).map_err(err)?,
        Family::Random { n, p, seed, count } => random_corpus(n, p, seed, count),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    emit(&mut out, &graphs, a.to)?;
    out.flush()?;
    Ok(0)
}

fn cmd_convert(a: ConvertArgs) -> Result<u8, Fail> {
    let graphs = load_graphs(&a.input.input, a.input.format).map_err(Fail::Input)?;
    let mut out = BufWriter::new(io::stdout().lock());
    emit(&mut out, &graphs, a.to)?;
    out.flush()?;
    Ok(0)
}
