//! Command-line driver. Exit codes: 0 success, 1 verification failure,
//! 2 input error, 3 routing failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use wirecode_core::code::{dressed_distance, StabilizerCode};
use wirecode_core::embed::{embed_on_graph, EmbedOptions, GraphEmbedding};
use wirecode_core::error::{GraphError, LayoutError};
use wirecode_core::graph::{cheeger_exact, expansion_lower_bound, CHEEGER_MAX_VERTICES};
use wirecode_core::layout::{layout_2d, layout_dd, DdOptions, PlacedWireCode, Target};
use wirecode_core::pauli::parse_pauli;
use wirecode_core::sim::{build_schedule, direct_syndrome, simulate_extraction};
use wirecode_core::verify::{verify_all, verify_wire, VerificationReport};
use wirecode_core::wire::{build_wire_code, WireCode};

use crate::dot::{placed_to_dot, wire_to_dot};
use crate::io::{parse_code, parse_graph};
use crate::model::{
    report_table, summarize, EmbedPlanDoc, PlacedDoc, ReportDoc, ScheduleDoc, SimulationDoc, WireCodeDoc,
    PLACED_FORMAT, WIRECODE_FORMAT,
};

#[derive(Debug, Parser)]
#[command(
    name = "wirecode",
    version,
    about = "Compile stabilizer codes into local weight-3 wire codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight- and degree-reduce a code and write `wirecode/1` JSON.
    Build(BuildArgs),
    /// Lay a code out on a 2D or D-dimensional grid and write `placed/1` JSON.
    Layout(LayoutArgs),
    /// Embed a code into a graph given as an edge list and write `placed/1` JSON.
    Embed(EmbedArgs),
    /// Check every wire-code property; exit 0 iff all pass.
    Verify(VerifyArgs),
    /// Write the gauge measurement schedule as JSON.
    Schedule(ScheduleArgs),
    /// Simulate one round of syndrome extraction under a data error.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Code file: one IXYZ string per line, `#` comments.
    pub code: PathBuf,
    /// Largest weight searched when estimating the input distance.
    #[arg(long, default_value_t = 3)]
    pub wmax: usize,
    /// Also write the Tanner graph in DOT format.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    /// Code file.
    pub code: PathBuf,
    /// Grid dimension.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Seed for the router's pair orders.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Height increases allowed when routing fails.
    #[arg(long, default_value_t = 8)]
    pub retries: usize,
    /// Also write the placed Tanner graph in DOT format.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Code file.
    pub code: PathBuf,
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    pub graph: PathBuf,
    /// Seed for vertex assignment and routing.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Keep checks whole instead of weight- and degree-reducing them.
    #[arg(long)]
    pub no_reduce: bool,
    /// Allow several qubits and checks on one vertex when the graph is small.
    #[arg(long)]
    pub shared_vertices: bool,
    /// Also write the embedding plan as `embedplan/1` JSON.
    #[arg(long)]
    pub plan: Option<PathBuf>,
    /// Also write the Tanner graph in DOT format.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Code file, or a `wirecode/1` or `placed/1` document.
    pub input: PathBuf,
    /// Lay a code file out on a grid of this dimension (default 2).
    #[arg(long, conflicts_with = "graph")]
    pub dim: Option<usize>,
    /// Embed a code file into this graph instead of a grid.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Largest weight searched by the distance checks.
    #[arg(long, default_value_t = 3)]
    pub wmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub retries: usize,
    /// With `--graph`: keep checks whole.
    #[arg(long)]
    pub no_reduce: bool,
    /// With `--graph`: allow shared vertices.
    #[arg(long)]
    pub shared_vertices: bool,
    /// Write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    /// Code file, or a `wirecode/1` or `placed/1` document.
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Code file, or a `wirecode/1` or `placed/1` document.
    pub input: PathBuf,
    /// Pauli string on the data register; identity when omitted.
    #[arg(long)]
    pub error: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("verification failed")]
    Verification,
    #[error("{0}")]
    Routing(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification => 1,
            CliError::Input(_) => 2,
            CliError::Routing(_) => 3,
        }
    }
}

fn input_err(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

fn layout_err(e: LayoutError) -> CliError {
    match e {
        LayoutError::RoutingFailed { .. } => CliError::Routing(e.to_string()),
        other => input_err(other),
    }
}

fn graph_err(e: GraphError) -> CliError {
    match e {
        GraphError::Disconnected { .. } => CliError::Routing(e.to_string()),
        other => input_err(other),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// What an input path holds.
pub enum Source {
    Code(StabilizerCode),
    Wire(WireCode),
    Placed(PlacedWireCode),
}

impl Source {
    pub fn load(path: &Path) -> Result<Source, CliError> {
        let text = read(path)?;
        let ctx = |e: &dyn std::fmt::Display| input_err(format!("{}: {e}", path.display()));
        if !text.trim_start().starts_with('{') {
            return parse_code(&text).map(Source::Code).map_err(|e| ctx(&e));
        }
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| ctx(&e))?;
        match value.get("format").and_then(|f| f.as_str()) {
            Some(WIRECODE_FORMAT) => {
                let doc: WireCodeDoc = serde_json::from_value(value).map_err(|e| ctx(&e))?;
                doc.to_wire().map(Source::Wire).map_err(|e| ctx(&e))
            }
            Some(PLACED_FORMAT) => {
                let doc: PlacedDoc = serde_json::from_value(value).map_err(|e| ctx(&e))?;
                doc.to_placed().map(Source::Placed).map_err(|e| ctx(&e))
            }
            other => Err(ctx(&format!("unsupported document format {other:?}"))),
        }
    }

    fn into_wire(self) -> WireCode {
        match self {
            Source::Code(c) => build_wire_code(&c),
            Source::Wire(w) => w,
            Source::Placed(p) => p.into_wire(),
        }
    }
}

fn load_code(path: &Path) -> Result<StabilizerCode, CliError> {
    match Source::load(path)? {
        Source::Code(c) => Ok(c),
        _ => Err(input_err(format!("{}: expected a code file", path.display()))),
    }
}

/// Where JSON and human-readable notes go for one command.
struct Sink<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    out: Option<PathBuf>,
}

impl Sink<'_> {
    fn note(&mut self, line: &str) {
        let w: &mut dyn Write = if self.out.is_some() { self.stdout } else { self.stderr };
        let _ = writeln!(w, "{line}");
    }

    fn emit(&mut self, json: &str) -> Result<(), CliError> {
        match &self.out {
            Some(p) => write_file(p, json),
            None => self.stdout.write_all(json.as_bytes()).map_err(input_err),
        }
    }
}

fn distance_bound(code: &StabilizerCode, w_max: usize) -> String {
    let search = dressed_distance(&code.as_subsystem(), w_max.min(code.num_qubits()));
    let omega = code.max_weight().max(1);
    match search.distance() {
        Some(d) => format!(">={}", d.div_ceil(omega)),
        None => format!(">={}", (search.w_max + 1).div_ceil(omega)),
    }
}

fn cmd_build(a: &BuildArgs, sink: &mut Sink) -> Result<(), CliError> {
    let code = load_code(&a.code)?;
    let wire = build_wire_code(&code);
    let sum = summarize(wire.subsystem());
    let recovered = (0..code.num_checks())
        .filter(|&s| wire.stabilizer_recovery(s).is_ok())
        .count();
    sink.note(&format!("[[{}, {}, {}]]", sum.n, sum.k, distance_bound(&code, a.wmax)));
    sink.note(&format!(
        "weight {}, degree {}, registers data {} copy {} anc {}",
        sum.max_weight, sum.max_degree, sum.data, sum.copy, sum.anc
    ));
    sink.note(&format!(
        "{} checks processed, recovery {}",
        code.num_checks(),
        if recovered == code.num_checks() { "ok" } else { "FAILED" }
    ));
    if let Some(p) = &a.dot {
        write_file(p, &wire_to_dot(&wire))?;
    }
    sink.emit(&to_json(&WireCodeDoc::from_wire(&wire)))
}

fn layout(code: &StabilizerCode, dim: usize, seed: u64, retries: usize) -> Result<PlacedWireCode, CliError> {
    if dim == 2 {
        return Ok(layout_2d(code));
    }
    let opts = DdOptions {
        seed,
        retries,
        ..DdOptions::default()
    };
    layout_dd(code, dim, &opts).map_err(layout_err)
}

fn placed_note(placed: &PlacedWireCode) -> String {
    let s = placed.stats();
    let sum = summarize(placed.wire().subsystem());
    let head = format!("n_wire {}, k {}", sum.n, sum.k);
    match placed.target() {
        Target::Grid(_) => format!(
            "{head}, base {}, height {}, classes {}, retries {}, c_D {:.2}, stacking {}",
            s.base,
            s.height,
            s.classes,
            s.retries_used,
            s.c_d,
            placed.max_stacking()
        ),
        Target::Graph(_) => format!("{head}, stacking {}", placed.max_stacking()),
    }
}

fn cmd_layout(a: &LayoutArgs, sink: &mut Sink) -> Result<(), CliError> {
    let code = load_code(&a.code)?;
    let placed = layout(&code, a.dim, a.seed, a.retries)?;
    sink.note(&placed_note(&placed));
    if let Some(p) = &a.dot {
        write_file(p, &placed_to_dot(&placed))?;
    }
    sink.emit(&to_json(&PlacedDoc::from_placed(&placed)))
}

fn embed(
    code: &StabilizerCode,
    graph: &Path,
    seed: u64,
    no_reduce: bool,
    shared: bool,
) -> Result<(GraphEmbedding, String), CliError> {
    let g = parse_graph(&read(graph)?).map_err(|e| input_err(format!("{}: {e}", graph.display())))?;
    let opts = EmbedOptions {
        seed,
        post_reduce: !no_reduce,
        shared_vertices: shared,
    };
    let emb = embed_on_graph(code, &g, &opts).map_err(graph_err)?;
    let expansion = if g.num_vertices() <= CHEEGER_MAX_VERTICES {
        format!("expansion {}", cheeger_exact(&g).map_err(graph_err)?)
    } else {
        format!("expansion >= {:.4}", expansion_lower_bound(&g))
    };
    let note = format!(
        "congestion {}, c {}, longest path {}, {expansion}",
        emb.plan.max_congestion(),
        emb.plan.c(),
        emb.plan.longest_path()
    );
    Ok((emb, note))
}

fn cmd_embed(a: &EmbedArgs, sink: &mut Sink) -> Result<(), CliError> {
    let code = load_code(&a.code)?;
    let (emb, note) = embed(&code, &a.graph, a.seed, a.no_reduce, a.shared_vertices)?;
    sink.note(&note);
    sink.note(&placed_note(&emb.placed));
    if let Some(p) = &a.plan {
        write_file(p, &to_json(&EmbedPlanDoc::from_plan(&emb.plan)))?;
    }
    if let Some(p) = &a.dot {
        write_file(p, &wire_to_dot(emb.placed.wire()))?;
    }
    sink.emit(&to_json(&PlacedDoc::from_placed(&emb.placed)))
}

fn cmd_verify(a: &VerifyArgs, sink: &mut Sink) -> Result<(), CliError> {
    let report: VerificationReport = match Source::load(&a.input)? {
        Source::Code(code) => {
            let placed = match &a.graph {
                Some(g) => embed(&code, g, a.seed, a.no_reduce, a.shared_vertices)?.0.placed,
                None => layout(&code, a.dim.unwrap_or(2), a.seed, a.retries)?,
            };
            verify_all(&code, &placed, a.wmax)
        }
        Source::Wire(w) => verify_wire(w.input(), &w, a.wmax),
        Source::Placed(p) => verify_all(p.wire().input(), &p, a.wmax),
    };
    let _ = write!(sink.stdout, "{}", report_table(&report));
    if let Some(p) = &a.json {
        write_file(p, &to_json(&ReportDoc::from(&report)))?;
    }
    if report.all_green() {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

fn cmd_schedule(a: &ScheduleArgs, sink: &mut Sink) -> Result<(), CliError> {
    let wire = Source::load(&a.input)?.into_wire();
    let sched = build_schedule(&wire).map_err(input_err)?;
    sink.note(&format!("{} rounds, depth {}", sched.rounds().len(), sched.depth()));
    sink.emit(&to_json(&ScheduleDoc::from_schedule(&sched)))
}

fn cmd_simulate(a: &SimulateArgs, sink: &mut Sink) -> Result<(), CliError> {
    let wire = Source::load(&a.input)?.into_wire();
    let n = wire.input().num_qubits();
    let text = a.error.clone().unwrap_or_else(|| "I".repeat(n));
    let error = parse_pauli(&text).map_err(|e| input_err(format!("--error: {e}")))?;
    if error.num_qubits() != n {
        return Err(input_err(format!(
            "--error has {} qubits, the code has {n}",
            error.num_qubits()
        )));
    }
    let sched = build_schedule(&wire).map_err(input_err)?;
    let sim = simulate_extraction(&wire, &sched, &error, a.seed).map_err(input_err)?;
    let expected = direct_syndrome(&wire, &error);
    let doc = SimulationDoc::new(&sim, &text, &expected);
    let bits: String = doc.syndrome.iter().map(|b| char::from(b'0' + b)).collect();
    sink.note(&format!(
        "syndrome {bits} ({})",
        if doc.matches { "matches" } else { "MISMATCH" }
    ));
    sink.emit(&to_json(&doc))
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let out = match &cli.command {
        Command::Build(a) => a.output.out.clone(),
        Command::Layout(a) => a.output.out.clone(),
        Command::Embed(a) => a.output.out.clone(),
        Command::Schedule(a) => a.output.out.clone(),
        Command::Simulate(a) => a.output.out.clone(),
        Command::Verify(_) => None,
    };
    let mut sink = Sink { stdout, stderr, out };
    match &cli.command {
        Command::Build(a) => cmd_build(a, &mut sink),
        Command::Layout(a) => cmd_layout(a, &mut sink),
        Command::Embed(a) => cmd_embed(a, &mut sink),
        Command::Verify(a) => cmd_verify(a, &mut sink),
        Command::Schedule(a) => cmd_schedule(a, &mut sink),
        Command::Simulate(a) => cmd_simulate(a, &mut sink),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match run(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
