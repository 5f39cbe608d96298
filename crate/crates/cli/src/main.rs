//! Command-line front end: check programs, compute their well-founded,
//! operator-least, and stable models, answer queries, enumerate value
//! domains, and cross-check the engine against the reference semantics
//! for the propositional fragment.

use clap::{Parser, Subcommand, ValueEnum};
use holwfs_core::aft::AftError;
use holwfs_core::domains::{DomainStore, Flavor, SemValue, DEFAULT_CAP};
use holwfs_core::engine::{load_program, Engine, ProgramError};
use holwfs_core::oracle;
use holwfs_core::syntax::parse_type_text;
use std::io::{BufRead, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const ENV_MAX_DOMAIN: &str = "HOLWFS_MAX_DOMAIN";

#[derive(Parser)]
#[command(
    name = "holwfs",
    version,
    about = "Well-founded models of higher-order logic programs with negation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on enumerated domain sizes (overrides HOLWFS_MAX_DOMAIN).
    #[arg(long, global = true)]
    max_domain: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    /// Three-valued monotone tables.
    Three,
    /// Two-valued under-estimate tables.
    Ma,
    /// Two-valued over-estimate tables.
    Am,
    /// Consistent pairs of an under- and an over-estimate.
    Pair,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Three => Flavor::Three,
            FlavorArg::Ma => Flavor::Ma,
            FlavorArg::Am => Flavor::Am,
            FlavorArg::Pair => Flavor::Pair,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and type-check a program.
    Check { file: PathBuf },
    /// Compute the well-founded model.
    Model {
        file: PathBuf,
        /// Also report each revision step.
        #[arg(long)]
        trace: bool,
        /// Keep at most this many of the most recent steps.
        #[arg(long, default_value_t = 1000)]
        trace_limit: usize,
    },
    /// Evaluate queries under the well-founded model. Reads queries
    /// from the command line, or one per line from stdin if none are
    /// given.
    Query { file: PathBuf, queries: Vec<String> },
    /// Compute the operator's own least fixpoint (no revision).
    Kk { file: PathBuf },
    /// Enumerate every three-valued stable model.
    Stable { file: PathBuf },
    /// Cross-check the engine against the reference semantics on
    /// propositional programs: a given file, or generated ones.
    Compare {
        file: Option<PathBuf>,
        /// Check this many generated random programs instead.
        #[arg(long, conflicts_with = "file")]
        random: Option<usize>,
        /// Seed for the generated programs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate a value domain of a type.
    Domain {
        /// The type, e.g. "o", "o->o", "(i->o)->o".
        r#type: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Three)]
        flavor: FlavorArg,
        /// Comma-separated individual constants (default: c0).
        #[arg(long)]
        universe: Option<String>,
    },
}

enum CliError {
    /// Bad input from the user: parse errors, type errors, bad flags.
    User(String),
    /// Could not read or write something.
    Io(String),
    /// A domain or interpretation space exceeded the cap.
    Capacity(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::User(_) => 1,
            CliError::Io(_) => 2,
            CliError::Capacity(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::User(m) | CliError::Io(m) | CliError::Capacity(m) => m,
        }
    }
}

impl From<ProgramError> for CliError {
    fn from(e: ProgramError) -> Self {
        CliError::User(e.to_string())
    }
}

impl From<AftError> for CliError {
    fn from(e: AftError) -> Self {
        if e.is_capacity() {
            CliError::Capacity(e.to_string())
        } else {
            CliError::User(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn resolve_cap(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(ENV_MAX_DOMAIN) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::User(format!("{ENV_MAX_DOMAIN} must be a number, got `{s}`"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_engine(path: &Path, cap: usize) -> Result<Engine, CliError> {
    let src = read_file(path)?;
    let program = load_program(&src)?;
    Ok(Engine::new(program, cap))
}

fn emit(s: impl AsRef<str>) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_ref().as_bytes());
    let _ = out.write_all(b"\n");
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cap = resolve_cap(cli.max_domain)?;
    let format = cli.format;
    match cli.cmd {
        Cmd::Check { file } => check(&file, cap, format),
        Cmd::Model {
            file,
            trace,
            trace_limit,
        } => model(&file, cap, format, trace, trace_limit),
        Cmd::Query { file, queries } => query(&file, cap, format, queries),
        Cmd::Kk { file } => kk(&file, cap, format),
        Cmd::Stable { file } => stable(&file, cap, format),
        Cmd::Compare { file, random, seed } => compare(file.as_deref(), random, seed, format),
        Cmd::Domain {
            r#type,
            flavor,
            universe,
        } => domain(&r#type, flavor, universe, cap, format),
    }
}

fn check(file: &Path, cap: usize, format: Format) -> Result<(), CliError> {
    let src = read_file(file)?;
    match load_program(&src) {
        Ok(program) => {
            let engine = Engine::new(program, cap);
            match format {
                Format::Text => emit(format!(
                    "ok: {} predicates, {} clauses, universe of {}",
                    engine.program().predicate_types.len(),
                    engine.program().clauses.len(),
                    engine.universe().len()
                )),
                Format::Json => emit(
                    serde_json::json!({
                        "status": "ok",
                        "predicates": engine.program().predicate_types.len(),
                        "clauses": engine.program().clauses.len(),
                        "universe": engine.universe(),
                    })
                    .to_string(),
                ),
            }
            Ok(())
        }
        Err(e) => {
            if format == Format::Json {
                let diags: Vec<serde_json::Value> = match &e {
                    ProgramError::Parse(p) => vec![serde_json::json!({
                        "kind": "parse", "line": p.line, "col": p.col, "message": p.message,
                    })],
                    ProgramError::Type(ts) => ts
                        .iter()
                        .map(|t| {
                            serde_json::json!({
                                "kind": "type", "code": t.code.as_str(),
                                "line": t.line, "col": t.col, "message": t.message,
                            })
                        })
                        .collect(),
                };
                emit(serde_json::json!({ "status": "error", "diagnostics": diags }).to_string());
            }
            Err(e.into())
        }
    }
}

fn render_model_text(
    engine: &Engine,
    model: &holwfs_core::semantics::Interp,
) -> Result<String, CliError> {
    let mut out = String::new();
    out.push_str(&format!("universe: {}\n", engine.universe().join(", ")));
    for (name, ty) in &engine.program().predicate_types {
        out.push_str(&format!("{name} : {ty}\n"));
        for row in engine.render_rows(name, ty, &model[name])? {
            out.push_str("  ");
            out.push_str(&row);
            out.push('\n');
        }
    }
    Ok(out)
}

fn model(
    file: &Path,
    cap: usize,
    format: Format,
    trace: bool,
    trace_limit: usize,
) -> Result<(), CliError> {
    let engine = load_engine(file, cap)?;
    let wf = engine.well_founded(if trace { trace_limit } else { 0 })?;
    match format {
        Format::Text => {
            let mut out = render_model_text(&engine, &wf.model)?;
            out.push_str(&format!("revisions: {}\n", wf.steps));
            if trace {
                out.push_str("trace:\n");
                if wf.trace_truncated {
                    out.push_str("  (earlier steps dropped)\n");
                }
                for s in &wf.trace {
                    out.push_str(&format!(
                        "  step {}: lower_steps={} upper_steps={} {}\n",
                        s.index,
                        s.lower_steps,
                        s.upper_steps,
                        if s.healthy() { "ok" } else { "VIOLATION" }
                    ));
                }
            }
            print!("{out}");
            Ok(())
        }
        Format::Json => {
            let mut v = engine.model_to_json(&wf.model)?;
            let obj = v.as_object_mut().expect("model JSON is an object");
            obj.insert("revisions".to_string(), serde_json::json!(wf.steps));
            if trace {
                let steps: Vec<serde_json::Value> = wf
                    .trace
                    .iter()
                    .map(|s| {
                        serde_json::json!({
                            "step": s.index,
                            "lower_steps": s.lower_steps,
                            "upper_steps": s.upper_steps,
                            "healthy": s.healthy(),
                        })
                    })
                    .collect();
                obj.insert("trace".to_string(), serde_json::json!(steps));
                obj.insert(
                    "trace_truncated".to_string(),
                    serde_json::json!(wf.trace_truncated),
                );
            }
            emit(v.to_string());
            Ok(())
        }
    }
}

fn query(file: &Path, cap: usize, format: Format, queries: Vec<String>) -> Result<(), CliError> {
    let engine = load_engine(file, cap)?;
    let texts: Vec<String> = if queries.is_empty() {
        let stdin = std::io::stdin();
        let mut lines = Vec::new();
        for line in stdin.lock().lines() {
            let line = line.map_err(|e| CliError::Io(format!("cannot read stdin: {e}")))?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('%') {
                continue;
            }
            lines.push(t.to_string());
        }
        lines
    } else {
        queries
    };
    let checked: Vec<_> = texts
        .iter()
        .map(|t| engine.prepare_query(t).map_err(CliError::from))
        .collect::<Result<_, _>>()?;
    let wf = engine.well_founded(0)?;
    let mut results = Vec::new();
    for (text, q) in texts.iter().zip(&checked) {
        let v = engine.eval_query(&wf.model, q)?;
        results.push((text.clone(), v));
    }
    match format {
        Format::Text => {
            for (_, v) in &results {
                emit(v.as_str());
            }
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = results
                .iter()
                .map(|(text, v)| serde_json::json!({ "query": text, "value": v.as_str() }))
                .collect();
            emit(serde_json::json!({ "results": items }).to_string());
        }
    }
    Ok(())
}

fn kk(file: &Path, cap: usize, format: Format) -> Result<(), CliError> {
    let engine = load_engine(file, cap)?;
    let result = engine.kripke_kleene()?;
    match format {
        Format::Text => {
            let mut out = render_model_text(&engine, &result.model)?;
            out.push_str(&format!("steps: {}\n", result.steps));
            print!("{out}");
        }
        Format::Json => {
            let mut v = engine.model_to_json(&result.model)?;
            let obj = v.as_object_mut().expect("model JSON is an object");
            obj.insert("steps".to_string(), serde_json::json!(result.steps));
            emit(v.to_string());
        }
    }
    Ok(())
}

fn stable(file: &Path, cap: usize, format: Format) -> Result<(), CliError> {
    let engine = load_engine(file, cap)?;
    let models = engine.stable_models()?;
    match format {
        Format::Text => {
            let mut out = format!("{} stable models\n", models.len());
            for (i, m) in models.iter().enumerate() {
                out.push_str(&format!("model {}:\n", i + 1));
                for (name, ty) in &engine.program().predicate_types {
                    for row in engine.render_rows(name, ty, &m.model[name])? {
                        out.push_str("  ");
                        out.push_str(&row);
                        out.push('\n');
                    }
                }
            }
            print!("{out}");
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = models
                .iter()
                .map(|m| engine.model_to_json(&m.model))
                .collect::<Result<_, _>>()?;
            emit(serde_json::json!({ "count": models.len(), "models": items }).to_string());
        }
    }
    Ok(())
}

fn compare(
    file: Option<&Path>,
    random: Option<usize>,
    seed: u64,
    format: Format,
) -> Result<(), CliError> {
    let mut programs = Vec::new();
    match (file, random) {
        (Some(path), _) => programs.push(read_file(path)?),
        (None, Some(n)) => programs = oracle::random_programs(seed, n),
        (None, None) => {
            return Err(CliError::User(
                "compare needs a file or --random N".to_string(),
            ))
        }
    }
    let mut mismatches = Vec::new();
    for (i, src) in programs.iter().enumerate() {
        let found = oracle::differential_check(src).map_err(|e| match e {
            oracle::DifferentialError::Program(p) => CliError::from(p),
            oracle::DifferentialError::Engine(a) => CliError::from(a),
            oracle::DifferentialError::Oracle(o) => CliError::User(o.to_string()),
        })?;
        for m in found {
            mismatches.push((i, src.clone(), m));
        }
    }
    match format {
        Format::Text => {
            emit(format!("programs: {}", programs.len()));
            emit(format!("mismatches: {}", mismatches.len()));
            for (i, src, m) in mismatches.iter().take(5) {
                emit(format!(
                    "program {i}: `{}` engine={} oracle={}\n{src}",
                    m.atom,
                    m.engine.as_str(),
                    m.oracle.as_str()
                ));
            }
        }
        Format::Json => {
            let details: Vec<serde_json::Value> = mismatches
                .iter()
                .map(|(i, src, m)| {
                    serde_json::json!({
                        "program": i, "source": src, "atom": m.atom,
                        "engine": m.engine.as_str(), "oracle": m.oracle.as_str(),
                    })
                })
                .collect();
            emit(
                serde_json::json!({
                    "programs": programs.len(),
                    "mismatches": mismatches.len(),
                    "details": details,
                })
                .to_string(),
            );
        }
    }
    Ok(())
}

/// Structural rendering that also covers two-valued and pair values.
fn show_value(store: &DomainStore, v: &SemValue) -> String {
    match v {
        SemValue::T3(t) => t.as_letter().to_string(),
        SemValue::T2(b) => if *b { "t" } else { "f" }.to_string(),
        SemValue::Ind(i) => store
            .universe()
            .get(*i)
            .cloned()
            .unwrap_or_else(|| format!("#{i}")),
        SemValue::Table(entries) => {
            let parts: Vec<String> = entries.iter().map(|e| show_value(store, e)).collect();
            format!("[{}]", parts.join(","))
        }
        SemValue::Pair(lo, hi) => {
            format!("({},{})", show_value(store, lo), show_value(store, hi))
        }
    }
}

fn domain(
    ty_text: &str,
    flavor: FlavorArg,
    universe: Option<String>,
    cap: usize,
    format: Format,
) -> Result<(), CliError> {
    let ty = parse_type_text(ty_text).map_err(|e| CliError::User(e.to_string()))?;
    let universe: Vec<String> = match universe {
        Some(s) => {
            let names: Vec<String> = s
                .split(',')
                .map(|n| n.trim().to_string())
                .filter(|n| !n.is_empty())
                .collect();
            if names.is_empty() {
                return Err(CliError::User(
                    "--universe must name at least one constant".into(),
                ));
            }
            names
        }
        None => vec!["c0".to_string()],
    };
    let store = DomainStore::new(universe, cap);
    let dom = store
        .enumerate(&ty, flavor.into())
        .map_err(|e| CliError::from(AftError::Domain(e)))?;
    let flavor_name = match flavor {
        FlavorArg::Three => "three",
        FlavorArg::Ma => "ma",
        FlavorArg::Am => "am",
        FlavorArg::Pair => "pair",
    };
    match format {
        Format::Text => {
            emit(format!(
                "{} elements of {flavor_name} {ty} over {{{}}}",
                dom.len(),
                store.universe().join(", ")
            ));
            for v in dom.elems() {
                emit(show_value(&store, v));
            }
        }
        Format::Json => {
            let elems: Vec<String> = dom.elems().iter().map(|v| show_value(&store, v)).collect();
            emit(
                serde_json::json!({
                    "type": ty.to_string(),
                    "flavor": flavor_name,
                    "universe": store.universe(),
                    "count": dom.len(),
                    "elements": elems,
                })
                .to_string(),
            );
        }
    }
    Ok(())
}
