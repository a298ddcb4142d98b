//! Command-line front end: argument parsing, JSON reports and exit codes.
//!
//! [`run`] does all the work and returns the process outcome instead of
//! printing, so tests can drive it in-process.

use std::ffi::OsString;
use std::fs;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use diagramkit::arith::{format_rational, parse_rational, Rational};
use diagramkit::canonical::{canonical_form, canonical_graph};
use diagramkit::corpus::{closure_audit, star_corpus, CLOSURE_SAMPLES};
use diagramkit::dcc::{hurwitz_quotient_transform, CoefficientSet};
use diagramkit::diagram::{
    classify_graph, composed_bound, e9_lemma_check, e9_tower_check, enumerate_minimal_elliptic_star,
    lanner_blowup_search, nikulin_bound, pair_bound_audit, pair_bound_constants, vertex_blowup_horizon, BoundCase,
    EnumerationResult, GraphKind, Horizon, PairAudit, SearchConfig, TowerStep,
};
use diagramkit::discrepancy::{
    classify_singularity, is_log_terminal_graph, log_discrepancies, ThresholdReading,
};
use diagramkit::graph_file::{parse_graph, serialize_graph};
use diagramkit::star::check_star;
use diagramkit::{Error, WeightedGraph};
use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_SINGULAR: i32 = 4;
pub const EXIT_INFINITE_TAIL: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "diagramkit", version, about = "Exact computations on weighted exceptional-curve graphs")]
struct Cli {
    /// Worker threads for enumeration; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signature, class, Lanner flag and log terminality.
    Classify { file: String },
    /// Log discrepancies and codiscrepancies; singularity class with --epsilon.
    Discrepancies {
        file: String,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, value_enum, default_value_t = Reading::Discrepancy)]
        reading: Reading,
    },
    /// Decides `*(eps)` and prints a witness.
    Star {
        file: String,
        #[arg(long)]
        epsilon: String,
    },
    /// Blows up a vertex or a simple edge and prints the new graph file.
    Blowup(BlowupArgs),
    /// Minimal elliptic enumeration or Lanner blowup closure.
    Enumerate {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        /// Seed graph for the closure; the chain (1, 1, 1) by default.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
    /// Picard-rank bound and pair-count constants.
    Bounds {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: Option<String>,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        d: Option<u32>,
    },
    /// Runs one of the built-in checks.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Coefficient-set queries.
    Dcc {
        /// Comma-separated `standard`, `p/q` and `family:c:a:k_min` items.
        #[arg(long)]
        set: String,
        #[arg(long, value_enum)]
        op: DccOp,
        #[arg(long)]
        value: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_m: u64,
        #[arg(long, default_value_t = 2)]
        max_terms: usize,
        #[arg(long, default_value_t = 2)]
        max_n: u64,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["vertex", "edge"])))]
struct BlowupArgs {
    file: String,
    #[arg(long)]
    vertex: Option<String>,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    edge: Option<Vec<String>>,
    #[arg(long = "new")]
    new_id: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Reading {
    Discrepancy,
    LogDiscrepancy,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    MinimalElliptic,
    LannerClosure,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    E9,
    StarClosure,
    PairBounds,
    LannerHorizon,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DccOp {
    MinPositive,
    Contains,
    Below,
    Quotient,
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Singular(_) => EXIT_SINGULAR,
        Error::InfiniteTail { .. } => EXIT_INFINITE_TAIL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs the command. `env_budget`
/// is the raw value of `DIAGRAMKIT_BUDGET`, if set.
pub fn run<I, T>(args: I, env_budget: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let config = match search_config(cli.threads, env_budget) {
        Ok(c) => c,
        Err(msg) => return usage(msg),
    };
    let name = command_name(&cli.command);
    let mut inputs = Map::new();
    match execute(&cli.command, &config, &mut inputs) {
        Ok(Output::Report(result)) => Outcome { code: EXIT_OK, stdout: report(name, inputs, result), stderr: String::new() },
        Ok(Output::Text(text)) => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
        Err(Failure::Usage(msg)) => usage(msg),
        Err(Failure::Lib(e)) => {
            let stdout = match &e {
                Error::Singular(r) => report(
                    name,
                    inputs,
                    json!({ "singular": {
                        "rank": r.rank,
                        "kernel": rats(&r.kernel),
                        "consistent": r.consistent,
                    }}),
                ),
                _ => String::new(),
            };
            Outcome { code: exit_code(&e), stdout, stderr: format!("error: {e}\n") }
        }
    }
}

fn usage(msg: String) -> Outcome {
    Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

fn search_config(threads: usize, env_budget: Option<&str>) -> std::result::Result<SearchConfig, String> {
    if threads == 0 {
        return Err("--threads must be at least 1".into());
    }
    let mut config = SearchConfig::with_threads(threads);
    if let Some(raw) = env_budget {
        config.subgraph_budget = match raw.trim().parse::<usize>() {
            Ok(b) if b > 0 => b,
            _ => return Err(format!("DIAGRAMKIT_BUDGET must be a positive integer, got {raw:?}")),
        };
    }
    Ok(config)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Discrepancies { .. } => "discrepancies",
        Command::Star { .. } => "star",
        Command::Blowup(_) => "blowup",
        Command::Enumerate { .. } => "enumerate",
        Command::Bounds { .. } => "bounds",
        Command::Verify { .. } => "verify",
        Command::Dcc { .. } => "dcc",
    }
}

fn report(command: &str, inputs: Map<String, Value>, result: Value) -> String {
    let doc = json!({
        "command": command,
        "inputs": Value::Object(inputs),
        "result": result,
        "version": VERSION,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("json values always serialize");
    text.push('\n');
    text
}

enum Output {
    Report(Value),
    Text(String),
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn rats(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

fn read_graph(path: &str) -> CmdResult<WeightedGraph> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(parse_graph(&text)?)
}

fn parse_epsilon(text: &str) -> CmdResult<Rational> {
    let eps = parse_rational(text)?;
    diagramkit::star::validate_epsilon(&eps)?;
    Ok(eps)
}

/// `{code, vertices, edges}` with vertices in canonical order.
pub fn graph_json(g: &WeightedGraph) -> Value {
    let code = canonical_form(g).code;
    let c = canonical_graph(g);
    graph_json_ordered(&c, code)
}

fn graph_json_ordered(c: &WeightedGraph, code: String) -> Value {
    let vertices: Vec<Value> = c
        .vertices()
        .iter()
        .map(|v| json!({ "id": v.id, "weight": v.weight, "genus": v.genus }))
        .collect();
    let edges: Vec<Value> = c
        .edges()
        .map(|(i, j, m)| json!([c.vertex(i).id, c.vertex(j).id, m]))
        .collect();
    json!({ "code": code, "vertices": vertices, "edges": edges })
}

fn ids(g: &WeightedGraph, idx: &[usize]) -> Value {
    Value::Array(idx.iter().map(|&i| Value::String(g.vertex(i).id.clone())).collect())
}

fn execute(cmd: &Command, config: &SearchConfig, inputs: &mut Map<String, Value>) -> CmdResult<Output> {
    match cmd {
        Command::Classify { file } => {
            inputs.insert("file".into(), json!(file));
            let g = read_graph(file)?;
            let c = canonical_graph(&g);
            let class = classify_graph(&c);
            let lt = is_log_terminal_graph(&c, config.subgraph_budget)?;
            Ok(Output::Report(json!({
                "class": class.kind.name(),
                "lanner": class.lanner,
                "signature": {
                    "n_plus": class.signature.n_plus,
                    "n_zero": class.signature.n_zero,
                    "n_minus": class.signature.n_minus,
                },
                "log_terminal": lt.log_terminal,
                "log_terminal_witness": lt.witness.as_deref().map(|w| ids(&c, w)),
                "graph": graph_json(&g),
            })))
        }
        Command::Discrepancies { file, epsilon, reading } => {
            inputs.insert("file".into(), json!(file));
            if let Some(e) = epsilon {
                inputs.insert("epsilon".into(), json!(e));
            }
            inputs.insert(
                "reading".into(),
                json!(match reading {
                    Reading::Discrepancy => "discrepancy",
                    Reading::LogDiscrepancy => "log-discrepancy",
                }),
            );
            let eps = epsilon.as_deref().map(parse_epsilon).transpose()?;
            let g = read_graph(file)?;
            let c = canonical_graph(&g);
            let d = log_discrepancies(&c)?;
            let mut result = json!({
                "f": rats(&d.log_discrepancies),
                "b": rats(&d.codiscrepancies),
                "min_f": d.min_log_discrepancy().map(rat),
                "graph": graph_json(&g),
            });
            if let Some(eps) = eps {
                let reading = match reading {
                    Reading::Discrepancy => ThresholdReading::Discrepancy,
                    Reading::LogDiscrepancy => ThresholdReading::LogDiscrepancy,
                };
                let s = classify_singularity(&c, &eps, reading)?;
                result["class"] = json!({
                    "name": s.class.name(),
                    "terminal": s.terminal,
                    "canonical": s.canonical,
                    "kawamata_log_terminal": s.kawamata_log_terminal,
                    "log_canonical": s.log_canonical,
                    "eps_log_terminal": s.eps_log_terminal,
                    "eps_log_canonical": s.eps_log_canonical,
                });
            }
            Ok(Output::Report(result))
        }
        Command::Star { file, epsilon } => {
            inputs.insert("file".into(), json!(file));
            inputs.insert("epsilon".into(), json!(epsilon));
            let eps = parse_epsilon(epsilon)?;
            let g = read_graph(file)?;
            let c = canonical_graph(&g);
            let cert = check_star(&c, &eps)?;
            Ok(Output::Report(json!({
                "epsilon": rat(&eps),
                "feasible": cert.feasible,
                "witness": cert.witness.as_deref().map(rats),
                "graph": graph_json(&g),
            })))
        }
        Command::Blowup(b) => {
            let g = read_graph(&b.file)?;
            let up = match (&b.vertex, &b.edge) {
                (Some(v), _) => g.blowup_vertex(v, &b.new_id)?,
                (None, Some(e)) => g.blowup_edge(&e[0], &e[1], &b.new_id)?,
                (None, None) => unreachable!("clap requires a target"),
            };
            Ok(Output::Text(serialize_graph(&up)))
        }
        Command::Enumerate { mode, epsilon, max_vertices, seed, max_steps } => {
            inputs.insert("epsilon".into(), json!(epsilon));
            let eps = parse_epsilon(epsilon)?;
            let result = match mode {
                Mode::MinimalElliptic => {
                    inputs.insert("mode".into(), json!("minimal-elliptic"));
                    inputs.insert("max_vertices".into(), json!(max_vertices));
                    enumerate_minimal_elliptic_star(&eps, *max_vertices, config)?
                }
                Mode::LannerClosure => {
                    inputs.insert("mode".into(), json!("lanner-closure"));
                    inputs.insert("max_steps".into(), json!(max_steps));
                    inputs.insert("seed".into(), json!(seed));
                    let g = match seed {
                        Some(path) => read_graph(path)?,
                        None => WeightedGraph::chain(&[1, 1, 1]),
                    };
                    lanner_blowup_search(&g, &eps, *max_steps, config)?
                }
            };
            Ok(Output::Report(enumeration_json(&result)))
        }
        Command::Bounds { case, c1, c2, epsilon, d } => bounds(case, c1, c2, epsilon, *d, inputs).map(Output::Report),
        Command::Verify { suite, file, epsilon, vertex, k_max, d } => {
            verify(*suite, file.as_deref(), epsilon, vertex.as_deref(), *k_max, *d, config, inputs).map(Output::Report)
        }
        Command::Dcc { set, op, value, max_m, max_terms, max_n } => {
            inputs.insert("set".into(), json!(set));
            let s: CoefficientSet = set.parse()?;
            let need_value = || -> CmdResult<Rational> {
                let v = value.as_deref().ok_or_else(|| Failure::Usage("--value is required for this op".into()))?;
                Ok(parse_rational(v)?)
            };
            let result = match op {
                DccOp::MinPositive => {
                    inputs.insert("op".into(), json!("min-positive"));
                    json!({ "min_positive": s.min_positive().as_ref().map(rat) })
                }
                DccOp::Contains => {
                    inputs.insert("op".into(), json!("contains"));
                    inputs.insert("value".into(), json!(value));
                    json!({ "contains": s.contains(&need_value()?) })
                }
                DccOp::Below => {
                    inputs.insert("op".into(), json!("below"));
                    inputs.insert("value".into(), json!(value));
                    json!({ "below": rats(&s.below_threshold(&need_value()?)?) })
                }
                DccOp::Quotient => {
                    inputs.insert("op".into(), json!("quotient"));
                    inputs.insert("max_m".into(), json!(max_m));
                    inputs.insert("max_terms".into(), json!(max_terms));
                    inputs.insert("max_n".into(), json!(max_n));
                    let q = hurwitz_quotient_transform(&s, *max_m, *max_terms, *max_n)?;
                    let members: Vec<Rational> = q.set.finite.iter().cloned().collect();
                    json!({ "values": rats(&members), "count": members.len(), "truncated": q.truncated })
                }
            };
            Ok(Output::Report(result))
        }
    }
}

/// The report payload for an enumeration or closure search.
pub fn enumeration_json(r: &EnumerationResult) -> Value {
    let graphs: Vec<Value> = r.graphs.iter().map(|e| graph_json_ordered(&e.graph, e.code.clone())).collect();
    json!({
        "epsilon": rat(&r.epsilon),
        "seed": r.seed,
        "count": r.stats.count,
        "s1": r.stats.s1,
        "max_weight": r.stats.max_weight,
        "max_degree": r.stats.max_degree,
        "max_vertices": r.stats.max_vertices,
        "level_sizes": r.stats.level_sizes,
        "exhausted": r.exhausted,
        "steps": r.steps,
        "graphs": graphs,
    })
}

fn bounds(
    case: &Option<String>,
    c1: &Option<String>,
    c2: &Option<String>,
    epsilon: &Option<String>,
    d: Option<u32>,
    inputs: &mut Map<String, Value>,
) -> CmdResult<Value> {
    for (k, v) in [("case", case), ("c1", c1), ("c2", c2), ("epsilon", epsilon)] {
        if let Some(v) = v {
            inputs.insert(k.into(), json!(v));
        }
    }
    if let Some(d) = d {
        inputs.insert("d".into(), json!(d));
    }
    let case: Option<BoundCase> = case.as_deref().map(str::parse).transpose()?;
    let mut result = Map::new();
    let mut did_something = false;
    match (c1, c2) {
        (Some(a), Some(b)) => {
            let case = case.ok_or_else(|| Failure::Usage("--c1/--c2 need --case".into()))?;
            let r = nikulin_bound(case, &parse_rational(a)?, &parse_rational(b)?)?;
            result.insert("nikulin".into(), json!({ "case": r.case.name(), "c1": rat(&r.c1), "c2": rat(&r.c2), "bound": rat(&r.bound) }));
            did_something = true;
        }
        (None, None) => {}
        _ => return Err(Failure::Usage("--c1 and --c2 go together".into())),
    }
    match (epsilon, d) {
        (Some(e), Some(d)) => {
            let eps = parse_epsilon(e)?;
            let (a, b) = pair_bound_constants(&eps, d)?;
            result.insert("pair_constants".into(), json!({ "c1": rat(&a), "c2": rat(&b), "d": d }));
            if let (Some(case), None) = (case, c1) {
                let r = composed_bound(case, &eps, d)?;
                result.insert("nikulin".into(), json!({ "case": r.case.name(), "c1": rat(&r.c1), "c2": rat(&r.c2), "bound": rat(&r.bound) }));
            }
            did_something = true;
        }
        (None, None) => {}
        _ => return Err(Failure::Usage("--epsilon and --d go together".into())),
    }
    if !did_something {
        return Err(Failure::Usage("give --case with --c1 --c2, or --epsilon with --d".into()));
    }
    Ok(Value::Object(result))
}

fn tower_json(steps: &[TowerStep]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|s| {
                json!({
                    "k": s.k,
                    "log_terminal": s.log_terminal,
                    "witness": s.witness,
                    "witness_min": s.witness_min.as_ref().map(rat),
                })
            })
            .collect(),
    )
}

fn pair_json(code: &str, a: &PairAudit) -> Value {
    let rows: Vec<Value> = a
        .rows
        .iter()
        .map(|r| json!({ "rho": r.rho, "pairs": r.pairs, "bound": rat(&r.bound) }))
        .collect();
    json!({ "code": code, "pass": a.pass, "rows": rows })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: Suite,
    file: Option<&str>,
    epsilon: &str,
    vertex: Option<&str>,
    k_max: usize,
    d: u32,
    config: &SearchConfig,
    inputs: &mut Map<String, Value>,
) -> CmdResult<Value> {
    if let Some(f) = file {
        inputs.insert("file".into(), json!(f));
    }
    let graph = file.map(read_graph).transpose()?;
    match suite {
        Suite::E9 => {
            inputs.insert("suite".into(), json!("e9"));
            match graph {
                None => {
                    let r = e9_lemma_check();
                    Ok(json!({
                        "pass": r.holds,
                        "tail_holds": r.tail_holds,
                        "last_log_terminal": r.last_log_terminal,
                        "steps": tower_json(&r.steps),
                    }))
                }
                Some(g) => {
                    inputs.insert("k_max".into(), json!(k_max));
                    let steps = e9_tower_check(&g, k_max)?;
                    let last = steps.iter().filter(|s| s.log_terminal).map(|s| s.k).max();
                    Ok(json!({
                        "pass": null,
                        "last_log_terminal": last,
                        "steps": tower_json(&steps),
                    }))
                }
            }
        }
        Suite::StarClosure => {
            inputs.insert("suite".into(), json!("star-closure"));
            inputs.insert("epsilon".into(), json!(epsilon));
            let eps = parse_epsilon(epsilon)?;
            let graphs = match graph {
                Some(g) => {
                    let cf = canonical_form(&g);
                    if !check_star(&g, &eps)?.feasible {
                        return Err(Failure::Lib(Error::Precondition(format!(
                            "graph does not satisfy *({})",
                            format_rational(&eps)
                        ))));
                    }
                    vec![diagramkit::diagram::EnumeratedGraph { graph: g.permuted(&cf.order), code: cf.code }]
                }
                None => star_corpus(&eps, config)?,
            };
            let audit = closure_audit(&graphs, &eps, CLOSURE_SAMPLES)?;
            let violations: Vec<Value> =
                audit.violations.iter().map(|(code, what)| json!({ "code": code, "case": what })).collect();
            Ok(json!({
                "pass": audit.pass(),
                "graphs": audit.graphs,
                "subgraph_cases": audit.subgraph_cases,
                "blowdown_cases": audit.blowdown_cases,
                "violations": violations,
            }))
        }
        Suite::PairBounds => {
            inputs.insert("suite".into(), json!("pair-bounds"));
            inputs.insert("epsilon".into(), json!(epsilon));
            inputs.insert("d".into(), json!(d));
            let eps = parse_epsilon(epsilon)?;
            let audits: Vec<(String, PairAudit)> = match graph {
                Some(g) => vec![(canonical_form(&g).code, pair_bound_audit(&g, &eps, d)?)],
                None => {
                    let mut out = Vec::new();
                    for e in star_corpus(&eps, config)? {
                        if classify_graph(&e.graph).kind == GraphKind::Elliptic {
                            out.push((e.code.clone(), pair_bound_audit(&e.graph, &eps, d)?));
                        }
                    }
                    out
                }
            };
            let failing: Vec<Value> = audits.iter().filter(|(_, a)| !a.pass).map(|(c, a)| pair_json(c, a)).collect();
            Ok(json!({
                "pass": failing.is_empty(),
                "graphs": audits.len(),
                "failing": failing,
            }))
        }
        Suite::LannerHorizon => {
            inputs.insert("suite".into(), json!("lanner-horizon"));
            inputs.insert("k_max".into(), json!(k_max));
            let g = graph.unwrap_or_else(|| WeightedGraph::chain(&[1, 1, 1]));
            let v = match vertex {
                Some(v) => v.to_string(),
                None => g.vertices().first().map(|v| v.id.clone()).ok_or_else(|| Failure::Usage("empty graph".into()))?,
            };
            inputs.insert("vertex".into(), json!(v));
            Ok(match vertex_blowup_horizon(&g, &v, k_max)? {
                Horizon::Found { k, persistent } => {
                    json!({ "status": "found", "k": k, "persistent": persistent, "pass": persistent })
                }
                Horizon::NotFound { k_max } => json!({ "status": "not-found", "k_max": k_max, "pass": false }),
            })
        }
    }
}
