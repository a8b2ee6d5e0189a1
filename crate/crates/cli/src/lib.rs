//! The `seatplan` command-line front end.
//!
//! Every command prints one JSON report on stdout (dynamics prints JSON
//! lines) and diagnostics on stderr. Exit codes: 0 success or found, 1 none
//! exists or property violated, 2 budget exhausted, 64 usage error, 65
//! unreadable or malformed input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use seatplan::dynamics::{self, DynamicsConfig, PairSelectionPolicy, Potential};
use seatplan::eval;
use seatplan::exact::{self, ExactConfig, ExactStatus, SearchBudget};
use seatplan::gen::{self, GraphFamily, RandomParams};
use seatplan::io::{self, rational_to_json, Document};
use seatplan::model::{classify_preferences, classify_seat_graph, Arrangement, PreferenceClass};
use seatplan::{construct, Error, Rational, UtilityType};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "seatplan", version, about = "Seat-arrangement solvers and verifiers")]
struct Cli {
    /// Emit JSON. This is the only output mode and is always on.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an instance from a reduction source or at random.
    Generate(GenerateArgs),
    /// Run a polynomial construction.
    Solve(SolveArgs),
    /// Decide or optimise exactly by search.
    Exact(ExactArgs),
    /// Run swap dynamics, one JSON line per step.
    Dynamics(DynamicsArgs),
    /// Verify a property of an arrangement.
    Check(CheckArgs),
    /// Print graph and preference classes.
    Info(InfoArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Reduction {
    PitB,
    PitWBinary,
    PitWStrict,
    #[value(name = "binpack-1d")]
    Binpack1d,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphArg {
    Matching,
    Path,
    Cycle,
    PathGraph,
    CycleGraph,
    StarMix,
    Cluster,
    Arbitrary,
    Empty,
}

impl From<GraphArg> for GraphFamily {
    fn from(g: GraphArg) -> Self {
        match g {
            GraphArg::Matching => GraphFamily::Matching,
            GraphArg::Path => GraphFamily::Path,
            GraphArg::Cycle => GraphFamily::Cycle,
            GraphArg::PathGraph => GraphFamily::PathGraph,
            GraphArg::CycleGraph => GraphFamily::CycleGraph,
            GraphArg::StarMix => GraphFamily::StarMix,
            GraphArg::Cluster => GraphFamily::Cluster,
            GraphArg::Arbitrary => GraphFamily::Arbitrary,
            GraphArg::Empty => GraphFamily::Empty,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PrefArg {
    Nonnegative,
    Positive,
    Binary,
    Symmetric,
    Strict,
    OneDimensional,
    UniquePositions,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    reduction: Reduction,
    /// PIT or bin packing source file.
    #[arg(long)]
    source: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Intra-item spacing step for binpack-1d, e.g. `1/100`.
    #[arg(long, value_parser = parse_rational)]
    eps: Option<Rational>,
    /// Agent count for random instances.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "arbitrary")]
    graph: GraphArg,
    #[arg(long, value_parser = parse_utility, default_value = "S")]
    utility: UtilityType,
    /// Required preference classes for random instances.
    #[arg(long, value_enum, value_delimiter = ',')]
    prefs: Vec<PrefArg>,
    /// Inclusive value range `lo:hi` for random instances.
    #[arg(long, value_parser = parse_range, default_value = "0:9")]
    range: (i64, i64),
    /// Write the instance here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Solve the source by brute force and write the forward arrangement here.
    #[arg(long)]
    forward_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Algorithm1,
    Consecutive,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    /// Write the arrangement here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Problem {
    Mwa,
    Mua,
    Efa,
    Sta,
    Threshold,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    problem: Problem,
    /// Required for `threshold`.
    #[arg(long, value_parser = parse_rational)]
    threshold: Option<Rational>,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    time_limit_ms: Option<u64>,
    /// Search one arrangement per symmetry orbit.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    dedup: bool,
    /// Write the witness here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    First,
    Best,
    Random,
}

#[derive(Args, Debug)]
struct DynamicsArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Starting arrangement; identity when absent.
    #[arg(long)]
    start: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "first")]
    policy: PolicyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults to n^4.
    #[arg(long)]
    max_steps: Option<u64>,
    #[arg(long)]
    detect_cycles: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    EnvyFree,
    ExchangeStable,
    MinUtility,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    arrangement: PathBuf,
    #[arg(long, value_enum)]
    property: Property,
    /// Required for `min-utility`.
    #[arg(long, value_parser = parse_rational)]
    threshold: Option<Rational>,
}

#[derive(Args, Debug)]
struct InfoArgs {
    #[arg(long)]
    instance: PathBuf,
}

/// Accepts `a`, `a/b` and decimal notation.
fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{frac}", int.trim_start_matches('-'));
        let num = Rational::from_str(&digits).map_err(|e| e.to_string())?;
        let scale = Rational::from_str(&format!("1{}", "0".repeat(frac.len()))).map_err(|e| e.to_string())?;
        let v = num / scale;
        return Ok(if neg { -v } else { v });
    }
    let v = Rational::from_str(s).map_err(|e| format!("{s:?} is not a rational: {e}"))?;
    Ok(v)
}

fn parse_utility(s: &str) -> Result<UtilityType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<i64>().map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

/// Why a command stopped early.
enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<Document, Failure> {
    let text = read_text(path)?;
    io::read_document(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn load_arrangement(path: &Path, n: usize) -> Result<Arrangement, Failure> {
    let text = read_text(path)?;
    let arr = io::read_arrangement(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    if arr.len() != n {
        return Err(Failure::Data(format!(
            "{}: arrangement has {} agents, instance has {n}",
            path.display(),
            arr.len()
        )));
    }
    Ok(arr)
}

/// Hex SHA-256 of the canonical JSON.
pub fn digest(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn arrangement_json(arr: &Arrangement) -> Value {
    json!({ "seat_of": arr.seats() })
}

fn opt_rational(x: &Option<Rational>) -> Value {
    x.as_ref().map(rational_to_json).unwrap_or(Value::Null)
}

fn potential_json(p: &Option<Potential<Rational>>) -> Value {
    match p {
        None => Value::Null,
        Some(Potential::Welfare(w)) => json!({ "kind": "welfare", "value": rational_to_json(w) }),
        Some(Potential::Unguaranteed(w)) => json!({ "kind": "unguaranteed_welfare", "value": rational_to_json(w) }),
        Some(Potential::Scores(sv)) => json!({
            "kind": "scores",
            "levels": sv.levels().iter().map(rational_to_json).collect::<Vec<_>>(),
            "counts": sv.counts(),
        }),
    }
}

struct Reporter<'a> {
    out: &'a mut dyn Write,
    argv: Vec<String>,
    started: Instant,
}

impl Reporter<'_> {
    fn emit(&mut self, command: &str, doc: Option<&Document>, result: Value) -> Result<(), Failure> {
        let report = json!({
            "command": command,
            "argv": self.argv,
            "instance_digest": doc.map(|d| digest(&io::write_document(d))),
            "result": result,
            "elapsed_ms": self.started.elapsed().as_millis() as u64,
        });
        self.line(&report)
    }

    fn line(&mut self, v: &Value) -> Result<(), Failure> {
        writeln!(self.out, "{v}").map_err(|e| Failure::Data(format!("stdout: {e}")))
    }
}

fn status_name(s: ExactStatus) -> &'static str {
    match s {
        ExactStatus::Found => "found",
        ExactStatus::NoneExists => "none_exists",
        ExactStatus::Inconclusive => "inconclusive",
    }
}

fn prefs_from(list: &[PrefArg]) -> PreferenceClass {
    let has = |p| list.contains(&p);
    PreferenceClass {
        nonnegative: has(PrefArg::Nonnegative),
        positive: has(PrefArg::Positive),
        binary: has(PrefArg::Binary),
        symmetric: has(PrefArg::Symmetric),
        strict: has(PrefArg::Strict),
        one_dimensional: has(PrefArg::OneDimensional),
        unique_positions: has(PrefArg::UniquePositions),
    }
}

fn cmd_generate(a: &GenerateArgs, rep: &mut Reporter) -> CmdResult {
    let need_source = || {
        a.source
            .as_deref()
            .ok_or_else(|| Failure::Usage("--source is required for this reduction".into()))
    };
    if matches!(a.reduction, Reduction::Random) {
        if a.forward_out.is_some() {
            return Err(Failure::Usage("--forward-out needs a reduction source".into()));
        }
        if a.source.is_some() {
            return Err(Failure::Usage("random instances take no --source".into()));
        }
    }
    let (doc, forward) = match a.reduction {
        Reduction::Random => {
            let n = a.n.ok_or_else(|| Failure::Usage("--n is required for random instances".into()))?;
            let params = RandomParams {
                n,
                graph: a.graph.into(),
                prefs: prefs_from(&a.prefs),
                utility: a.utility,
                value_range: a.range,
                seed: a.seed,
            };
            (Document::Plain(gen::gen_random(&params)?), None)
        }
        Reduction::Binpack1d => {
            let bp = io::read_binpacking(&read_text(need_source()?)?)?;
            let gi = gen::gen_binpacking_to_1d_b(&bp, a.eps.clone())?;
            let forward = match (&a.forward_out, gen::solve_binpacking_bruteforce(&bp)?) {
                (Some(_), Some(pack)) => Some(gen::arrangement_from_packing(&gi, &pack)?),
                _ => None,
            };
            (Document::Generated(gi), forward)
        }
        r => {
            if a.eps.is_some() {
                return Err(Failure::Usage("--eps only applies to binpack-1d".into()));
            }
            let pit = io::read_pit(&read_text(need_source()?)?)?;
            let gi = match r {
                Reduction::PitB => gen::gen_pit_to_efa_b(&pit)?,
                Reduction::PitWBinary => gen::gen_pit_to_efa_w_binary(&pit)?,
                _ => gen::gen_pit_to_efa_w_strict(&pit)?,
            };
            let forward = match (&a.forward_out, gen::solve_pit_bruteforce(&pit)?) {
                (Some(_), Some(part)) => Some(gen::arrangement_from_triangle_partition(&gi, &part)?),
                _ => None,
            };
            (Document::Generated(gi), forward)
        }
    };
    let text = io::write_document(&doc);
    if let (Some(path), Some(arr)) = (&a.forward_out, &forward) {
        write_text(path, &io::write_arrangement(arr))?;
    }
    match &a.out {
        None => {
            write!(rep.out, "{text}").map_err(|e| Failure::Data(format!("stdout: {e}")))?;
        }
        Some(path) => {
            write_text(path, &text)?;
            let inst = doc.instance();
            rep.emit(
                "generate",
                Some(&doc),
                json!({
                    "agents": inst.agent_count(),
                    "utility": inst.utility().to_string(),
                    "forward_arrangement": forward.as_ref().map(arrangement_json),
                }),
            )?;
        }
    }
    // a missing forward arrangement means the source is a no-instance
    Ok(if a.forward_out.is_some() && forward.is_none() { EXIT_NEGATIVE } else { EXIT_OK })
}

fn cmd_solve(a: &SolveArgs, rep: &mut Reporter) -> CmdResult {
    let doc = load_document(&a.instance)?;
    let inst = doc.instance();
    let (name, arr) = match a.method {
        Method::Algorithm1 => ("algorithm1", construct::algorithm1(inst)?),
        Method::Consecutive => ("consecutive", construct::oned_consecutive(inst)?),
    };
    if let Some(path) = &a.out {
        write_text(path, &io::write_arrangement(&arr))?;
    }
    rep.emit(
        "solve",
        Some(&doc),
        json!({
            "method": name,
            "arrangement": arrangement_json(&arr),
            "exchange_stable": eval::is_exchange_stable(inst, &arr),
            "welfare": rational_to_json(&eval::welfare(inst, &arr)),
        }),
    )?;
    Ok(EXIT_OK)
}

fn cmd_exact(a: &ExactArgs, rep: &mut Reporter) -> CmdResult {
    let threshold = match (a.problem, &a.threshold) {
        (Problem::Threshold, None) => return Err(Failure::Usage("--threshold is required".into())),
        (Problem::Threshold, Some(t)) => Some(t.clone()),
        (_, Some(_)) => return Err(Failure::Usage("--threshold only applies to the threshold problem".into())),
        _ => None,
    };
    let doc = load_document(&a.instance)?;
    let inst = doc.instance();
    let cfg = ExactConfig {
        budget: SearchBudget {
            max_nodes: a.max_nodes,
            time_limit: a.time_limit_ms.map(Duration::from_millis),
        },
        dedup: a.dedup,
    };
    let (name, res) = match a.problem {
        Problem::Mwa => ("mwa", exact::solve_mwa_exact(inst, &cfg)?),
        Problem::Mua => ("mua", exact::solve_mua_exact(inst, &cfg)?),
        Problem::Efa => ("efa", exact::find_envy_free_exact(inst, &cfg)?),
        Problem::Sta => ("sta", exact::find_exchange_stable_exact(inst, &cfg)?),
        Problem::Threshold => (
            "threshold",
            exact::find_min_utility_at_least(inst, threshold.as_ref().expect("checked above"), &cfg)?,
        ),
    };
    if let (Some(path), Some(w)) = (&a.out, &res.witness) {
        write_text(path, &io::write_arrangement(w))?;
    }
    rep.emit(
        "exact",
        Some(&doc),
        json!({
            "problem": name,
            "status": status_name(res.status),
            "witness": res.witness.as_ref().map(arrangement_json),
            "objective": opt_rational(&res.objective),
            "nodes_explored": res.nodes_explored,
        }),
    )?;
    Ok(match res.status {
        ExactStatus::Found => EXIT_OK,
        ExactStatus::NoneExists => EXIT_NEGATIVE,
        ExactStatus::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_dynamics(a: &DynamicsArgs, rep: &mut Reporter) -> CmdResult {
    let doc = load_document(&a.instance)?;
    let inst = doc.instance();
    let start = match &a.start {
        Some(p) => load_arrangement(p, inst.agent_count())?,
        None => Arrangement::identity(inst.agent_count()),
    };
    let policy = match a.policy {
        PolicyArg::First => PairSelectionPolicy::FirstByIndex,
        PolicyArg::Best => PairSelectionPolicy::BestImprovement,
        PolicyArg::Random => PairSelectionPolicy::Random { seed: a.seed },
    };
    let cfg = DynamicsConfig {
        policy,
        max_steps: a.max_steps,
        detect_cycles: a.detect_cycles,
    };
    let trace = dynamics::run_swap_dynamics_with(inst, &start, &cfg)?;
    rep.line(&json!({
        "event": "start",
        "instance_digest": digest(&io::write_document(&doc)),
        "initial": arrangement_json(&trace.initial),
        "potential": potential_json(&trace.initial_potential),
    }))?;
    for (i, s) in trace.steps.iter().enumerate() {
        rep.line(&json!({
            "event": "step",
            "index": i + 1,
            "pair": [s.pair.p.index(), s.pair.q.index()],
            "potential": potential_json(&s.potential),
        }))?;
    }
    rep.line(&json!({
        "event": "end",
        "final_arrangement": arrangement_json(&trace.final_arrangement),
        "terminated": trace.terminated,
        "step_count": trace.step_count,
        "guaranteed": trace.guaranteed,
        "cycle_detected": trace.cycle_detected,
    }))?;
    Ok(if trace.terminated { EXIT_OK } else { EXIT_INCONCLUSIVE })
}

fn cmd_check(a: &CheckArgs, rep: &mut Reporter) -> CmdResult {
    let threshold = match (a.property, &a.threshold) {
        (Property::MinUtility, None) => return Err(Failure::Usage("--threshold is required".into())),
        (Property::MinUtility, Some(t)) => Some(t.clone()),
        (_, Some(_)) => return Err(Failure::Usage("--threshold only applies to min-utility".into())),
        _ => None,
    };
    let doc = load_document(&a.instance)?;
    let inst = doc.instance();
    let arr = load_arrangement(&a.arrangement, inst.agent_count())?;
    let utilities: Vec<Value> = eval::utilities(inst, &arr).iter().map(rational_to_json).collect();
    let (name, holds, detail) = match a.property {
        Property::EnvyFree => {
            let envy = eval::find_envy(inst, &arr);
            ("envy-free", envy.is_none(), json!({ "envy": envy.map(|(p, q)| [p.index(), q.index()]) }))
        }
        Property::ExchangeStable => {
            let pairs = eval::find_blocking_pairs(inst, &arr, eval::SearchMode::First);
            let first = pairs.first().map(|b| [b.p.index(), b.q.index()]);
            ("exchange-stable", first.is_none(), json!({ "blocking_pair": first }))
        }
        Property::MinUtility => {
            let m = eval::min_utility(inst, &arr);
            let t = threshold.expect("checked above");
            ("min-utility", m >= t, json!({ "min_utility": rational_to_json(&m) }))
        }
    };
    rep.emit(
        "check",
        Some(&doc),
        json!({ "property": name, "holds": holds, "detail": detail, "utilities": utilities }),
    )?;
    Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_info(a: &InfoArgs, rep: &mut Reporter) -> CmdResult {
    let doc = load_document(&a.instance)?;
    let inst = doc.instance();
    let family = match &doc {
        Document::Generated(g) => Some(g.family.name()),
        Document::Plain(_) => None,
    };
    rep.emit(
        "info",
        Some(&doc),
        json!({
            "agents": inst.agent_count(),
            "utility": inst.utility().to_string(),
            "edges": inst.seats().edge_count(),
            "family": family,
            "preferences": classify_preferences(inst),
            "graph": classify_seat_graph(inst.seats()),
        }),
    )?;
    Ok(EXIT_OK)
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let mut rep = Reporter {
        out,
        argv: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        started: Instant::now(),
    };
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a, &mut rep),
        Command::Solve(a) => cmd_solve(a, &mut rep),
        Command::Exact(a) => cmd_exact(a, &mut rep),
        Command::Dynamics(a) => cmd_dynamics(a, &mut rep),
        Command::Check(a) => cmd_check(a, &mut rep),
        Command::Info(a) => cmd_info(a, &mut rep),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DATA
        }
    }
}

/// Runs the CLI on the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
