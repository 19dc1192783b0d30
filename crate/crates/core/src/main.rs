use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use graph_stability::codec::{graph6_string, read_graphs, Format};
use graph_stability::decomposition::union_formula;
use graph_stability::harness::{
    generate_corpus, run_campaign, run_instance, CampaignConfig, CampaignInfo, CampaignReport, CorpusMode, CorpusSpec,
};
use graph_stability::stability::{
    covering_number, edge_stability, threshold_edge_stability, threshold_vertex_stability, vertex_stability,
    DEFAULT_MAX_SUBSET_UNIVERSE,
};
use graph_stability::{Error, ExtValue, Graph, InvariantId, SearchPolicy, Side, SubsetRange, TheoremTag};

const EXIT_USAGE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "graph-stability", version, about = "Vertex and edge stability numbers of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stability number of each input graph.
    Compute(ComputeArgs),
    /// Covering number of each input graph.
    BetaPrime(BetaPrimeArgs),
    /// Bounds and relations for each input graph.
    Bounds(BoundsArgs),
    /// A union formula evaluated on the components of each input graph.
    Decompose(DecomposeArgs),
    /// Checks formulas and bounds over a generated corpus.
    Verify(VerifyArgs),
    /// Writes a generated corpus as graph6 lines.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "graph6", value_parser = parse_with::<Format>)]
    format: Format,
}

#[derive(Args)]
struct PolicyArgs {
    /// Which vertex subsets may be deleted.
    #[arg(long, default_value = "proper", value_parser = parse_with::<SubsetRange>)]
    policy: SubsetRange,
    /// Largest subset-enumeration size, as an integer or `2^K`.
    #[arg(long, value_parser = parse_universe)]
    max_universe: Option<u64>,
}

impl PolicyArgs {
    fn policy(&self) -> SearchPolicy {
        SearchPolicy::default()
            .with_range(self.policy)
            .with_cap(self.max_universe.unwrap_or(DEFAULT_MAX_SUBSET_UNIVERSE))
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = parse_with::<InvariantId>)]
    invariant: InvariantId,
    #[arg(long, value_parser = parse_with::<Side>)]
    side: Side,
    /// Count deletions that drive the value strictly below this threshold.
    #[arg(long, value_parser = parse_with::<ExtValue>)]
    threshold: Option<ExtValue>,
    #[command(flatten)]
    policy: PolicyArgs,
    /// Also print a minimum deletion set.
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BetaPrimeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = parse_with::<InvariantId>)]
    invariant: InvariantId,
    #[command(flatten)]
    policy: PolicyArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = parse_with::<InvariantId>)]
    invariant: InvariantId,
    /// Comma-separated tags, or `all`.
    #[arg(long, value_parser = parse_tags)]
    theorems: TagList,
    #[command(flatten)]
    policy: PolicyArgs,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = parse_with::<InvariantId>)]
    invariant: InvariantId,
    #[arg(long, value_parser = parse_with::<TheoremTag>)]
    theorem: TheoremTag,
    #[command(flatten)]
    policy: PolicyArgs,
}

#[derive(Args)]
struct CorpusSpecArgs {
    #[arg(long)]
    n_max: usize,
    /// Smallest order in exhaustive and random mode; defaults to `--n-max`.
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long, default_value = "exhaustive", value_parser = parse_with::<CorpusMode>)]
    mode: CorpusMode,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl CorpusSpecArgs {
    fn spec(&self) -> CorpusSpec {
        CorpusSpec { mode: self.mode, n_max: self.n_max, n_min: self.n_min, count: self.count, seed: self.seed }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    corpus: CorpusSpecArgs,
    /// Comma-separated invariant ids, or `all`.
    #[arg(long, value_parser = parse_invariants)]
    invariants: InvariantList,
    /// Comma-separated tags, or `all`.
    #[arg(long, value_parser = parse_tags)]
    theorems: TagList,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Largest family size for the family lower bound.
    #[arg(long, default_value_t = 3)]
    family_size: usize,
    #[command(flatten)]
    policy: PolicyArgs,
    /// Record wall time in the report (makes reports differ between runs).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct CorpusArgs {
    #[command(flatten)]
    corpus: CorpusSpecArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone)]
struct TagList(Vec<TheoremTag>);

#[derive(Clone)]
struct InvariantList(Vec<InvariantId>);

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_tags(s: &str) -> Result<TagList, String> {
    TheoremTag::parse_list(s).map(TagList).map_err(|e| e.to_string())
}

fn parse_invariants(s: &str) -> Result<InvariantList, String> {
    if s.trim() == "all" {
        return Ok(InvariantList(InvariantId::ALL.to_vec()));
    }
    s.split(',').map(|t| parse_with(t.trim())).collect::<Result<_, _>>().map(InvariantList)
}

fn parse_universe(s: &str) -> Result<u64, String> {
    let value = match s.strip_prefix("2^") {
        Some(k) => {
            let k: u32 = k.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
            1u64.checked_shl(k).filter(|_| k < 64).ok_or_else(|| format!("`{s}` does not fit in 64 bits"))?
        }
        None => s.parse().map_err(|_| format!("expected an integer or 2^K, got `{s}`"))?,
    };
    if value == 0 {
        return Err("the cap must be positive".into());
    }
    Ok(value)
}

/// A failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE };
        Fail(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn load(args: &InputArgs) -> Result<Vec<Graph>, Fail> {
    read_graphs(&args.input, args.format).map_err(|e| usage(e.to_string()))
}

fn json_line(v: &serde_json::Value) {
    println!("{}", serde_json::to_string(v).expect("json output"));
}

fn compute(a: &ComputeArgs) -> Result<(), Fail> {
    let f = a.invariant.descriptor();
    let policy = a.policy.policy();
    for g in load(&a.input)? {
        let (value, witness) = match (a.side, &a.threshold) {
            (Side::Vertex, None) => {
                let r = vertex_stability(&g, f, &policy)?;
                (r.value, json!(r.witness))
            }
            (Side::Edge, None) => {
                let r = edge_stability(&g, f, &policy)?;
                (r.value, json!(r.witness))
            }
            (Side::Vertex, Some(t)) => {
                let r = threshold_vertex_stability(&g, f, t, &policy)?;
                (r.value, json!(r.witness))
            }
            (Side::Edge, Some(t)) => {
                let r = threshold_edge_stability(&g, f, t, &policy)?;
                (r.value, json!(r.witness))
            }
        };
        if a.json {
            let mut out = json!({
                "graph6": graph6_string(&g),
                "invariant": a.invariant,
                "side": a.side,
                "policy": a.policy.policy,
                "value": value,
            });
            if let Some(t) = &a.threshold {
                out["threshold"] = json!(t);
            }
            if a.witness {
                out["witness"] = witness;
            }
            json_line(&out);
        } else if a.witness {
            println!("{value} {witness}");
        } else {
            println!("{value}");
        }
    }
    Ok(())
}

fn beta_prime(a: &BetaPrimeArgs) -> Result<(), Fail> {
    let policy = a.policy.policy();
    for g in load(&a.input)? {
        let c = covering_number(&g, a.invariant.descriptor(), &policy)?;
        if a.json {
            json_line(&json!({ "graph6": graph6_string(&g), "invariant": a.invariant, "beta_prime": c }));
        } else {
            println!("{} {}", c.size, json!(c.cover));
        }
    }
    Ok(())
}

fn bounds(a: &BoundsArgs) -> Result<(), Fail> {
    let config = CampaignConfig { policy: a.policy.policy(), ..CampaignConfig::new(vec![a.invariant], a.theorems.0.clone()) };
    for g in load(&a.input)? {
        for &tag in &a.theorems.0 {
            json_line(&json!(run_instance(&g, a.invariant, tag, &config)?));
        }
    }
    Ok(())
}

fn decompose(a: &DecomposeArgs) -> Result<(), Fail> {
    if !a.theorem.is_union_formula() {
        return Err(usage(format!("{} is not a union formula", a.theorem)));
    }
    let f = a.invariant.descriptor();
    let policy = a.policy.policy();
    for g in load(&a.input)? {
        let r = union_formula(a.theorem, &g.components(), f, &policy).expect("union formula tag")?;
        let oracle = match a.theorem.side() {
            Side::Vertex => vertex_stability(&g, f, &policy)?.value,
            Side::Edge => edge_stability(&g, f, &policy)?.value,
        };
        json_line(&json!({ "graph6": graph6_string(&g), "invariant": a.invariant, "result": r, "oracle": oracle }));
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> Result<(), Fail> {
    let start = Instant::now();
    let spec = a.corpus.spec();
    let corpus = generate_corpus(&spec)?;
    let config = CampaignConfig {
        invariants: a.invariants.0.clone(),
        tags: a.theorems.0.clone(),
        policy: a.policy.policy(),
        jobs: a.jobs,
        family_size: a.family_size,
    };
    let reports = run_campaign(&corpus.graphs, &config)?;
    let info = CampaignInfo {
        corpus: spec,
        graphs: corpus.graphs.len(),
        invariants: config.invariants.clone(),
        theorems: config.tags.clone(),
        policy: config.policy,
        family_size: config.family_size,
    };
    let mut report = CampaignReport::new(info, reports);
    let elapsed = start.elapsed().as_millis() as u64;
    if a.timing {
        report.summary.wall_time_ms = Some(elapsed);
    }
    std::fs::write(&a.out, report.to_json()).map_err(|e| usage(format!("cannot write {}: {e}", a.out.display())))?;

    for (tag, c) in &report.summary.per_tag {
        eprintln!(
            "{tag}: {} confirmed, {} violated, {} not applicable, {} budget skipped",
            c.confirmed, c.violated, c.not_applicable, c.budget_skipped
        );
    }
    eprintln!("{} instances in {elapsed} ms", report.summary.instances);
    match report.summary.violations() {
        0 => Ok(()),
        n => Err(Fail(EXIT_VIOLATION, format!("{n} violation(s); see {}", a.out.display()))),
    }
}

fn corpus(a: &CorpusArgs) -> Result<(), Fail> {
    let corpus = generate_corpus(&a.corpus.spec())?;
    let text: String = corpus.graphs.iter().map(|g| graph6_string(g) + "\n").collect();
    std::fs::write(&a.out, text).map_err(|e| usage(format!("cannot write {}: {e}", a.out.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::BetaPrime(a) => beta_prime(a),
        Command::Bounds(a) => bounds(a),
        Command::Decompose(a) => decompose(a),
        Command::Verify(a) => verify(a),
        Command::Corpus(a) => corpus(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
