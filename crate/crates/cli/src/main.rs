//! `zombies`: generate graphs, solve and simulate Zombies and Survivors games,
//! and run the reproduction checks.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use zombies::analytic::{
    asymptotic_band, cycle_escape_arc, cycle_sk_bounds, cycle_sk_combinatorial, cycle_zombie_table,
    hypercube_sk, leafy_cycle_stats, to_f64, zombie_number_cycle,
};
use zombies::copnum::{cop_number, known_cop_number};
use zombies::engine::ZombieLaw;
use zombies::exact::{self, capture_value_table, sk_exact, SkMethod, SkResult, SolveOptions};
use zombies::graph::{generate, validate, GraphJson};
use zombies::montecarlo::{estimate_sk, estimates_csv, EstimateOptions};
use zombies::strategies::{by_name, OptimalTable, SurvivorStrategy};
use zombies::verification::{self, CriterionReport, CRITERIA};
use zombies::{Error, Family, Graph};

mod config;
mod manifest;

use config::Config;
use manifest::{digest, Document, RunManifest};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "zombies",
    version,
    about = "Zombies and Survivors pursuit games on graphs"
)]
struct Cli {
    /// Master seed for every random draw.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads, 0 for one per core. Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format of the result document.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML file with defaults for any flag; flags on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
struct GraphSource {
    /// Graph JSON written by `gen`.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    /// Family name and its integer parameters, e.g. `--family torus 8`.
    #[arg(long, num_args = 1.., value_name = "NAME PARAMS")]
    family: Option<Vec<String>>,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Generate a graph and print its structural report.
    Gen {
        /// cycle, path, hypercube, grid, torus, leafy_cycle, projective or random_tree.
        family: String,
        params: Vec<u64>,
    },
    /// Exact survival probability s_k against k zombies.
    Solve {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: usize,
        /// Value iteration stops once a sweep changes no value by more.
        #[arg(long)]
        tol: Option<f64>,
        /// Largest state space the solver may allocate.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Zombie number z and the cost Z = z / c.
    ZombieNumber {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Cop number c by solving the cop game.
    CopNumber {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Monte Carlo estimate of a strategy's survival probability.
    Simulate {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: usize,
        /// greedy, parity, incidence, torus-boxed or optimal-table.
        #[arg(long)]
        strategy: Option<String>,
        #[arg(long)]
        samples: Option<u64>,
        /// Rounds per game; defaults to 4 n diam.
        #[arg(long)]
        cutoff: Option<u64>,
        /// Count games that reach the cutoff as losses.
        #[arg(long)]
        censored_as_loss: bool,
        #[arg(long)]
        confidence: Option<f64>,
    },
    /// Closed forms and bounds known for a family.
    Formulas {
        family: String,
        params: Vec<u64>,
        #[arg(long)]
        k: Option<usize>,
        /// Width multiplier of the asymptotic band.
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Run the reproduction checks, or re-run a saved result and compare digests.
    Verify {
        /// Criterion ids or group names (cycles, hypercubes, grids, projective,
        /// sandwich, montecarlo, torus, leafy, determinism).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// A result document to reproduce.
        #[arg(long, conflicts_with = "only")]
        manifest: Option<PathBuf>,
        /// Let zombies stand still in simulated rows. Checks the checks.
        #[arg(long, hide = true)]
        lazy_zombies: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gen { .. } => "gen",
            Command::Solve { .. } => "solve",
            Command::ZombieNumber { .. } => "zombie-number",
            Command::CopNumber { .. } => "cop-number",
            Command::Simulate { .. } => "simulate",
            Command::Formulas { .. } => "formulas",
            Command::Verify { .. } => "verify",
        }
    }

    /// Fills unset options from the config file, then from defaults.
    fn resolve(mut self, cfg: &Config) -> Command {
        match &mut self {
            Command::Solve { tol, budget, .. } => {
                tol.get_or_insert(cfg.tol.unwrap_or(exact::DEFAULT_TOL));
                budget.get_or_insert(exact::DEFAULT_STATE_BUDGET as u64);
            }
            Command::ZombieNumber { k_max, tol, .. } => {
                k_max.get_or_insert(cfg.k_max.unwrap_or(8));
                tol.get_or_insert(cfg.tol.unwrap_or(exact::DEFAULT_TOL));
            }
            Command::CopNumber { k_max, .. } => {
                k_max.get_or_insert(cfg.k_max.unwrap_or(6));
            }
            Command::Simulate {
                strategy,
                samples,
                cutoff,
                confidence,
                ..
            } => {
                if strategy.is_none() {
                    *strategy = Some(cfg.strategy.clone().unwrap_or_else(|| "greedy".into()));
                }
                samples.get_or_insert(cfg.samples.unwrap_or(10_000));
                if cutoff.is_none() {
                    *cutoff = cfg.cutoff;
                }
                confidence.get_or_insert(cfg.confidence.unwrap_or(0.99));
            }
            Command::Formulas { omega, .. } => {
                omega.get_or_insert(1.0);
            }
            Command::Gen { .. } | Command::Verify { .. } => {}
        }
        self
    }
}

/// Why a run did not succeed, mapped onto the exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::ThresholdNotReached { .. } => {
                Failure::Budget(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

/// A finished command: the machine-readable result and how to present it.
struct Outcome {
    result: Value,
    graph_hash: Option<String>,
    csv: String,
    /// Human-readable lines for stderr.
    summary: Vec<String>,
    failed: bool,
    over_budget: bool,
}

impl Outcome {
    fn new(result: Value, graph_hash: Option<String>, csv: String, summary: String) -> Outcome {
        Outcome {
            result,
            graph_hash,
            csv,
            summary: vec![summary],
            failed: false,
            over_budget: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}

fn real_main(cli: Cli) -> Run<u8> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(Failure::Usage)?,
        None => Config::default(),
    };
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let threads = cli.threads.or(cfg.threads).unwrap_or(0);
    let format = cli.format.or(cfg.format).unwrap_or(Format::Json);
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }

    let command = cli.command.resolve(&cfg);
    let outcome = execute(&command, seed)?;
    let params = serde_json::to_value(&command).expect("commands serialize");
    let doc = Document {
        manifest: RunManifest::new(
            command.name(),
            params,
            seed,
            outcome.graph_hash.clone(),
            &outcome.result,
        ),
        result: outcome.result,
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n",
        Format::Csv => format!(
            "# manifest {}\n{}",
            serde_json::to_string(&doc.manifest).expect("manifests serialize"),
            outcome.csv
        ),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => {
            // A closed pipe is not worth a panic.
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    Ok(if outcome.failed {
        EXIT_FAILED
    } else if outcome.over_budget {
        EXIT_BUDGET
    } else {
        0
    })
}

fn execute(command: &Command, seed: u64) -> Run<Outcome> {
    match command {
        Command::Gen { family, params } => gen(family, params),
        Command::Solve {
            source,
            k,
            tol,
            budget,
        } => {
            let g = load_graph(source)?;
            let opts = SolveOptions {
                tol: tol.unwrap_or(exact::DEFAULT_TOL),
                state_budget: budget.map_or(exact::DEFAULT_STATE_BUDGET, u128::from),
                ..SolveOptions::default()
            };
            solve(&g, *k, opts)
        }
        Command::ZombieNumber { source, k_max, tol } => {
            let g = load_graph(source)?;
            zombie_number(
                &g,
                k_max.unwrap_or(8),
                SolveOptions::with_tol(tol.unwrap_or(exact::DEFAULT_TOL)),
            )
        }
        Command::CopNumber { source, k_max } => {
            let g = load_graph(source)?;
            let c = cop_number(&g, k_max.unwrap_or(6))?;
            let known = known_cop_number(g.family());
            let result =
                json!({"graph": g.name(), "n": g.order(), "cop_number": c, "known": known});
            let csv = format!("graph,n,cop_number\n{},{},{c}\n", g.name(), g.order());
            Ok(Outcome::new(result, Some(g.hash()), csv, format!("c={c}")))
        }
        Command::Simulate {
            source,
            k,
            strategy,
            samples,
            cutoff,
            censored_as_loss,
            confidence,
        } => {
            let g = load_graph(source)?;
            let mut opts = EstimateOptions::new(&g, samples.unwrap_or(10_000), seed);
            if let Some(c) = cutoff {
                opts.cutoff = *c;
            }
            opts.censored_as_loss = *censored_as_loss;
            opts.confidence = confidence.unwrap_or(0.99);
            simulate(&g, *k, strategy.as_deref().unwrap_or("greedy"), &opts)
        }
        Command::Formulas {
            family,
            params,
            k,
            omega,
        } => formulas(family, params, *k, omega.unwrap_or(1.0)),
        Command::Verify {
            only,
            manifest,
            lazy_zombies,
        } => match manifest {
            Some(path) => replay(path),
            None => {
                let law = if *lazy_zombies {
                    ZombieLaw::Lazy
                } else {
                    ZombieLaw::Geodesic
                };
                verify(only, &law)
            }
        },
    }
}

fn parse_family(name: &str, params: &[u64]) -> Run<Family> {
    if name.contains('(') && params.is_empty() {
        let fam: Family = name.parse()?;
        if let Family::Custom(s) = fam {
            return Err(Failure::Usage(format!("unknown family '{s}'")));
        }
        return Ok(fam);
    }
    Ok(Family::from_name(name, params)?)
}

fn load_graph(src: &GraphSource) -> Run<Graph> {
    match (&src.graph, &src.family) {
        (Some(path), None) => read_graph(path),
        (None, Some(words)) => {
            let (name, rest) = words
                .split_first()
                .ok_or_else(|| Failure::Usage("--family needs a name".into()))?;
            let params = rest
                .iter()
                .map(|w| {
                    w.parse::<u64>()
                        .map_err(|_| Failure::Usage(format!("bad parameter '{w}'")))
                })
                .collect::<Run<Vec<_>>>()?;
            Ok(generate(&parse_family(name, &params)?)?)
        }
        _ => Err(Failure::Usage(
            "give exactly one of --graph or --family".into(),
        )),
    }
}

/// Reads a document written by `gen`, or a bare graph JSON.
fn read_graph(path: &Path) -> Run<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let graph = value.pointer("/result/graph").cloned().unwrap_or(value);
    let json: GraphJson = serde_json::from_value(graph)
        .map_err(|e| Failure::Usage(format!("{}: not a graph: {e}", path.display())))?;
    Ok(Graph::from_json(&json)?)
}

fn gen(family: &str, params: &[u64]) -> Run<Outcome> {
    let g = generate(&parse_family(family, params)?)?;
    let report = validate(&g);
    let mut csv = String::from("u,v\n");
    for (u, v) in g.edges() {
        csv.push_str(&format!("{u},{v}\n"));
    }
    let result = json!({"graph": g.to_json(), "report": report});
    Ok(Outcome::new(
        result,
        Some(g.hash()),
        csv,
        format!("{}: {report}", g.name()),
    ))
}

fn solve(g: &Graph, k: usize, opts: SolveOptions) -> Run<Outcome> {
    let table = capture_value_table(g, k, opts)?;
    let r = exact::sk_from_table(&table);
    let result = json!({
        "graph": g.name(),
        "n": g.order(),
        "k": k,
        "sk": r.sk,
        "method": r.method.to_string(),
        "residual": r.residual,
        "converged": r.converged,
        "iterations": table.iterations,
        "tol": opts.tol,
    });
    let csv = format!(
        "graph,n,k,sk,residual,converged\n{},{},{k},{},{},{}\n",
        g.name(),
        g.order(),
        r.sk,
        r.residual,
        r.converged
    );
    let summary = format!(
        "s_{k}({}) = {:.9} (residual {:.1e})",
        g.name(),
        r.sk,
        r.residual
    );
    Ok(Outcome::new(result, Some(g.hash()), csv, summary))
}

fn zombie_number(g: &Graph, k_max: usize, opts: SolveOptions) -> Run<Outcome> {
    let c = match known_cop_number(g.family()) {
        Some(c) => c,
        None => cop_number(g, k_max)?,
    };
    let cycle_n = match g.family() {
        Family::Cycle(n) if *n >= 9 => Some(*n),
        _ => None,
    };
    let z = exact::zombie_number(c, k_max, |k| match cycle_n {
        // Counting is exact on cycles and avoids huge state spaces.
        Some(n) => Ok(SkResult {
            k,
            sk: to_f64(&cycle_sk_combinatorial(n, k)),
            method: SkMethod::Combinatorial,
            residual: 0.0,
            converged: true,
            starts: None,
        }),
        None => sk_exact(g, k, opts),
    })?;
    let profile: Vec<Value> = z
        .profile
        .iter()
        .map(|r| json!({"k": r.k, "sk": r.sk, "method": r.method.to_string(), "converged": r.converged}))
        .collect();
    let result = json!({
        "graph": g.name(),
        "n": g.order(),
        "cop_number": c,
        "z": z.z,
        "cost": z.cost(),
        "non_increasing": z.non_increasing,
        "profile": profile,
    });
    let mut csv = String::from("graph,k,sk,method\n");
    for r in &z.profile {
        csv.push_str(&format!("{},{},{},{}\n", g.name(), r.k, r.sk, r.method));
    }
    let summary = match (z.z, z.cost()) {
        (Some(v), Some(cost)) => format!("z={v} Z={cost}"),
        _ => format!("z > {k_max} (no k up to k_max reaches 1/2)"),
    };
    let mut out = Outcome::new(result, Some(g.hash()), csv, summary);
    out.over_budget = z.z.is_none();
    Ok(out)
}

fn simulate(g: &Graph, k: usize, strategy: &str, opts: &EstimateOptions) -> Run<Outcome> {
    let strat: Box<dyn SurvivorStrategy> = if strategy == "optimal-table" {
        let table = capture_value_table(g, k, SolveOptions::default())?;
        Box::new(OptimalTable::new(table))
    } else {
        by_name(strategy, g)?
    };
    let r = estimate_sk(g, k, strat.as_ref(), opts)?;
    let mut result = serde_json::to_value(&r).expect("estimates serialize");
    result["graph"] = json!(g.name());
    result["graph_hash"] = json!(g.hash());
    result["n"] = json!(g.order());
    let summary = format!(
        "{} k={k} {}: {:.4} in [{:.4}, {:.4}] at {}% ({} games, cutoff {}, {} censored, {} flagged)",
        g.name(),
        r.strategy,
        r.estimate,
        r.ci_low,
        r.ci_high,
        r.confidence * 100.0,
        r.samples,
        r.cutoff,
        r.censored,
        r.flagged
    );
    let csv = estimates_csv(g, std::slice::from_ref(&r));
    Ok(Outcome::new(result, Some(g.hash()), csv, summary))
}

fn formulas(family: &str, params: &[u64], k: Option<usize>, omega: f64) -> Run<Outcome> {
    let fam = parse_family(family, params)?;
    let mut rows: Vec<(String, Value)> = vec![("family".into(), json!(fam.to_string()))];
    if let Some(c) = known_cop_number(&fam) {
        rows.push(("cop_number".into(), json!(c)));
    }
    let rational =
        |r: &num_rational::BigRational| json!({"exact": r.to_string(), "value": to_f64(r)});
    match fam {
        Family::Cycle(n) => {
            rows.push(("escape_arc".into(), json!(cycle_escape_arc(n))));
            if let Some(z) = cycle_zombie_table(n) {
                rows.push(("z_table".into(), json!(z)));
            }
            if n >= 9 {
                rows.push(("z".into(), json!(zombie_number_cycle(n)?)));
            }
            if let Some(k) = k {
                rows.push(("sk".into(), rational(&cycle_sk_combinatorial(n, k))));
                if let Ok((lo, hi)) = cycle_sk_bounds(n, k) {
                    rows.push(("sk_lower".into(), rational(&lo)));
                    rows.push(("sk_upper".into(), rational(&hi)));
                }
            }
        }
        Family::Hypercube(n) => {
            if let Some(k) = k {
                rows.push(("sk".into(), rational(&hypercube_sk(n, k))));
            }
        }
        Family::LeafyCycle(n) => {
            let s = leafy_cycle_stats(n, k.unwrap_or(1))?;
            rows.push(("p_all_leaves".into(), rational(&s.p_all_leaves)));
            rows.push(("z_asymptotic".into(), json!(s.z_asymptotic)));
        }
        _ => {}
    }
    if let Ok(b) = asymptotic_band(&fam, omega) {
        rows.push(("band_low".into(), json!(b.low)));
        if b.high.is_finite() {
            rows.push(("band_center".into(), json!(b.center)));
            rows.push(("band_high".into(), json!(b.high)));
        }
    }
    if let Some(k) = k {
        rows.push(("k".into(), json!(k)));
    }
    let mut csv = String::from("quantity,value\n");
    let mut summary = Vec::new();
    for (key, v) in &rows {
        let shown = v.get("exact").unwrap_or(v);
        let shown = shown
            .as_str()
            .map_or_else(|| shown.to_string(), str::to_string);
        csv.push_str(&format!("{key},{shown}\n"));
        summary.push(format!("{key}={shown}"));
    }
    let result = Value::Object(rows.into_iter().collect());
    Ok(Outcome::new(result, None, csv, summary.join(" ")))
}

/// Criterion ids selected by `--only`; empty means all.
fn criterion_ids(only: &[String]) -> Run<Vec<u8>> {
    if only.is_empty() {
        return Ok(CRITERIA.iter().map(|c| c.0).collect());
    }
    let mut ids = Vec::new();
    for word in only {
        let group: &[u8] = match word.trim() {
            "cycles" => &[1, 2, 6],
            "hypercubes" => &[3],
            "grids" => &[4],
            "projective" => &[5],
            "sandwich" => &[6],
            "montecarlo" | "calibration" => &[7],
            "torus" => &[8],
            "leafy" => &[9],
            "determinism" => &[10],
            other => match other.parse::<u8>() {
                Ok(id) if CRITERIA.iter().any(|c| c.0 == id) => {
                    ids.push(id);
                    continue;
                }
                _ => return Err(Failure::Usage(format!("unknown criterion '{other}'"))),
            },
        };
        ids.extend_from_slice(group);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn verify(only: &[String], law: &ZombieLaw) -> Run<Outcome> {
    let ids = criterion_ids(only)?;
    let mut reports: Vec<CriterionReport> = Vec::new();
    for id in ids {
        let r = verification::run_with(id, law)?;
        eprintln!("{}", r.summary());
        reports.push(r);
    }
    let failed = reports.iter().any(|r| r.checks.iter().any(|c| !c.ok));
    let over_budget = reports.iter().any(|r| r.runtime_secs > r.budget_secs);
    let passed = reports.iter().filter(|r| r.passed).count();
    let csv = verification::comparison_csv(&reports);
    let summary = format!("{passed}/{} criteria passed", reports.len());
    let result = json!({"criteria": reports, "passed": passed, "total": reports.len()});
    let mut out = Outcome::new(result, None, csv, summary);
    out.failed = failed;
    out.over_budget = over_budget;
    Ok(out)
}

/// Re-runs the command recorded in a result document and compares digests.
fn replay(path: &Path) -> Run<Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let doc: Document = if text.starts_with("# manifest ") {
        let line = text.lines().next().unwrap_or_default();
        let manifest: RunManifest = serde_json::from_str(&line["# manifest ".len()..])
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Document {
            manifest,
            result: Value::Null,
        }
    } else {
        serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    let m = &doc.manifest;
    let command: Command = serde_json::from_value(m.params.clone())
        .map_err(|e| Failure::Usage(format!("{}: unreadable parameters: {e}", path.display())))?;
    if let Command::Verify {
        manifest: Some(_), ..
    } = command
    {
        return Err(Failure::Usage(
            "a replay manifest cannot be replayed".into(),
        ));
    }
    let again = execute(&command, m.seed)?;
    let computed = digest(&again.result);
    let graph_ok = m.graph_hash == again.graph_hash;
    let reproduced = computed == m.result_digest && graph_ok;
    let result = json!({
        "file": path.display().to_string(),
        "command": m.command,
        "expected_digest": m.result_digest,
        "computed_digest": computed,
        "graph_matches": graph_ok,
        "reproduced": reproduced,
    });
    let csv = format!(
        "command,expected_digest,computed_digest,reproduced\n{},{},{computed},{reproduced}\n",
        m.command, m.result_digest
    );
    let summary = format!(
        "{} {}: digest {}",
        m.command,
        if reproduced {
            "reproduced"
        } else {
            "NOT reproduced"
        },
        &computed[..16]
    );
    let mut out = Outcome::new(result, None, csv, summary);
    out.failed = !reproduced;
    Ok(out)
}
