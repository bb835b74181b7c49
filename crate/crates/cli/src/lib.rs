//! The `ricci` command: load a graph, run one analysis and print a report.

pub mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use ricci_core::bakry_emery::{cd_optimal_k, cd_verify, CdOutcome, Dimension};
use ricci_core::curvature::{graph_report, scalar_report, PairOutcome, PairSelector};
use ricci_core::generators::generate_family;
use ricci_core::graph::{load_edge_list, parse_weight};
use ricci_core::selfcheck::run_selfcheck;
use ricci_core::{Graph, Rational};

pub use report::{serialize_report, Cell, Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANALYSIS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// κ and W1 for each selected pair
    Curvature,
    /// κ with every edge bound, case tag and tightness flags
    Bounds,
    /// CD(m, K) per vertex: optimal K, or a verdict when --k is given
    Cd,
    /// mean curvature per vertex against the clustering bounds
    Scalar,
    /// run the property suite on the input graph
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pairs {
    Edges,
    AllPairs,
    File,
}

/// Exact Ollivier-Ricci and Bakry-Émery curvature reports for graphs.
#[derive(Debug, Clone, Parser)]
#[command(name = "ricci", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Edge-list file: one `u v` or `u v w` per line, `#` comments.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    pub input: Option<PathBuf>,

    /// Built-in graph instead of --input, e.g. `complete:5`, `gnp:20:0.3:7`.
    #[arg(long)]
    pub family: Option<String>,

    /// Read a third column of positive weights.
    #[arg(long)]
    pub weighted: bool,

    #[arg(long, value_enum, default_value = "edges")]
    pub pairs: Pairs,

    /// Pairs of vertex labels, one pair per line (with --pairs file).
    #[arg(long)]
    pub pairs_file: Option<PathBuf>,

    /// Dimension parameter: a rational at least 1, or `inf`.
    #[arg(long, default_value = "2")]
    pub m: String,

    /// Curvature to verify; without it `cd` computes the optimal value.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,

    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Worker threads (defaults to all cores).
    #[arg(long)]
    pub parallelism: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Analysis(String),
}

impl From<ricci_core::Error> for Failure {
    fn from(e: ricci_core::Error) -> Self {
        Failure::Analysis(e.to_string())
    }
}

/// Runs `config`, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config, err) {
        Ok((table, code)) => match serialize_report(&table, config.format, out) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: writing report: {e}");
                EXIT_ANALYSIS
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Analysis(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ANALYSIS
        }
    }
}

fn execute(config: &RunConfig, err: &mut dyn Write) -> Result<(Table, i32), Failure> {
    if !(config.tolerance > 0.0 && config.tolerance.is_finite()) {
        return Err(Failure::Usage(format!("--tolerance must be positive, got {}", config.tolerance)));
    }
    if config.parallelism == Some(0) {
        return Err(Failure::Usage("--parallelism must be at least 1".into()));
    }
    let m: Dimension = config.m.parse().map_err(|e: ricci_core::Error| Failure::Usage(e.to_string()))?;
    let k = config
        .k
        .as_deref()
        .map(|s| parse_weight(s.trim()).ok_or_else(|| Failure::Usage(format!("--k: not a rational literal: {s}"))))
        .transpose()?;
    if config.pairs == Pairs::File && config.pairs_file.is_none() {
        return Err(Failure::Usage("--pairs file requires --pairs-file".into()));
    }

    let graph = load_graph(config)?;
    let selector = selector(config, &graph)?;
    let workers = config.parallelism;

    let table = match config.command {
        Command::Curvature => curvature_table(&graph, &graph_report(&graph, &selector, workers), err),
        Command::Bounds => bounds_table(&graph, &graph_report(&graph, &selector, workers), err),
        Command::Cd => cd_table(&graph, &m, k.as_ref(), config.tolerance, workers, err),
        Command::Scalar => scalar_table(&graph, workers, err),
        Command::Verify => {
            let table = verify_table(&graph);
            let failed = table.rows.iter().any(|r| r[1] == Cell::Bool(false));
            return Ok((table, if failed { EXIT_ANALYSIS } else { EXIT_OK }));
        }
    };
    Ok((table, EXIT_OK))
}

fn load_graph(config: &RunConfig) -> Result<Graph, Failure> {
    match (&config.input, &config.family) {
        (Some(path), None) => {
            let file = fs::File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(load_edge_list(std::io::BufReader::new(file), config.weighted)?)
        }
        (None, Some(spec)) => generate_family(spec).map_err(|e| Failure::Usage(e.to_string())),
        _ => Err(Failure::Usage("exactly one of --input or --family is required".into())),
    }
}

fn selector(config: &RunConfig, g: &Graph) -> Result<PairSelector, Failure> {
    Ok(match config.pairs {
        Pairs::Edges => PairSelector::Edges,
        Pairs::AllPairs => PairSelector::AllPairs,
        Pairs::File => {
            let path = config.pairs_file.as_ref().expect("checked above");
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let mut pairs = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let fields: Vec<&str> = line.split_whitespace().collect();
                let [u, v] = fields[..] else {
                    return Err(Failure::Usage(format!("{}:{}: expected two labels", path.display(), i + 1)));
                };
                let idx = |l: &str| {
                    g.index_of(l)
                        .ok_or_else(|| Failure::Usage(format!("{}:{}: unknown vertex '{l}'", path.display(), i + 1)))
                };
                pairs.push((idx(u)?, idx(v)?));
            }
            PairSelector::Explicit(pairs)
        }
    })
}

fn report_error(err: &mut dyn Write, what: &str, e: &ricci_core::Error) {
    let _ = writeln!(err, "error: {what}: {e}");
}

fn pair_name(g: &Graph, o: &PairOutcome) -> String {
    format!("({}, {})", g.label(o.x), g.label(o.y))
}

fn curvature_table(g: &Graph, rows: &[PairOutcome], err: &mut dyn Write) -> Table {
    let mut t = Table::new(&["x", "y", "distance", "w1", "w1_decimal", "kappa", "kappa_decimal", "status"]);
    for o in rows {
        let keys: Vec<Cell> = vec![g.label(o.x).into(), g.label(o.y).into()];
        match &o.result {
            Ok(r) => t.push(vec![
                keys[0].clone(),
                keys[1].clone(),
                Cell::Int(i64::from(r.hop)),
                (&r.w1).into(),
                Cell::decimal_of(&r.w1),
                (&r.kappa).into(),
                Cell::decimal_of(&r.kappa),
                "ok".into(),
            ]),
            Err(e) => {
                report_error(err, &pair_name(g, o), e);
                t.push_error(keys, "status", "error".into());
            }
        }
    }
    t
}

pub const BOUNDS_COLUMNS: [&str; 14] = [
    "x",
    "y",
    "d_x",
    "d_y",
    "sharp",
    "w1",
    "kappa",
    "kappa_decimal",
    "lower_linyau",
    "lower_triangle",
    "upper_triangle",
    "case",
    "lower_tight",
    "upper_tight",
];

fn bounds_table(g: &Graph, rows: &[PairOutcome], err: &mut dyn Write) -> Table {
    let mut t = Table::new(&BOUNDS_COLUMNS);
    for o in rows {
        let keys: Vec<Cell> = vec![g.label(o.x).into(), g.label(o.y).into()];
        let bounded = match &o.result {
            Ok(r) => match &r.bounds {
                Some(b) => Ok((r, b)),
                None => Err(ricci_core::Error::NotAdjacent { x: o.x, y: o.y }),
            },
            Err(e) => Err(e.clone()),
        };
        match bounded {
            Ok((r, b)) => t.push(vec![
                keys[0].clone(),
                keys[1].clone(),
                (&b.d_x).into(),
                (&b.d_y).into(),
                b.sharp.into(),
                (&r.w1).into(),
                (&r.kappa).into(),
                Cell::decimal_of(&r.kappa),
                (&b.lower_linyau).into(),
                (&b.lower_triangle).into(),
                (&b.upper_triangle).into(),
                b.case_tag.label(b.weighted).into(),
                b.lower_tight.into(),
                b.upper_tight.into(),
            ]),
            Err(e) => {
                report_error(err, &pair_name(g, o), &e);
                t.push_error(keys, "case", "error".into());
            }
        }
    }
    t
}

/// Evaluates `f` on every vertex on the worker pool, in label order.
fn per_vertex<T: Send>(g: &Graph, workers: Option<usize>, f: impl Fn(usize) -> T + Sync) -> Vec<(usize, T)> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&a, &b| (g.label(a), a).cmp(&(g.label(b), b)));
    let job = || order.par_iter().map(|&v| (v, f(v))).collect();
    match workers.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(job),
        None => job(),
    }
}

fn cd_table(
    g: &Graph,
    m: &Dimension,
    k: Option<&Rational>,
    tol: f64,
    workers: Option<usize>,
    err: &mut dyn Write,
) -> Table {
    let results = per_vertex(g, workers, |x| match k {
        Some(k) => cd_verify(g, x, m, k),
        None => cd_optimal_k(g, x, m, tol),
    });
    let columns: &[&'static str] = match k {
        Some(_) => &["vertex", "degree", "m", "k", "holds", "status"],
        None => &["vertex", "degree", "m", "k_opt", "error_bound", "status"],
    };
    let mut t = Table::new(columns);
    for (x, r) in results {
        let keys: Vec<Cell> = vec![g.label(x).into(), g.degree(x).into(), m.to_string().into()];
        match r.map(|r| r.outcome) {
            Ok(CdOutcome::Verify { k, holds, .. }) => {
                t.push([keys, vec![(&k).into(), holds.into(), "ok".into()]].concat())
            }
            Ok(CdOutcome::Optimize { k_opt, error_bound, .. }) => {
                t.push([keys, vec![k_opt.into(), error_bound.into(), "ok".into()]].concat())
            }
            Err(e) => {
                report_error(err, &format!("vertex {}", g.label(x)), &e);
                t.push_error(keys, "status", "error".into());
            }
        }
    }
    t
}

fn scalar_table(g: &Graph, workers: Option<usize>, err: &mut dyn Write) -> Table {
    let results = per_vertex(g, workers, |x| scalar_report(g, x));
    let mut t = Table::new(&[
        "vertex",
        "degree",
        "mean_kappa",
        "mean_kappa_decimal",
        "clustering",
        "upper",
        "lower",
        "refined_lower",
        "uniform_case",
        "status",
    ]);
    for (x, r) in results {
        let keys: Vec<Cell> = vec![g.label(x).into(), g.unweighted_degree(x).into()];
        match r {
            Ok(r) => t.push(vec![
                keys[0].clone(),
                keys[1].clone(),
                (&r.mean_kappa).into(),
                Cell::decimal_of(&r.mean_kappa),
                (&r.c).into(),
                (&r.upper).into(),
                (&r.lower).into(),
                r.refined_lower.as_ref().into(),
                r.uniform_case.map(|c| c.label(false)).into(),
                "ok".into(),
            ]),
            Err(e) => {
                report_error(err, &format!("vertex {}", g.label(x)), &e);
                t.push_error(keys, "status", "error".into());
            }
        }
    }
    t
}

fn verify_table(g: &Graph) -> Table {
    let mut t = Table::new(&["property", "passed", "checked", "detail"]);
    for o in run_selfcheck(g) {
        t.push(vec![o.name.into(), o.passed.into(), o.checked.into(), o.detail.into()]);
    }
    t
}
