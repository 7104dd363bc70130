//! Subcommand implementations. Each returns the bytes it wrote or printed
//! so the driver and tests can share them.

use std::time::Instant;

use serde_json::{json, Value};
use spanner_core::adversarial::{three_band_arrangement, zigzag_points, ArrangementSpec, ZigZagSpec};
use spanner_core::bounds::bound_total_not_smaller;
use spanner_core::crossing::{build_crossing_graph, degeneracy, longer_crossing_counts, CrossingGraph};
use spanner_core::gen::{perturb, uniform_points};
use spanner_core::planar::{planarize_with, separator_hierarchy, spanner_separator};
use spanner_core::spanner::{greedy_spanner_fast, greedy_spanner_naive, verify_no_shortcut, verify_stretch};
use spanner_core::{PointSet, SpannerConfig, SpannerGraph};

use crate::error::CliError;
use crate::formats::{format_graph, format_points, load_graph, load_points, write_atomic, GraphFile};
use crate::svg::render_svg;

/// Version of the stats JSON layout.
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Uniform,
    Zigzag,
    Arrangement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Naive,
    Fast,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Naive => "naive",
            Algo::Fast => "fast",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateArgs {
    pub kind: Kind,
    pub n: Option<usize>,
    pub t: Option<f64>,
    pub delta: Option<f64>,
    pub columns: Option<usize>,
    pub seed: u64,
    pub perturb: Option<f64>,
    pub out: String,
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::params(format!("--{flag} is required for kind {kind}")))
}

pub fn generate_points(args: &GenerateArgs) -> Result<PointSet, CliError> {
    let points = match args.kind {
        Kind::Uniform => {
            let n = need(args.n, "n", "uniform")?;
            if n == 0 {
                return Err(CliError::params("--n must be positive"));
            }
            uniform_points(n, args.seed)
        }
        Kind::Zigzag => {
            let n = need(args.n, "n", "zigzag")?;
            let t = need(args.t, "t", "zigzag")?;
            if !(t > 1.0) {
                return Err(CliError::params("--t must exceed 1"));
            }
            zigzag_points(&ZigZagSpec::horizontal(1.0, (t * t - 1.0).sqrt(), n))?
        }
        Kind::Arrangement => {
            let spec = ArrangementSpec::new(
                need(args.t, "t", "arrangement")?,
                need(args.delta, "delta", "arrangement")?,
                need(args.columns, "columns", "arrangement")?,
            );
            three_band_arrangement(&spec)?
        }
    };
    match args.perturb {
        Some(eps) => Ok(perturb(&points, eps, args.seed)?),
        None => Ok(points),
    }
}

pub fn generate(args: &GenerateArgs) -> Result<(), CliError> {
    write_atomic(&args.out, &format_points(&generate_points(args)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuildArgs {
    pub input: String,
    pub t: f64,
    pub algo: Algo,
    pub out: String,
    pub stats: Option<String>,
    pub separator: bool,
}

pub fn build_spanner(points: &PointSet, t: f64, algo: Algo) -> Result<SpannerGraph, CliError> {
    let cfg = SpannerConfig::new(t);
    Ok(match algo {
        Algo::Naive => greedy_spanner_naive(points, &cfg)?,
        Algo::Fast => greedy_spanner_fast(points, &cfg)?,
    })
}

fn crossing_stats(g: &SpannerGraph, cg: &CrossingGraph, t: Option<f64>) -> Result<Value, CliError> {
    let (k, _) = degeneracy(cg);
    let longer = longer_crossing_counts(g, cg);
    let mut stats = json!({
        "crossings": cg.num_crossings(),
        "max_crossings_per_edge": cg.max_degree(),
        "max_longer_crossings_per_edge": longer.iter().copied().max().unwrap_or(0),
        "degeneracy": k,
    });
    if let Some(t) = t {
        stats["bound_total_not_smaller"] = json!(bound_total_not_smaller(t, 1.0)?.total);
    }
    Ok(stats)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn build_stats(g: &SpannerGraph, t: f64, algo: Algo, separator: bool) -> Result<Value, CliError> {
    let cg = build_crossing_graph(g)?;
    let mut stats = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "build",
        "algo": algo.name(),
        "n": g.num_vertices(),
        "m": g.num_edges(),
        "t": t,
        "total_weight": g.total_weight(),
        "max_degree": g.max_degree(),
    });
    merge(&mut stats, crossing_stats(g, &cg, Some(t))?);
    if separator {
        let sep = spanner_separator(g)?;
        stats["separator_size"] = json!(sep.len());
        stats["separator_balance"] = json!(sep.balance);
        stats["planarization_vertices"] = json!(planarize_with(g, &cg).num_vertices());
    }
    Ok(stats)
}

pub fn build(args: &BuildArgs) -> Result<(), CliError> {
    let points = load_points(&args.input)?;
    let g = build_spanner(&points, args.t, args.algo)?;
    let header = GraphFile { points: Some(args.input.clone()), t: Some(args.t), algo: Some(args.algo.name().into()), edges: vec![] };
    write_atomic(&args.out, &format_graph(&g, &header))?;
    if let Some(path) = &args.stats {
        write_atomic(path, &to_json_text(&build_stats(&g, args.t, args.algo, args.separator)?))?;
    }
    Ok(())
}

/// Returns the report printed on stdout; fails with `E_VERIFY` on any
/// violation.
pub fn verify(points: &str, graph: &str, t: f64) -> Result<String, CliError> {
    let (g, _) = load_graph(graph, Some(points))?;
    SpannerConfig::new(t).validate()?;
    let stretch = verify_stretch(&g, t);
    let shortcut = verify_no_shortcut(&g, t);
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "t": t,
        "max_stretch": stretch.max_observed_ratio,
        "stretch_violations": stretch.violating_pairs.len(),
        "shortcut_violations": shortcut.violating_edges.len(),
    });
    let text = to_json_text(&report);
    if stretch.violating_pairs.is_empty() && shortcut.violating_edges.is_empty() {
        Ok(text)
    } else {
        Err(CliError::new(
            "E_VERIFY",
            format!(
                "{} pairs exceed stretch {t}, {} edges can be shortcut",
                stretch.violating_pairs.len(),
                shortcut.violating_edges.len()
            ),
        ))
    }
}

pub fn crossings(graph: &str, points: Option<&str>, t: Option<f64>, stats: &str) -> Result<(), CliError> {
    let (g, file) = load_graph(graph, points)?;
    let cg = build_crossing_graph(&g)?;
    let mut out = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "crossings",
        "n": g.num_vertices(),
        "m": g.num_edges(),
    });
    merge(&mut out, crossing_stats(&g, &cg, t.or(file.t))?);
    write_atomic(stats, &to_json_text(&out))
}

pub fn separator(graph: &str, points: Option<&str>, cutoff: usize, stats: &str) -> Result<(), CliError> {
    let (g, _) = load_graph(graph, points)?;
    if cutoff == 0 {
        return Err(CliError::params("--cutoff must be at least 1"));
    }
    let cg = build_crossing_graph(&g)?;
    let big_n = planarize_with(&g, &cg).num_vertices();
    let mut out = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "separator",
        "n": g.num_vertices(),
        "planarization_vertices": big_n,
        "size_bound": 10.0 * (big_n as f64).sqrt(),
        "cutoff": cutoff,
    });
    if g.is_connected() {
        let sep = spanner_separator(&g)?;
        out["separator_size"] = json!(sep.len());
        out["separator_balance"] = json!(sep.balance);
    }
    let tree = separator_hierarchy(&g, cutoff)?;
    let leaves = tree.leaves();
    out["hierarchy_depth"] = json!(tree.depth());
    out["hierarchy_leaves"] = json!(leaves.len());
    out["hierarchy_max_leaf"] = json!(leaves.iter().map(|l| l.len()).max().unwrap_or(0));
    out["hierarchy_separator_vertices"] = json!(tree.separators().iter().map(|s| s.len()).sum::<usize>());
    write_atomic(stats, &to_json_text(&out))
}

pub fn svg(graph: &str, points: Option<&str>, out: &str, highlight: bool) -> Result<(), CliError> {
    let (g, _) = load_graph(graph, points)?;
    let cg = if highlight { Some(build_crossing_graph(&g)?) } else { None };
    write_atomic(out, &render_svg(&g, cg.as_ref()))
}

fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Timing runs; the output is not deterministic. Suites: `builders`,
/// `crossings`, `separator`.
pub fn bench(suite: &str, seed: u64) -> Result<String, CliError> {
    let mut rows = Vec::new();
    match suite {
        "builders" => {
            for n in [100, 200, 400] {
                let pts = uniform_points(n, seed);
                for algo in [Algo::Naive, Algo::Fast] {
                    let start = Instant::now();
                    let g = build_spanner(&pts, 1.5, algo)?;
                    rows.push(json!({"n": n, "algo": algo.name(), "m": g.num_edges(), "ms": millis(start)}));
                }
            }
        }
        "crossings" => {
            for n in [256, 1024] {
                let g = build_spanner(&uniform_points(n, seed), 1.5, Algo::Fast)?;
                let start = Instant::now();
                let cg = build_crossing_graph(&g)?;
                let k = degeneracy(&cg).0;
                rows.push(json!({"n": n, "crossings": cg.num_crossings(), "degeneracy": k, "ms": millis(start)}));
            }
        }
        "separator" => {
            for n in [256, 1024] {
                let g = build_spanner(&uniform_points(n, seed), 1.5, Algo::Fast)?;
                let start = Instant::now();
                let sep = spanner_separator(&g)?;
                rows.push(json!({"n": n, "separator_size": sep.len(), "ms": millis(start)}));
            }
        }
        other => return Err(CliError::params(format!("unknown suite {other:?}; expected builders, crossings or separator"))),
    }
    Ok(to_json_text(&json!({"schema_version": SCHEMA_VERSION, "suite": suite, "seed": seed, "runs": rows})))
}
