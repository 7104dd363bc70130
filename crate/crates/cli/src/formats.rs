//! Text formats.
//!
//! Points: one `x y` pair per line, written with 17 significant digits so a
//! write/read round trip is exact. Graphs: one `i j` pair per line, preceded
//! by `# key: value` header lines (`points`, `t`, `algo`). `#` starts a
//! comment in both formats.

use std::io::Write;
use std::path::{Path, PathBuf};

use spanner_core::{PointSet, SpannerGraph};

use crate::error::CliError;

pub fn format_points(points: &PointSet) -> String {
    let mut out = String::with_capacity(48 * points.len());
    for p in points.iter() {
        out.push_str(&format!("{:.16e} {:.16e}\n", p.x, p.y));
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn two_fields<'a>(path: &str, line: usize, body: &'a str) -> Result<(&'a str, &'a str), CliError> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    match fields.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(CliError::parse(path, line, format!("expected two fields, found {}", fields.len()))),
    }
}

pub fn parse_points(path: &str, text: &str) -> Result<PointSet, CliError> {
    let mut coords = Vec::new();
    for (line, body) in content_lines(text) {
        let (a, b) = two_fields(path, line, body)?;
        let num = |s: &str| s.parse::<f64>().map_err(|e| CliError::parse(path, line, format!("bad number {s:?}: {e}")));
        coords.push((num(a)?, num(b)?));
    }
    let points = PointSet::from_coords(coords)?;
    if let Some((i, j)) = points.find_duplicate() {
        return Err(spanner_core::Error::DuplicatePoints(i, j).into());
    }
    Ok(points)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GraphFile {
    pub points: Option<String>,
    pub t: Option<f64>,
    pub algo: Option<String>,
    pub edges: Vec<(usize, usize)>,
}

pub fn format_graph(g: &SpannerGraph, header: &GraphFile) -> String {
    let mut out = String::new();
    if let Some(p) = &header.points {
        out.push_str(&format!("# points: {p}\n"));
    }
    if let Some(t) = header.t {
        out.push_str(&format!("# t: {t}\n"));
    }
    if let Some(a) = &header.algo {
        out.push_str(&format!("# algo: {a}\n"));
    }
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.i, e.j));
    }
    out
}

pub fn parse_graph(path: &str, text: &str) -> Result<GraphFile, CliError> {
    let mut file = GraphFile::default();
    for (i, line) in text.lines().enumerate() {
        let Some(comment) = line.trim().strip_prefix('#') else { continue };
        if let Some((key, value)) = comment.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "points" => file.points = Some(value.to_string()),
                "t" => file.t = Some(value.parse().map_err(|e| CliError::parse(path, i + 1, format!("bad t {value:?}: {e}")))?),
                "algo" => file.algo = Some(value.to_string()),
                _ => {}
            }
        }
    }
    for (line, body) in content_lines(text) {
        let (a, b) = two_fields(path, line, body)?;
        let idx = |s: &str| s.parse::<usize>().map_err(|e| CliError::parse(path, line, format!("bad index {s:?}: {e}")));
        file.edges.push((idx(a)?, idx(b)?));
    }
    Ok(file)
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Writes via a temporary file in the target directory and renames it into
/// place, so readers never see a partial file.
pub fn write_atomic(path: &str, contents: &str) -> Result<(), CliError> {
    let target = Path::new(path);
    let dir = match target.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(target).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Resolves a `# points:` reference: as given, else relative to the graph
/// file's directory.
pub fn resolve_points_path(graph_path: &str, reference: &str) -> PathBuf {
    let direct = PathBuf::from(reference);
    if direct.is_absolute() || direct.exists() {
        return direct;
    }
    Path::new(graph_path).parent().map(|d| d.join(reference)).unwrap_or(direct)
}

pub fn load_points(path: &str) -> Result<PointSet, CliError> {
    parse_points(path, &read_text(path)?)
}

/// Loads a graph file and its point set; `points_override` replaces the
/// header reference.
pub fn load_graph(graph_path: &str, points_override: Option<&str>) -> Result<(SpannerGraph, GraphFile), CliError> {
    let file = parse_graph(graph_path, &read_text(graph_path)?)?;
    let points_path = match (points_override, &file.points) {
        (Some(p), _) => PathBuf::from(p),
        (None, Some(r)) => resolve_points_path(graph_path, r),
        (None, None) => {
            return Err(CliError::params(format!("{graph_path} has no '# points:' header; pass --in-points")));
        }
    };
    let points = load_points(&points_path.to_string_lossy())?;
    let g = SpannerGraph::from_edges(points, file.edges.iter().copied())?;
    Ok((g, file))
}
