//! Greedy t-spanner construction and verification of its defining
//! properties (bounded stretch, no short-cutting of edges).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet, Segment};

/// Relative slack in the greedy test `d_S(P,Q) > t·d(P,Q)`.
pub const GREEDY_SLACK: f64 = 1e-12;
/// Relative slack used by the verifiers.
pub const VERIFY_SLACK: f64 = 1e-9;

/// Order of pairs at equal distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TieBreak {
    /// `(distance, min id, max id)` ascending.
    #[default]
    MinMaxId,
    /// `(distance, max id, min id)` descending in ids.
    ReverseId,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpannerConfig {
    pub t: f64,
    pub tie_break: TieBreak,
}

impl SpannerConfig {
    pub fn new(t: f64) -> Self {
        SpannerConfig { t, tie_break: TieBreak::MinMaxId }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 1.0) || !self.t.is_finite() {
            return Err(Error::InvalidStretch(self.t));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub length: f64,
}

/// A straight-line embedded graph on a [`PointSet`]. Edges are stored with
/// `i < j`, in insertion order; an edge's id is its index.
#[derive(Debug, Clone, PartialEq)]
pub struct SpannerGraph {
    points: PointSet,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl SpannerGraph {
    pub fn empty(points: PointSet) -> Self {
        let n = points.len();
        SpannerGraph { points, edges: Vec::new(), adjacency: vec![Vec::new(); n] }
    }

    /// Builds a graph from explicit vertex pairs. Pairs are canonicalised to
    /// `i < j`; self-loops, duplicates and unknown ids are rejected.
    pub fn from_edges<I>(points: PointSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = SpannerGraph::empty(points);
        let mut seen = std::collections::HashSet::new();
        for (a, b) in pairs {
            let (i, j) = (a.min(b), a.max(b));
            if j >= g.points.len() {
                return Err(Error::UnknownVertex(j));
            }
            if i == j {
                return Err(Error::InvalidParams(format!("self-loop at vertex {i}")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidParams(format!("duplicate edge ({i}, {j})")));
            }
            g.push_edge(i, j);
        }
        Ok(g)
    }

    fn push_edge(&mut self, a: usize, b: usize) -> usize {
        let (i, j) = (a.min(b), a.max(b));
        let length = self.points[i].distance(&self.points[j]);
        let id = self.edges.len();
        self.edges.push(Edge { i, j, length });
        self.adjacency[i].push((j, id));
        self.adjacency[j].push((i, id));
        id
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `(neighbour, edge id)` pairs of a vertex.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn segment(&self, edge: usize) -> Segment {
        let e = &self.edges[edge];
        Segment::new(self.points[e.i], self.points[e.j])
    }

    pub fn point(&self, v: usize) -> &Point {
        &self.points[v]
    }

    /// Edge pairs sorted canonically, for set comparisons.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<_> = self.edges.iter().map(|e| (e.i, e.j)).collect();
        s.sort_unstable();
        s
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Subgraph induced on `vertices`, with vertices renumbered in the given
    /// order. Returns the subgraph and, per new edge, the parent edge id.
    pub fn induced(&self, vertices: &[usize]) -> (SpannerGraph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.num_vertices()];
        for (k, &v) in vertices.iter().enumerate() {
            local[v] = k;
        }
        let points = PointSet::from_coords(vertices.iter().map(|&v| (self.points[v].x, self.points[v].y)))
            .expect("finite coordinates");
        let mut sub = SpannerGraph::empty(points);
        let mut parent = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            let (a, b) = (local[e.i], local[e.j]);
            if a != usize::MAX && b != usize::MAX {
                sub.push_edge(a, b);
                parent.push(id);
            }
        }
        (sub, parent)
    }
}

#[derive(Clone, Copy, PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable Dijkstra state; only touched entries are reset between runs.
pub(crate) struct Dijkstra {
    dist: Vec<f64>,
    settled: Vec<bool>,
    touched: Vec<usize>,
    heap: BinaryHeap<HeapItem>,
}

impl Dijkstra {
    pub(crate) fn new(n: usize) -> Self {
        Dijkstra {
            dist: vec![f64::INFINITY; n],
            settled: vec![false; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = f64::INFINITY;
            self.settled[v] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }

    /// Runs from `src`, settling vertices in distance order. Stops after
    /// settling `target` (if given), skips `skip_edge`, and ignores
    /// tentative distances above `radius`. Calls `visit` per settled vertex.
    pub(crate) fn run<F: FnMut(usize, f64)>(
        &mut self,
        g: &SpannerGraph,
        src: usize,
        target: Option<usize>,
        radius: f64,
        skip_edge: Option<usize>,
        mut visit: F,
    ) -> f64 {
        self.reset();
        self.dist[src] = 0.0;
        self.touched.push(src);
        self.heap.push(HeapItem { dist: 0.0, node: src });
        while let Some(HeapItem { dist, node }) = self.heap.pop() {
            if self.settled[node] || dist > self.dist[node] {
                continue;
            }
            self.settled[node] = true;
            visit(node, dist);
            if Some(node) == target {
                return dist;
            }
            for &(w, eid) in &g.adjacency[node] {
                if Some(eid) == skip_edge || self.settled[w] {
                    continue;
                }
                let nd = dist + g.edges[eid].length;
                if nd <= radius && nd < self.dist[w] {
                    if self.dist[w] == f64::INFINITY {
                        self.touched.push(w);
                    }
                    self.dist[w] = nd;
                    self.heap.push(HeapItem { dist: nd, node: w });
                }
            }
        }
        match target {
            Some(t) if self.settled[t] => self.dist[t],
            Some(_) => f64::INFINITY,
            None => 0.0,
        }
    }

    fn predecessor_path(&self, g: &SpannerGraph, src: usize, dst: usize) -> Vec<usize> {
        // Walk back along tight edges between settled vertices.
        let mut path = vec![dst];
        let mut v = dst;
        while v != src {
            let dv = self.dist[v];
            let prev = g.adjacency[v]
                .iter()
                .filter(|&&(u, _)| self.settled[u] && self.dist[u] < dv)
                .min_by(|&&(u, e), &&(w, f)| {
                    let a = (self.dist[u] + g.edges[e].length - dv).abs();
                    let b = (self.dist[w] + g.edges[f].length - dv).abs();
                    a.total_cmp(&b).then(u.cmp(&w))
                })
                .map(|&(u, _)| u)
                .expect("settled vertex has a settled predecessor");
            path.push(prev);
            v = prev;
        }
        path.reverse();
        path
    }
}

fn check_vertex(g: &SpannerGraph, v: usize) -> Result<()> {
    if v >= g.num_vertices() {
        Err(Error::UnknownVertex(v))
    } else {
        Ok(())
    }
}

/// Length and vertex sequence of a shortest path; `(∞, [])` when `u` and
/// `v` are disconnected.
pub fn shortest_path(g: &SpannerGraph, u: usize, v: usize) -> Result<(f64, Vec<usize>)> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    let mut dj = Dijkstra::new(g.num_vertices());
    let d = dj.run(g, u, Some(v), f64::INFINITY, None, |_, _| {});
    if d.is_infinite() {
        return Ok((d, Vec::new()));
    }
    Ok((d, dj.predecessor_path(g, u, v)))
}

/// Dijkstra distances from `source` to every vertex.
pub fn single_source(g: &SpannerGraph, source: usize) -> Result<Vec<f64>> {
    check_vertex(g, source)?;
    let mut out = vec![f64::INFINITY; g.num_vertices()];
    Dijkstra::new(g.num_vertices()).run(g, source, None, f64::INFINITY, None, |v, d| out[v] = d);
    Ok(out)
}

fn validate_input(points: &PointSet, cfg: &SpannerConfig) -> Result<()> {
    cfg.validate()?;
    if let Some((a, b)) = points.find_duplicate() {
        return Err(Error::DuplicatePoints(a, b));
    }
    Ok(())
}

/// All vertex pairs in processing order: by distance, then by tie-break.
fn sorted_pairs(points: &PointSet, tie: TieBreak) -> Vec<(f64, u32, u32)> {
    let n = points.len();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((points[i].distance(&points[j]), i as u32, j as u32));
        }
    }
    match tie {
        TieBreak::MinMaxId => pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2)))),
        TieBreak::ReverseId => pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then((b.2, b.1).cmp(&(a.2, a.1)))),
    }
    pairs
}

fn greedy_threshold(t: f64, d: f64) -> f64 {
    t * d * (1.0 + GREEDY_SLACK)
}

/// Greedy spanner by the textbook procedure: every pair is tested with a
/// fresh shortest-path computation on the current graph.
pub fn greedy_spanner_naive(points: &PointSet, cfg: &SpannerConfig) -> Result<SpannerGraph> {
    validate_input(points, cfg)?;
    let mut g = SpannerGraph::empty(points.clone());
    let mut dj = Dijkstra::new(points.len());
    for (d, p, q) in sorted_pairs(points, cfg.tie_break) {
        let (p, q) = (p as usize, q as usize);
        let ds = dj.run(&g, p, Some(q), f64::INFINITY, None, |_, _| {});
        if ds > greedy_threshold(cfg.t, d) {
            g.push_edge(p, q);
        }
    }
    Ok(g)
}

/// Index into the strict upper triangle of an `n × n` matrix.
#[inline]
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Greedy spanner using Dijkstra searches truncated at radius `t·d(P,Q)`.
///
/// Distances found by earlier searches are cached; since the graph only
/// grows they stay valid upper bounds, and a pair whose cached bound already
/// meets the stretch test is skipped without a search. Produces the same
/// edge list as [`greedy_spanner_naive`].
pub fn greedy_spanner_fast(points: &PointSet, cfg: &SpannerConfig) -> Result<SpannerGraph> {
    validate_input(points, cfg)?;
    let n = points.len();
    let mut g = SpannerGraph::empty(points.clone());
    let mut bound = vec![f64::INFINITY; n * n.saturating_sub(1) / 2];
    let mut dj = Dijkstra::new(n);
    for (d, p, q) in sorted_pairs(points, cfg.tie_break) {
        let (p, q) = (p as usize, q as usize);
        let thr = greedy_threshold(cfg.t, d);
        if bound[tri_index(n, p, q)] <= thr {
            continue;
        }
        let ds = dj.run(&g, p, None, thr, None, |v, dv| {
            if v != p {
                let k = tri_index(n, p, v);
                if dv < bound[k] {
                    bound[k] = dv;
                }
            }
        });
        debug_assert_eq!(ds, 0.0);
        if bound[tri_index(n, p, q)] > thr {
            g.push_edge(p, q);
            bound[tri_index(n, p, q)] = d;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub max_observed_ratio: f64,
    /// `(p, q, ratio)` with `p < q`, sorted by pair.
    pub violating_pairs: Vec<(usize, usize, f64)>,
}

/// All-pairs check of `d_S(P,Q) ≤ t·d(P,Q)`, with relative slack
/// [`VERIFY_SLACK`].
pub fn verify_stretch(g: &SpannerGraph, t: f64) -> StretchReport {
    let n = g.num_vertices();
    let limit = t * (1.0 + VERIFY_SLACK);
    let rows: Vec<(f64, Vec<(usize, usize, f64)>)> = (0..n)
        .into_par_iter()
        .map_init(
            || Dijkstra::new(n),
            |dj, p| {
                let mut dist = vec![f64::INFINITY; n];
                dj.run(g, p, None, f64::INFINITY, None, |v, d| dist[v] = d);
                let mut worst: f64 = 1.0;
                let mut bad = Vec::new();
                for q in p + 1..n {
                    let ratio = dist[q] / g.points[p].distance(&g.points[q]);
                    worst = worst.max(ratio);
                    if ratio > limit {
                        bad.push((p, q, ratio));
                    }
                }
                (worst, bad)
            },
        )
        .collect();
    let max_observed_ratio = if n < 2 { 1.0 } else { rows.iter().map(|r| r.0).fold(1.0, f64::max) };
    let violating_pairs = rows.into_iter().flat_map(|r| r.1).collect();
    StretchReport { max_observed_ratio, violating_pairs }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShortcutReport {
    /// Minimum over edges of (alternative path length) / (t·|AB|).
    pub worst_margin: f64,
    /// Ids of edges with an alternative path of length ≤ t·|AB|.
    pub violating_edges: Vec<usize>,
}

/// Checks that no edge `AB` has another `A`–`B` path of length at most
/// `t·|AB|` (relative slack [`VERIFY_SLACK`]).
pub fn verify_no_shortcut(g: &SpannerGraph, t: f64) -> ShortcutReport {
    let n = g.num_vertices();
    let margins: Vec<f64> = (0..g.num_edges())
        .into_par_iter()
        .map_init(
            || Dijkstra::new(n),
            |dj, id| {
                let e = g.edges[id];
                let alt = dj.run(g, e.i, Some(e.j), f64::INFINITY, Some(id), |_, _| {});
                alt / (t * e.length)
            },
        )
        .collect();
    let violating_edges = margins
        .iter()
        .enumerate()
        .filter(|(_, &m)| m <= 1.0 + VERIFY_SLACK)
        .map(|(id, _)| id)
        .collect();
    ShortcutReport { worst_margin: margins.iter().copied().fold(f64::INFINITY, f64::min), violating_edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(c: &[(f64, f64)]) -> PointSet {
        PointSet::from_coords(c.iter().copied()).unwrap()
    }

    fn square() -> PointSet {
        pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    fn line4() -> PointSet {
        pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)])
    }

    /// Floyd–Warshall distances, independent of the Dijkstra code.
    fn apsp(g: &SpannerGraph) -> Vec<Vec<f64>> {
        let n = g.num_vertices();
        let mut d = vec![vec![f64::INFINITY; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0.0;
        }
        for e in g.edges() {
            d[e.i][e.j] = e.length;
            d[e.j][e.i] = e.length;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        d
    }

    #[test]
    fn two_points() {
        let g = greedy_spanner_naive(&pts(&[(0.0, 0.0), (1.0, 0.0)]), &SpannerConfig::new(2.0)).unwrap();
        assert_eq!(g.edge_set(), vec![(0, 1)]);
    }

    #[test]
    fn collinear_points_give_a_path() {
        for t in [1.01, 1.5, 3.0] {
            for build in [greedy_spanner_naive, greedy_spanner_fast] {
                let g = build(&line4(), &SpannerConfig::new(t)).unwrap();
                assert_eq!(g.edge_set(), vec![(0, 1), (1, 2), (2, 3)]);
            }
        }
    }

    #[test]
    fn unit_square_keeps_only_sides() {
        let cfg = SpannerConfig::new(1.5);
        let naive = greedy_spanner_naive(&square(), &cfg).unwrap();
        assert_eq!(naive.edge_set(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(greedy_spanner_fast(&square(), &cfg).unwrap().edges(), naive.edges());
        // Brute-force distances: diagonals are 2 ≤ 1.5·√2.
        let d = apsp(&naive);
        assert_eq!(d[0][2], 2.0);
        assert!(d[0][2] <= 1.5 * 2f64.sqrt());
        assert!(naive.is_connected());
    }

    #[test]
    fn singleton_and_errors() {
        let g = greedy_spanner_fast(&pts(&[(0.0, 0.0)]), &SpannerConfig::new(2.0)).unwrap();
        assert_eq!(g.num_edges(), 0);
        let dup = pts(&[(0.0, 0.0), (1.0, 1.0), (0.0, 0.0)]);
        assert_eq!(greedy_spanner_naive(&dup, &SpannerConfig::new(2.0)), Err(Error::DuplicatePoints(0, 2)));
        assert_eq!(greedy_spanner_fast(&square(), &SpannerConfig::new(1.0)), Err(Error::InvalidStretch(1.0)));
    }

    #[test]
    fn shortest_paths() {
        let g = SpannerGraph::from_edges(pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]), [(0, 1), (1, 2)]).unwrap();
        assert_eq!(shortest_path(&g, 0, 2).unwrap(), (2.0, vec![0, 1, 2]));
        assert_eq!(shortest_path(&g, 1, 1).unwrap(), (0.0, vec![1]));
        assert_eq!(shortest_path(&g, 0, 7), Err(Error::UnknownVertex(7)));
        let sq = greedy_spanner_naive(&square(), &SpannerConfig::new(1.5)).unwrap();
        assert_eq!(shortest_path(&sq, 0, 2).unwrap(), (2.0, vec![0, 1, 2]));
        let split = SpannerGraph::from_edges(square(), [(0, 1)]).unwrap();
        let (d, p) = shortest_path(&split, 0, 2).unwrap();
        assert!(d.is_infinite() && p.is_empty());
    }

    #[test]
    fn stretch_reports() {
        let path = greedy_spanner_naive(&line4(), &SpannerConfig::new(1.01)).unwrap();
        let r = verify_stretch(&path, 1.01);
        assert_eq!(r.max_observed_ratio, 1.0);
        assert!(r.violating_pairs.is_empty());

        let sq = greedy_spanner_naive(&square(), &SpannerConfig::new(1.5)).unwrap();
        let r = verify_stretch(&sq, 1.5);
        assert!((r.max_observed_ratio - 2f64.sqrt()).abs() < 1e-12);
        assert!(r.violating_pairs.is_empty());
        let r = verify_stretch(&sq, 1.3);
        let pairs: Vec<_> = r.violating_pairs.iter().map(|v| (v.0, v.1)).collect();
        assert_eq!(pairs, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn shortcut_reports() {
        let single = greedy_spanner_naive(&pts(&[(0.0, 0.0), (1.0, 0.0)]), &SpannerConfig::new(2.0)).unwrap();
        let r = verify_no_shortcut(&single, 2.0);
        assert!(r.violating_edges.is_empty());
        assert!(r.worst_margin.is_infinite());

        let sq = greedy_spanner_naive(&square(), &SpannerConfig::new(1.5)).unwrap();
        let r = verify_no_shortcut(&sq, 1.5);
        assert!(r.violating_edges.is_empty());
        assert!((r.worst_margin - 3.0 / 1.5).abs() < 1e-12);

        let with_diagonals =
            SpannerGraph::from_edges(square(), [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)]).unwrap();
        let r = verify_no_shortcut(&with_diagonals, 1.5);
        let flagged: Vec<_> = r.violating_edges.iter().map(|&id| with_diagonals.edges()[id]).map(|e| (e.i, e.j)).collect();
        assert_eq!(flagged, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn tie_breaks_are_deterministic() {
        let cfg = SpannerConfig { t: 1.5, tie_break: TieBreak::ReverseId };
        let a = greedy_spanner_naive(&square(), &cfg).unwrap();
        let b = greedy_spanner_fast(&square(), &cfg).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.edge_set(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(SpannerGraph::from_edges(square(), [(0, 0)]).is_err());
        assert!(SpannerGraph::from_edges(square(), [(0, 1), (1, 0)]).is_err());
        assert_eq!(SpannerGraph::from_edges(square(), [(0, 9)]), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn triangle_index_is_dense() {
        let n = 7;
        let mut seen = vec![false; n * (n - 1) / 2];
        for i in 0..n {
            for j in i + 1..n {
                let k = tri_index(n, i, j);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(k, tri_index(n, j, i));
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }
}
