//! Crossing graph of an embedded spanner, its degeneracy, per-edge crossing
//! profiles, and empirical checks of the structural properties of greedy
//! spanner edges (gap property, separation of parallel edges, endpoint
//! ordering of long crossing edges).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{long_ratio, ordering_theta_limit};
use crate::error::{Error, Result};
use crate::geom::{angle_between, crossing_point, param_along, project_interval, segments_cross, touches_interior, Point, Segment};
use crate::spanner::{SpannerGraph, VERIFY_SLACK};

/// Relative distance (to the drawing's diameter) below which two crossings
/// on one edge are considered coincident.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-12;

/// Graph on spanner edges; two edges are adjacent iff their segments cross
/// at an interior point. Node `k` is spanner edge `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingGraph {
    pub nodes: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
    pub crossing_points: BTreeMap<(usize, usize), Point>,
}

impl CrossingGraph {
    pub fn num_crossings(&self) -> usize {
        self.crossing_points.len()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Crossing point of two edges, in either order.
    pub fn crossing(&self, a: usize, b: usize) -> Option<&Point> {
        self.crossing_points.get(&(a.min(b), a.max(b)))
    }

    /// Graph on `n` nodes from an explicit adjacency list, without geometry.
    pub fn from_adjacency(adjacency: Vec<Vec<usize>>) -> Self {
        CrossingGraph { nodes: (0..adjacency.len()).collect(), adjacency, crossing_points: BTreeMap::new() }
    }
}

fn shares_endpoint(g: &SpannerGraph, a: usize, b: usize) -> bool {
    let (e, f) = (g.edges()[a], g.edges()[b]);
    e.i == f.i || e.i == f.j || e.j == f.i || e.j == f.j
}

/// Finds every crossing pair of edges by a pruned all-pairs scan.
///
/// Fails on collinear overlaps, on vertices lying inside other edges, and on
/// crossings that coincide along an edge (three or more edges through one
/// point).
pub fn build_crossing_graph(g: &SpannerGraph) -> Result<CrossingGraph> {
    let m = g.num_edges();
    let segs: Vec<Segment> = (0..m).map(|k| g.segment(k)).collect();
    // Scan edges in order of their left end; a pair can only interact while
    // the second one starts before the first one ends.
    let mut order: Vec<usize> = (0..m).collect();
    let xmin = |s: &Segment| s.a.x.min(s.b.x);
    let xmax = |s: &Segment| s.a.x.max(s.b.x);
    order.sort_by(|&a, &b| xmin(&segs[a]).total_cmp(&xmin(&segs[b])).then(a.cmp(&b)));

    let found: Vec<Vec<(usize, usize, Point)>> = (0..m)
        .into_par_iter()
        .map(|pos| -> Result<Vec<(usize, usize, Point)>> {
            let a = order[pos];
            let sa = &segs[a];
            let limit = xmax(sa);
            let mut out = Vec::new();
            for &b in &order[pos + 1..] {
                let sb = &segs[b];
                if xmin(sb) > limit {
                    break;
                }
                if shares_endpoint(g, a, b) {
                    // Only a collinear overlap can make these interact.
                    segments_cross(sa, sb)?;
                    continue;
                }
                let crosses = segments_cross(sa, sb)?;
                for (p, s) in [(&sa.a, sb), (&sa.b, sb), (&sb.a, sa), (&sb.b, sa)] {
                    if touches_interior(p, s) {
                        return Err(Error::VertexOnEdge(p.x, p.y, [s.a.x, s.a.y, s.b.x, s.b.y]));
                    }
                }
                if crosses {
                    out.push((a.min(b), a.max(b), crossing_point(sa, sb)?));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut adjacency = vec![Vec::new(); m];
    let mut crossing_points = BTreeMap::new();
    for (a, b, p) in found.into_iter().flatten() {
        adjacency[a].push(b);
        adjacency[b].push(a);
        crossing_points.insert((a, b), p);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let cg = CrossingGraph { nodes: (0..m).collect(), adjacency, crossing_points };
    check_coincident(g, &cg)?;
    Ok(cg)
}

fn check_coincident(g: &SpannerGraph, cg: &CrossingGraph) -> Result<()> {
    let tol = COINCIDENCE_TOLERANCE * g.points().diameter();
    for (edge, partners) in cg.adjacency.iter().enumerate() {
        if partners.len() < 2 {
            continue;
        }
        let seg = g.segment(edge);
        let mut along: Vec<(f64, Point)> = partners
            .iter()
            .map(|&o| {
                let p = *cg.crossing(edge, o).expect("crossing recorded");
                (param_along(&seg, &p), p)
            })
            .collect();
        along.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in along.windows(2) {
            if w[0].1.distance(&w[1].1) < tol {
                return Err(Error::CoincidentCrossings { edge, x: w[1].1.x, y: w[1].1.y });
            }
        }
    }
    Ok(())
}

/// Exact degeneracy by repeatedly removing a minimum-degree node. The
/// returned order is a witness: every node has at most `k` neighbours
/// later in it.
pub fn degeneracy(cg: &CrossingGraph) -> (usize, Vec<usize>) {
    let n = cg.adjacency.len();
    let mut degree: Vec<usize> = cg.adjacency.iter().map(Vec::len).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in (0..n).rev() {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut k = 0;
    let mut low = 0;
    while order.len() < n {
        // Buckets hold stale entries; skip those whose degree has moved.
        let v = loop {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().expect("non-empty bucket");
            if !removed[v] && degree[v] == low {
                break v;
            }
        };
        removed[v] = true;
        k = k.max(low);
        order.push(v);
        for &w in &cg.adjacency[v] {
            if !removed[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
                if degree[w] < low {
                    low = degree[w];
                }
            }
        }
    }
    (k, order)
}

/// Angle-class width for grouping nearly parallel edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleBucketConfig {
    pub theta: f64,
}

impl AngleBucketConfig {
    /// The widest admissible class for stretch `t`, just inside
    /// `(t-1)/(2(t+1))`.
    pub fn for_ordering(t: f64) -> Self {
        AngleBucketConfig { theta: crate::bounds::ordering_theta(t) }
    }

    fn class_of(&self, seg: &Segment) -> usize {
        (seg.line_angle() / self.theta).floor() as usize
    }
}

/// Edges crossing one edge `AB`, counted by length ratio `|PQ|/|AB|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingProfile {
    pub edge: usize,
    /// Ratio in `[0, epsilon)`.
    pub below_epsilon: usize,
    /// Ratio in `[epsilon, 1)`.
    pub near: usize,
    /// Ratio in `[1, 3t(t+1)/(t-1))`.
    pub comparable: usize,
    /// Ratio at least `3t(t+1)/(t-1)`.
    pub long: usize,
    /// Long crossing edges per angle class `⌊angle/θ⌋`, sorted by class.
    pub long_by_angle: Vec<(usize, usize)>,
}

impl CrossingProfile {
    /// Crossing edges at least as long as `AB`.
    pub fn longer_count(&self) -> usize {
        self.comparable + self.long
    }

    pub fn shorter_count(&self) -> usize {
        self.below_epsilon + self.near
    }

    pub fn total(&self) -> usize {
        self.shorter_count() + self.longer_count()
    }
}

fn check_edge(g: &SpannerGraph, edge: usize) -> Result<()> {
    if edge >= g.num_edges() {
        Err(Error::UnknownEdge(edge))
    } else {
        Ok(())
    }
}

pub fn crossing_profile(
    g: &SpannerGraph,
    cg: &CrossingGraph,
    edge: usize,
    t: f64,
    epsilon: f64,
    cfg: &AngleBucketConfig,
) -> Result<CrossingProfile> {
    check_edge(g, edge)?;
    let base = g.edges()[edge].length;
    let long_at = long_ratio(t);
    let mut profile = CrossingProfile {
        edge,
        below_epsilon: 0,
        near: 0,
        comparable: 0,
        long: 0,
        long_by_angle: Vec::new(),
    };
    let mut by_angle = BTreeMap::new();
    for &other in &cg.adjacency[edge] {
        let ratio = g.edges()[other].length / base;
        if ratio < epsilon.min(1.0) {
            profile.below_epsilon += 1;
        } else if ratio < 1.0 {
            profile.near += 1;
        } else if ratio < long_at {
            profile.comparable += 1;
        } else {
            profile.long += 1;
            *by_angle.entry(cfg.class_of(&g.segment(other))).or_insert(0) += 1;
        }
    }
    profile.long_by_angle = by_angle.into_iter().collect();
    Ok(profile)
}

/// Number of edges crossing each edge that are at least as long as it.
pub fn longer_crossing_counts(g: &SpannerGraph, cg: &CrossingGraph) -> Vec<usize> {
    let edges = g.edges();
    cg.adjacency
        .iter()
        .enumerate()
        .map(|(e, list)| list.iter().filter(|&&o| edges[o].length >= edges[e].length).count())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    /// Minimum over edge pairs of `max(|MP|, |NQ|) / min(|MN|, |PQ|)`,
    /// taking the worse endpoint matching.
    pub worst_ratio: f64,
    /// Edge-id pairs `(a, b)`, `a < b`, below `(t-1)/(2t)`.
    pub violations: Vec<(usize, usize)>,
}

fn endpoints(s: &Segment) -> [&Point; 2] {
    [&s.a, &s.b]
}

/// `max(|MP|, |NQ|)` and `min(|MP|, |NQ|)` for both matchings of the
/// endpoints of `s` with those of `u`.
fn matchings(s: &Segment, u: &Segment) -> [(f64, f64); 2] {
    let [m, n] = endpoints(s);
    let [p, q] = endpoints(u);
    let direct = (m.distance(p), n.distance(q));
    let swapped = (m.distance(q), n.distance(p));
    [(direct.0.max(direct.1), direct.0.min(direct.1)), (swapped.0.max(swapped.1), swapped.0.min(swapped.1))]
}

/// Checks `max(|MP|, |NQ|) ≥ (t-1)/(2t) · min(|MN|, |PQ|)` for every pair of
/// distinct edges and both endpoint matchings.
pub fn verify_gap_property(g: &SpannerGraph, t: f64) -> GapReport {
    let m = g.num_edges();
    let needed = (t - 1.0) / (2.0 * t) * (1.0 - VERIFY_SLACK);
    let segs: Vec<Segment> = (0..m).map(|k| g.segment(k)).collect();
    let rows: Vec<(f64, Vec<(usize, usize)>)> = (0..m)
        .into_par_iter()
        .map(|a| {
            let mut worst = f64::INFINITY;
            let mut bad = Vec::new();
            for b in a + 1..m {
                let shorter = segs[a].length().min(segs[b].length());
                let [d, s] = matchings(&segs[a], &segs[b]);
                let ratio = d.0.min(s.0) / shorter;
                worst = worst.min(ratio);
                if ratio < needed {
                    bad.push((a, b));
                }
            }
            (worst, bad)
        })
        .collect();
    GapReport {
        worst_ratio: rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min),
        violations: rows.into_iter().flat_map(|r| r.1).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelGapReport {
    pub theta: f64,
    /// Number of edge pairs within angle `theta`.
    pub pairs_checked: usize,
    pub worst_ratio: f64,
    pub violations: Vec<(usize, usize)>,
}

/// For every pair of edges within angle `theta`, checks
/// `min(|MP|, |NQ|) ≥ (t - 1 - 2 sin(θ/2))/(2t) · min(|MN|, |PQ|)` under the
/// endpoint matching with the smaller total distance.
pub fn verify_parallel_separation(g: &SpannerGraph, t: f64, theta: f64) -> ParallelGapReport {
    let m = g.num_edges();
    let needed = (t - 1.0 - 2.0 * (theta / 2.0).sin()) / (2.0 * t) * (1.0 - VERIFY_SLACK);
    let segs: Vec<Segment> = (0..m).map(|k| g.segment(k)).collect();
    let rows: Vec<(usize, f64, Vec<(usize, usize)>)> = (0..m)
        .into_par_iter()
        .map(|a| {
            let (mut count, mut worst, mut bad) = (0, f64::INFINITY, Vec::new());
            for b in a + 1..m {
                if angle_between(&segs[a], &segs[b]) > theta {
                    continue;
                }
                count += 1;
                let shorter = segs[a].length().min(segs[b].length());
                let [d, s] = matchings(&segs[a], &segs[b]);
                let better = if d.0 + d.1 <= s.0 + s.1 { d } else { s };
                let ratio = better.1 / shorter;
                worst = worst.min(ratio);
                if ratio < needed {
                    bad.push((a, b));
                }
            }
            (count, worst, bad)
        })
        .collect();
    ParallelGapReport {
        theta,
        pairs_checked: rows.iter().map(|r| r.0).sum(),
        worst_ratio: rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min),
        violations: rows.into_iter().flat_map(|r| r.2).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingReport {
    pub ordered: bool,
    /// Long crossing edges considered.
    pub qualifying: usize,
    /// Pairs `(outer, inner)` whose projections on their class baseline nest.
    pub nested_pairs: Vec<(usize, usize)>,
}

/// Groups the long edges crossing `edge` into angle classes of width
/// `cfg.theta`, projects each class onto its baseline (the member whose
/// line angle in `[0, π)` is smallest) and reports strictly nested
/// projection intervals.
pub fn verify_endpoint_ordering(
    g: &SpannerGraph,
    cg: &CrossingGraph,
    edge: usize,
    t: f64,
    cfg: &AngleBucketConfig,
) -> Result<OrderingReport> {
    check_edge(g, edge)?;
    let limit = ordering_theta_limit(t);
    if !(cfg.theta > 0.0 && cfg.theta < limit) {
        return Err(Error::InvalidParams(format!("theta {} must lie in (0, {limit})", cfg.theta)));
    }
    let min_len = long_ratio(t) * g.edges()[edge].length;
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut qualifying = 0;
    for &other in &cg.adjacency[edge] {
        if g.edges()[other].length >= min_len {
            qualifying += 1;
            classes.entry(cfg.class_of(&g.segment(other))).or_default().push(other);
        }
    }
    let mut nested_pairs = Vec::new();
    for members in classes.values() {
        let baseline = *members
            .iter()
            .min_by(|&&a, &&b| g.segment(a).line_angle().total_cmp(&g.segment(b).line_angle()).then(a.cmp(&b)))
            .expect("class is non-empty");
        let base = g.segment(baseline);
        let spans: Vec<(usize, f64, f64)> = members
            .iter()
            .map(|&e| {
                let (u, v) = project_interval(&g.segment(e), &base);
                (e, u.min(v), u.max(v))
            })
            .collect();
        for (i, a) in spans.iter().enumerate() {
            for b in &spans[i + 1..] {
                if a.1 < b.1 && b.2 < a.2 {
                    nested_pairs.push((a.0, b.0));
                } else if b.1 < a.1 && a.2 < b.2 {
                    nested_pairs.push((b.0, a.0));
                }
            }
        }
    }
    nested_pairs.sort_unstable();
    Ok(OrderingReport { ordered: nested_pairs.is_empty(), qualifying, nested_pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;
    use crate::spanner::{greedy_spanner_fast, SpannerConfig};
    use proptest::prelude::*;

    fn graph(coords: &[(f64, f64)], edges: &[(usize, usize)]) -> SpannerGraph {
        SpannerGraph::from_edges(PointSet::from_coords(coords.iter().copied()).unwrap(), edges.iter().copied()).unwrap()
    }

    fn x_pattern() -> SpannerGraph {
        graph(&[(0.0, 0.0), (2.0, 2.0), (0.0, 2.0), (2.0, 0.0)], &[(0, 1), (2, 3)])
    }

    /// One long horizontal edge crossed by three disjoint verticals.
    fn comb() -> SpannerGraph {
        graph(
            &[(0.0, 0.0), (10.0, 0.0), (2.0, -1.0), (2.0, 1.0), (5.0, -1.0), (5.0, 1.0), (8.0, -1.0), (8.0, 1.0)],
            &[(0, 1), (2, 3), (4, 5), (6, 7)],
        )
    }

    #[test]
    fn x_pattern_has_one_crossing() {
        let cg = build_crossing_graph(&x_pattern()).unwrap();
        assert_eq!(cg.num_crossings(), 1);
        assert_eq!(cg.adjacency, vec![vec![1], vec![0]]);
        let p = cg.crossing(1, 0).unwrap();
        assert_eq!((p.x, p.y), (1.0, 1.0));
    }

    #[test]
    fn planar_path_has_none() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)], &[(0, 1), (1, 2), (2, 3)]);
        let cg = build_crossing_graph(&g).unwrap();
        assert_eq!(cg.nodes.len(), 3);
        assert_eq!(cg.num_crossings(), 0);
        assert_eq!(degeneracy(&cg).0, 0);
    }

    #[test]
    fn comb_is_a_star() {
        let cg = build_crossing_graph(&comb()).unwrap();
        assert_eq!(cg.adjacency[0], vec![1, 2, 3]);
        let (k, order) = degeneracy(&cg);
        assert_eq!(k, 1);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let overlap = graph(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (3.0, 0.0), (5.0, 5.0)], &[(0, 1), (2, 3)]);
        assert!(matches!(build_crossing_graph(&overlap), Err(Error::DegenerateOverlap(..))));
        let touch = graph(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (1.0, 1.0)], &[(0, 1), (2, 3)]);
        assert!(matches!(build_crossing_graph(&touch), Err(Error::VertexOnEdge(..))));
        // Three edges through (1, 1).
        let star = graph(
            &[(0.0, 0.0), (2.0, 2.0), (0.0, 2.0), (2.0, 0.0), (1.0, -1.0), (1.0, 3.0)],
            &[(0, 1), (2, 3), (4, 5)],
        );
        assert!(matches!(build_crossing_graph(&star), Err(Error::CoincidentCrossings { .. })));
    }

    #[test]
    fn degeneracy_small_cases() {
        assert_eq!(degeneracy(&CrossingGraph::from_adjacency(vec![vec![]; 4])).0, 0);
        let triangle = CrossingGraph::from_adjacency(vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
        assert_eq!(degeneracy(&triangle).0, 2);
        let k4 = CrossingGraph::from_adjacency((0..4).map(|v| (0..4).filter(|&w| w != v).collect()).collect());
        assert_eq!(degeneracy(&k4).0, 3);
    }

    /// Brute-force degeneracy: the largest minimum degree over all induced
    /// subgraphs.
    fn brute_degeneracy(adj: &[Vec<usize>]) -> usize {
        let n = adj.len();
        let mut best = 0;
        for mask in 1u32..(1 << n) {
            let min_deg = (0..n)
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| adj[v].iter().filter(|&&w| mask >> w & 1 == 1).count())
                .min()
                .unwrap();
            best = best.max(min_deg);
        }
        best
    }

    fn arb_graph() -> impl Strategy<Value = Vec<Vec<usize>>> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut adj = vec![Vec::new(); n];
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            adj[i].push(j);
                            adj[j].push(i);
                        }
                        k += 1;
                    }
                }
                adj
            })
        })
    }

    proptest! {
        #[test]
        fn degeneracy_matches_brute_force(adj in arb_graph()) {
            let cg = CrossingGraph::from_adjacency(adj.clone());
            let (k, order) = degeneracy(&cg);
            prop_assert_eq!(k, brute_degeneracy(&adj));
            let mut pos = vec![0; adj.len()];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            for (v, list) in adj.iter().enumerate() {
                prop_assert!(list.iter().filter(|&&w| pos[w] > pos[v]).count() <= k);
            }
        }
    }

    #[test]
    fn profiles() {
        let x = x_pattern();
        let cg = build_crossing_graph(&x).unwrap();
        let p = crossing_profile(&x, &cg, 0, 2.0, 0.5, &AngleBucketConfig { theta: 0.1 }).unwrap();
        assert_eq!(p.longer_count(), 1);
        assert_eq!(p.comparable, 1);
        assert_eq!(p.shorter_count(), 0);
        assert_eq!(crossing_profile(&x, &cg, 5, 2.0, 0.5, &AngleBucketConfig { theta: 0.1 }), Err(Error::UnknownEdge(5)));

        let c = comb();
        let cg = build_crossing_graph(&c).unwrap();
        let p = crossing_profile(&c, &cg, 0, 2.0, 0.5, &AngleBucketConfig { theta: 0.1 }).unwrap();
        assert_eq!((p.below_epsilon, p.near, p.longer_count()), (3, 0, 0));
        let p = crossing_profile(&c, &cg, 1, 1.5, 0.5, &AngleBucketConfig { theta: 0.1 }).unwrap();
        // Ratio 5 is below 3·1.5·2.5/0.5 = 22.5.
        assert_eq!((p.comparable, p.long), (1, 0));
    }

    #[test]
    fn gap_property_cases() {
        let single = graph(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
        assert!(verify_gap_property(&single, 2.0).violations.is_empty());

        let path = graph(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)], &[(0, 1), (1, 2), (2, 3)]);
        let r = verify_gap_property(&path, 1.5);
        assert!(r.violations.is_empty());
        assert_eq!(r.worst_ratio, 1.0);

        let parallel = graph(&[(0.0, 0.0), (10.0, 0.0), (0.0, 0.1), (10.0, 0.1)], &[(0, 1), (2, 3)]);
        let r = verify_gap_property(&parallel, 2.0);
        assert_eq!(r.violations, vec![(0, 1)]);
        assert!((r.worst_ratio - 0.01).abs() < 1e-12);
    }

    #[test]
    fn parallel_separation_flags_close_parallels() {
        let parallel = graph(&[(0.0, 0.0), (10.0, 0.0), (0.0, 0.1), (10.0, 0.1)], &[(0, 1), (2, 3)]);
        let r = verify_parallel_separation(&parallel, 2.0, 0.25);
        assert_eq!(r.pairs_checked, 1);
        assert_eq!(r.violations, vec![(0, 1)]);
    }

    #[test]
    fn endpoint_ordering_detects_nesting() {
        // Two long horizontal-ish edges crossing a short vertical one, the
        // second nested inside the first.
        let g = graph(
            &[(5.0, -0.5), (5.0, 0.5), (-100.0, 0.0), (100.0, 0.1), (-40.0, 0.2), (40.0, 0.3)],
            &[(0, 1), (2, 3), (4, 5)],
        );
        let cg = build_crossing_graph(&g).unwrap();
        let cfg = AngleBucketConfig::for_ordering(2.0);
        let r = verify_endpoint_ordering(&g, &cg, 0, 2.0, &cfg).unwrap();
        assert_eq!(r.qualifying, 2);
        assert_eq!(r.nested_pairs, vec![(1, 2)]);
        assert!(!r.ordered);

        let planar = graph(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
        let cg = build_crossing_graph(&planar).unwrap();
        assert!(verify_endpoint_ordering(&planar, &cg, 0, 2.0, &cfg).unwrap().ordered);
        assert!(verify_endpoint_ordering(&planar, &cg, 0, 2.0, &AngleBucketConfig { theta: 0.5 }).is_err());
    }

    #[test]
    fn single_long_crossing_is_ordered() {
        let g = graph(&[(5.0, -0.5), (5.0, 0.5), (-100.0, 0.0), (100.0, 0.1)], &[(0, 1), (2, 3)]);
        let cg = build_crossing_graph(&g).unwrap();
        let r = verify_endpoint_ordering(&g, &cg, 0, 2.0, &AngleBucketConfig::for_ordering(2.0)).unwrap();
        assert!(r.ordered);
        assert_eq!(r.qualifying, 1);
    }

    #[test]
    fn random_spanner_crossing_graph_is_consistent() {
        let g = greedy_spanner_fast(&crate::gen::uniform_points(150, 11), &SpannerConfig::new(1.3)).unwrap();
        let cg = build_crossing_graph(&g).unwrap();
        for (a, list) in cg.adjacency.iter().enumerate() {
            assert!(!list.contains(&a));
            for &b in list {
                assert!(cg.adjacency[b].contains(&a));
                assert!(segments_cross(&g.segment(a), &g.segment(b)).unwrap());
            }
        }
        // Brute-force pair scan agrees with the pruned scan.
        let m = g.num_edges();
        let mut count = 0;
        for a in 0..m {
            for b in a + 1..m {
                count += segments_cross(&g.segment(a), &g.segment(b)).unwrap() as usize;
            }
        }
        assert_eq!(count, cg.num_crossings());
    }
}
