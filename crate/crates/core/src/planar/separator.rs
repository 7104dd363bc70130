use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::planar::planarize::{planarize, Planarization};
use crate::spanner::SpannerGraph;

/// Size constant of the planar separator engine: separators have at most
/// `SEPARATOR_CONSTANT · √N` vertices.
pub const SEPARATOR_CONSTANT: f64 = 4.0 * std::f64::consts::SQRT_2;

const BALANCE_LIMIT: f64 = 2.0 / 3.0;
const BALANCE_SLACK: f64 = 1e-12;

/// A vertex set whose removal leaves no edge between `side_a` and `side_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Separator {
    pub vertices: Vec<usize>,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    /// Heavier side's weight over the total weight.
    pub balance: f64,
}

impl Separator {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks that the three sets partition `0..n` and that no edge joins
    /// the two sides.
    pub fn verify(&self, n: usize, edges: &[(usize, usize)]) -> bool {
        let mut label = vec![0u8; n];
        for (tag, set) in [(1u8, &self.vertices), (2, &self.side_a), (3, &self.side_b)] {
            for &v in set {
                if v >= n || label[v] != 0 {
                    return false;
                }
                label[v] = tag;
            }
        }
        label.iter().all(|&l| l != 0)
            && edges.iter().all(|&(a, b)| !matches!((label[a], label[b]), (2, 3) | (3, 2)))
    }
}

/// Separator of a connected plane drawing: balance at most 2/3 of `weights`
/// and size at most [`SEPARATOR_CONSTANT`]` · √N`.
///
/// Candidates are single BFS levels, pairs of levels around the weighted
/// median level, and pairs of levels plus a fundamental cycle of a BFS tree
/// in a triangulation of the drawing. Every candidate is checked by flood
/// fill before it is accepted.
pub fn planar_separator(p: &Planarization, weights: &[f64]) -> Result<Separator> {
    let sep = planar_separator_unchecked(p, weights)?;
    let bound = SEPARATOR_CONSTANT * (p.num_vertices() as f64).sqrt();
    if sep.len() as f64 > bound {
        return Err(Error::SeparatorTooLarge { size: sep.len(), bound });
    }
    Ok(sep)
}

pub(crate) fn planar_separator_unchecked(p: &Planarization, weights: &[f64]) -> Result<Separator> {
    let n = p.num_vertices();
    if weights.len() != n {
        return Err(Error::InvalidParams(format!("{} weights for {n} vertices", weights.len())));
    }
    if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
        return Err(Error::InvalidParams("weights must be finite and non-negative".into()));
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::InvalidParams("total weight must be positive".into()));
    }
    let adj = p.adjacency();
    if bfs_levels(&adj, 0).0.contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(Separator { vertices: vec![0], side_a: vec![], side_b: vec![], balance: 0.0 });
    }

    let mesh = if n >= 3 { Mesh::triangulate(p) } else { None };
    let mut best: Option<Separator> = None;
    for root in root_candidates(&adj) {
        for cand in candidates(&adj, weights, total, root, mesh.as_ref()) {
            if let Some(sep) = split(&adj, weights, total, cand) {
                let better = match &best {
                    None => true,
                    Some(b) => (sep.len(), sep.balance) < (b.len(), b.balance),
                };
                if better {
                    best = Some(sep);
                }
            }
        }
    }
    best.ok_or(Error::Unbalanced { largest: total, total })
}

/// Separator of a connected spanner over its original vertices.
///
/// The planarization is separated with unit weight on original vertices and
/// zero weight on dummies. Each separator dummy is then replaced by one
/// endpoint of each of its two crossing edges, taken only where that edge
/// would otherwise join the two sides.
pub fn spanner_separator(g: &SpannerGraph) -> Result<Separator> {
    let p = planarize(g)?;
    let sep = planar_separator(&p, &unit_weights(&p))?;
    Ok(map_to_spanner(g, &p, &sep))
}

pub(crate) fn unit_weights(p: &Planarization) -> Vec<f64> {
    (0..p.num_vertices()).map(|v| if p.is_dummy(v) { 0.0 } else { 1.0 }).collect()
}

pub(crate) fn map_to_spanner(g: &SpannerGraph, p: &Planarization, sep: &Separator) -> Separator {
    let n = g.num_vertices();
    // 0 separator, 1 side a, 2 side b.
    let mut side = vec![0u8; n];
    for &v in sep.side_a.iter().filter(|&&v| v < n) {
        side[v] = 1;
    }
    for &v in sep.side_b.iter().filter(|&&v| v < n) {
        side[v] = 2;
    }
    let count = |side: &[u8], s: u8| side.iter().filter(|&&x| x == s).count();
    let (mut size_a, mut size_b) = (count(&side, 1), count(&side, 2));
    for &d in sep.vertices.iter().filter(|&&v| p.is_dummy(v)) {
        let (e1, e2) = p.origin_of(d).expect("dummy");
        for e in [e1, e2] {
            let (x, y) = (g.edges()[e].i, g.edges()[e].j);
            if side[x] == 0 || side[y] == 0 || side[x] == side[y] {
                continue;
            }
            let heavier = if size_a >= size_b { 1 } else { 2 };
            let pick = if side[x] == heavier { x } else { y };
            if side[pick] == 1 {
                size_a -= 1;
            } else {
                size_b -= 1;
            }
            side[pick] = 0;
        }
    }
    let collect = |s: u8| (0..n).filter(|&v| side[v] == s).collect::<Vec<_>>();
    let (side_a, side_b) = (collect(1), collect(2));
    Separator {
        vertices: collect(0),
        balance: side_a.len().max(side_b.len()) as f64 / n as f64,
        side_a,
        side_b,
    }
}

/// BFS levels from `root` and the parent of every reached vertex.
fn bfs_levels(adj: &[Vec<usize>], root: usize) -> (Vec<usize>, Vec<usize>) {
    let n = adj.len();
    let mut level = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::from([root]);
    level[root] = 0;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if level[w] == usize::MAX {
                level[w] = level[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    (level, parent)
}

/// Vertex 0, a vertex farthest from it, and the middle of that BFS path.
fn root_candidates(adj: &[Vec<usize>]) -> Vec<usize> {
    let (level, _) = bfs_levels(adj, 0);
    let far = (0..adj.len()).max_by_key(|&v| (level[v], std::cmp::Reverse(v))).unwrap_or(0);
    let (level, parent) = bfs_levels(adj, far);
    let other = (0..adj.len()).max_by_key(|&v| (level[v], std::cmp::Reverse(v))).unwrap_or(0);
    let mut mid = other;
    for _ in 0..level[other] / 2 {
        mid = parent[mid];
    }
    let mut roots = vec![0, far, mid];
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Candidate separator vertex sets for BFS levels from `root`.
fn candidates(adj: &[Vec<usize>], weights: &[f64], total: f64, root: usize, mesh: Option<&Mesh>) -> Vec<Vec<usize>> {
    let (level, parent) = bfs_levels(adj, root);
    let depth = level.iter().copied().max().unwrap_or(0);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
    let mut level_weight = vec![0.0; depth + 1];
    for v in 0..adj.len() {
        levels[level[v]].push(v);
        level_weight[level[v]] += weights[v];
    }
    let limit = BALANCE_LIMIT * total * (1.0 + BALANCE_SLACK);
    let mut out = Vec::new();

    // Single levels that split the weight.
    let mut below = 0.0;
    let mut best_single: Option<(usize, f64, usize)> = None;
    for l in 0..=depth {
        let above = total - below - level_weight[l];
        let key = (levels[l].len(), below.max(above), l);
        if below <= limit && above <= limit && best_single.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
            best_single = Some(key);
        }
        below += level_weight[l];
    }
    if let Some((_, _, l)) = best_single {
        out.push(levels[l].clone());
    }

    // Two small levels around the weighted median level. Level -1 and
    // depth+1 are empty; indices below are shifted by one.
    let size = |l: usize| if l == 0 || l == depth + 2 { 0 } else { levels[l - 1].len() };
    let mut acc = 0.0;
    let mut median = 0;
    for (l, w) in level_weight.iter().enumerate() {
        acc += w;
        if acc >= total / 2.0 {
            median = l + 1;
            break;
        }
    }
    let lo = (0..=median).min_by_key(|&l| (size(l) + 2 * (median - l), std::cmp::Reverse(l))).unwrap();
    let hi = (median + 1..=depth + 2).min_by_key(|&l| (size(l) + 2 * (l - median - 1), l)).unwrap();
    let mut pair: Vec<usize> = Vec::new();
    for l in [lo, hi] {
        if size(l) > 0 {
            pair.extend(&levels[l - 1]);
        }
    }
    let in_middle = |v: usize| level[v] + 1 > lo && level[v] + 1 < hi;
    let middle_weight: f64 = (0..adj.len()).filter(|&v| in_middle(v)).map(|v| weights[v]).sum();
    if middle_weight <= limit {
        out.push(pair);
        return out;
    }

    if let Some(mesh) = mesh {
        let mid_weights: Vec<f64> = (0..adj.len()).map(|v| if in_middle(v) { weights[v] } else { 0.0 }).collect();
        if let Some(cycle) = mesh.balanced_cycle(&level, &parent, &mid_weights, total, &in_middle) {
            let mut sep = pair.clone();
            sep.extend(cycle.into_iter().filter(|&v| in_middle(v)));
            out.push(sep);
        }
    }
    // Always valid: drop every weighted middle vertex as well.
    let mut fallback = pair;
    fallback.extend((0..adj.len()).filter(|&v| in_middle(v) && weights[v] > 0.0));
    out.push(fallback);
    out
}

/// Flood-fills the graph minus `sep` and packs the components into two
/// sides, each at most 2/3 of the total weight if possible.
fn split(adj: &[Vec<usize>], weights: &[f64], total: f64, mut sep: Vec<usize>) -> Option<Separator> {
    sep.sort_unstable();
    sep.dedup();
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    for &v in &sep {
        comp[v] = usize::MAX - 1;
    }
    let mut comps: Vec<(f64, Vec<usize>)> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        let weight = members.iter().map(|&v| weights[v]).sum();
        comps.push((weight, members));
    }
    comps.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1[0].cmp(&b.1[0])));
    let (mut side_a, mut side_b) = (Vec::new(), Vec::new());
    let (mut wa, mut wb) = (0.0, 0.0);
    for (w, members) in comps {
        if wa < total / 3.0 {
            wa += w;
            side_a.extend(members);
        } else {
            wb += w;
            side_b.extend(members);
        }
    }
    let balance = wa.max(wb) / total;
    if balance > BALANCE_LIMIT * (1.0 + BALANCE_SLACK) {
        return None;
    }
    side_a.sort_unstable();
    side_b.sort_unstable();
    Some(Separator { vertices: sep, side_a, side_b, balance })
}

/// Half-edge structure of a triangulated copy of a plane drawing. Edge `k`
/// owns half-edges `2k` and `2k + 1`; the first `original` edges are those
/// of the drawing, the rest are added chords.
struct Mesh {
    origin: Vec<usize>,
    face: Vec<usize>,
    faces: usize,
    original: usize,
    /// One outgoing half-edge per vertex.
    out: Vec<usize>,
}

impl Mesh {
    /// Returns `None` if some face cannot be cut into triangles.
    fn triangulate(p: &Planarization) -> Option<Mesh> {
        let n = p.num_vertices();
        let mut origin = Vec::with_capacity(2 * p.edges.len());
        for &(a, b) in &p.edges {
            origin.push(a);
            origin.push(b);
        }
        let mut around: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (h, &o) in origin.iter().enumerate() {
            around[o].push(h);
        }
        let angle = |h: usize| {
            let (a, b) = (p.coords[origin[h]], p.coords[origin[h ^ 1]]);
            (b[1] - a[1]).atan2(b[0] - a[0])
        };
        let mut slot = vec![0; origin.len()];
        for list in &mut around {
            list.sort_by(|&x, &y| angle(x).total_cmp(&angle(y)));
            for (i, &h) in list.iter().enumerate() {
                slot[h] = i;
            }
        }
        // Leaving v along the edge clockwise after the one we arrived on.
        let mut next = vec![0; origin.len()];
        for h in 0..origin.len() {
            let list = &around[origin[h ^ 1]];
            next[h] = list[(slot[h ^ 1] + list.len() - 1) % list.len()];
        }
        let out: Vec<usize> = around.iter().map(|l| l[0]).collect();

        let mut seen = vec![false; origin.len()];
        let mut walks = Vec::new();
        for start in 0..origin.len() {
            if seen[start] {
                continue;
            }
            let mut walk = VecDeque::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                walk.push_back(h);
                h = next[h];
            }
            walks.push(walk);
        }

        let mut triangles: Vec<[usize; 3]> = Vec::new();
        for mut walk in walks {
            let mut stalls = 0;
            while walk.len() > 3 {
                let (h0, h1) = (walk[0], walk[1]);
                let (a, c) = (origin[h0], origin[h1 ^ 1]);
                if a == c {
                    walk.rotate_left(1);
                    stalls += 1;
                    if stalls > walk.len() {
                        return None;
                    }
                    continue;
                }
                stalls = 0;
                let ac = origin.len();
                origin.push(a);
                origin.push(c);
                triangles.push([h0, h1, ac + 1]);
                walk.pop_front();
                walk.pop_front();
                walk.push_front(ac);
            }
            if walk.len() != 3 {
                return None;
            }
            triangles.push([walk[0], walk[1], walk[2]]);
        }
        let mut face = vec![usize::MAX; origin.len()];
        for (f, tri) in triangles.iter().enumerate() {
            for &h in tri {
                face[h] = f;
            }
        }
        Some(Mesh { origin, face, faces: triangles.len(), original: p.edges.len(), out })
    }

    /// A fundamental cycle of the BFS tree given by `parent` whose inside
    /// and outside each carry at most 2/3 of `total` under `weights`,
    /// minimising the number of cycle vertices with `counted(v)`.
    fn balanced_cycle(
        &self,
        level: &[usize],
        parent: &[usize],
        weights: &[f64],
        total: f64,
        counted: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let edges = self.origin.len() / 2;
        let n = level.len();
        let mut in_tree = vec![false; edges];
        // Drawing edges are simple, so each non-root vertex has exactly one
        // edge to its parent.
        for k in 0..self.original {
            let (a, b) = (self.origin[2 * k], self.origin[2 * k + 1]);
            in_tree[k] = parent[a] == b || parent[b] == a;
        }
        if in_tree.iter().filter(|&&t| t).count() != n - 1 {
            return None;
        }

        // Dual tree over the faces, through non-tree edges.
        let mut dual: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.faces];
        for k in (0..edges).filter(|&k| !in_tree[k]) {
            let (f, g) = (self.face[2 * k], self.face[2 * k + 1]);
            if f == g {
                return None;
            }
            dual[f].push((g, k));
            dual[g].push((f, k));
        }
        let mut up_edge = vec![usize::MAX; self.faces];
        let mut parent_face = vec![usize::MAX; self.faces];
        let mut tin = vec![usize::MAX; self.faces];
        let mut tout = vec![0; self.faces];
        let mut order = vec![0];
        let mut stack = vec![(0usize, 0usize)];
        tin[0] = 0;
        let mut clock = 1;
        while let Some(top) = stack.last_mut() {
            let f = top.0;
            if let Some(&(g, k)) = dual[f].get(top.1) {
                top.1 += 1;
                if k == up_edge[f] {
                    continue;
                }
                if tin[g] != usize::MAX {
                    return None;
                }
                tin[g] = clock;
                clock += 1;
                up_edge[g] = k;
                parent_face[g] = f;
                order.push(g);
                stack.push((g, 0));
            } else {
                tout[f] = clock;
                stack.pop();
            }
        }
        if order.len() != self.faces {
            return None;
        }

        let assigned: Vec<usize> = (0..n).map(|v| self.face[self.out[v]]).collect();
        let mut below = vec![0.0; self.faces];
        for v in 0..n {
            below[assigned[v]] += weights[v];
        }
        for &f in order.iter().rev() {
            if parent_face[f] != usize::MAX {
                let w = below[f];
                below[parent_face[f]] += w;
            }
        }
        let weight_total: f64 = weights.iter().sum();
        let limit = BALANCE_LIMIT * total * (1.0 + BALANCE_SLACK);

        let mut best: Option<(usize, Vec<usize>)> = None;
        for k in (0..edges).filter(|&k| !in_tree[k]) {
            let (f, g) = (self.face[2 * k], self.face[2 * k + 1]);
            let child = if up_edge[g] == k { g } else { f };
            let cycle = tree_path(self.origin[2 * k], self.origin[2 * k + 1], level, parent);
            let cost = cycle.iter().filter(|&&v| counted(v)).count();
            if best.as_ref().is_some_and(|b| b.0 <= cost) {
                continue;
            }
            let inside_face = |v: usize| tin[assigned[v]] >= tin[child] && tin[assigned[v]] < tout[child];
            let on_cycle: f64 = cycle.iter().map(|&v| weights[v]).sum();
            let on_cycle_inside: f64 = cycle.iter().filter(|&&v| inside_face(v)).map(|&v| weights[v]).sum();
            let inside = below[child] - on_cycle_inside;
            let outside = weight_total - on_cycle - inside;
            if inside <= limit && outside <= limit {
                best = Some((cost, cycle));
            }
        }
        best.map(|b| b.1)
    }
}

/// Vertices on the tree path between `u` and `v`.
fn tree_path(mut u: usize, mut v: usize, level: &[usize], parent: &[usize]) -> Vec<usize> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    while level[u] > level[v] {
        left.push(u);
        u = parent[u];
    }
    while level[v] > level[u] {
        right.push(v);
        v = parent[v];
    }
    while u != v {
        left.push(u);
        right.push(v);
        u = parent[u];
        v = parent[v];
    }
    left.push(u);
    left.extend(right.into_iter().rev());
    left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spanner::{greedy_spanner_fast, SpannerConfig};

    fn check_mesh(p: &Planarization) {
        let n = p.num_vertices();
        let mesh = Mesh::triangulate(p).expect("triangulates");
        assert_eq!(mesh.faces, 2 * n - 4);
        assert_eq!(mesh.origin.len() / 2, 3 * n - 6);
        let adj = p.adjacency();
        let (level, parent) = bfs_levels(&adj, 0);
        let w = vec![1.0; n];
        let cycle = mesh.balanced_cycle(&level, &parent, &w, n as f64, &|_| true).expect("balanced cycle");
        assert!(cycle.len() <= 2 * level.iter().max().unwrap() + 1);
        // Removing the cycle leaves pieces of at most 2/3 of the vertices.
        let sep = split(&adj, &w, n as f64, cycle).expect("balanced");
        assert!(sep.verify(n, &p.edges));
    }

    #[test]
    fn triangulation_and_cycles_on_grid() {
        let k = 12;
        let mut edges = Vec::new();
        for v in 0..k * k {
            if v % k + 1 < k {
                edges.push((v, v + 1));
            }
            if v + k < k * k {
                edges.push((v, v + k));
            }
        }
        check_mesh(&Planarization::from_plane_graph((0..k * k).map(|v| [(v % k) as f64, (v / k) as f64]).collect(), edges));
    }

    #[test]
    fn triangulation_of_tree_and_planarized_spanner() {
        // A star: one face whose walk revisits the centre.
        let mut coords = vec![[0.0, 0.0]];
        coords.extend((0..7).map(|i| {
            let a = i as f64;
            [a.cos(), a.sin()]
        }));
        check_mesh(&Planarization::from_plane_graph(coords, (1..8).map(|i| (0, i)).collect()));

        let g = greedy_spanner_fast(&crate::gen::uniform_points(150, 4), &SpannerConfig::new(1.3)).unwrap();
        check_mesh(&planarize(&g).unwrap());
    }
}
