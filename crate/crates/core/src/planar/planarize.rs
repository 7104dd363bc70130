use std::collections::BTreeMap;

use crate::crossing::{build_crossing_graph, CrossingGraph};
use crate::error::Result;
use crate::geom::{param_along, PointSet};
use crate::spanner::SpannerGraph;

/// A crossing-free drawing obtained by placing a dummy vertex at every edge
/// crossing and subdividing the crossed edges.
///
/// Vertices `0..n_original` are the original points; vertex
/// `n_original + k` is dummy `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Planarization {
    pub coords: Vec<[f64; 2]>,
    pub n_original: usize,
    /// The two spanner edges that cross at each dummy, smaller id first.
    pub dummy_origin: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
    /// Spanner edge each sub-edge belongs to.
    pub edge_origin: Vec<usize>,
}

impl Planarization {
    /// Wraps a drawing that is already plane. No dummies are created.
    pub fn from_plane_graph(coords: Vec<[f64; 2]>, edges: Vec<(usize, usize)>) -> Self {
        Planarization {
            n_original: coords.len(),
            coords,
            dummy_origin: Vec::new(),
            edge_origin: (0..edges.len()).collect(),
            edges,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.coords.len()
    }

    pub fn num_dummies(&self) -> usize {
        self.dummy_origin.len()
    }

    pub fn is_dummy(&self, v: usize) -> bool {
        v >= self.n_original
    }

    /// Originating edge pair of a dummy vertex.
    pub fn origin_of(&self, v: usize) -> Option<(usize, usize)> {
        v.checked_sub(self.n_original).map(|k| self.dummy_origin[k])
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// The drawing as a geometric graph, e.g. to re-run crossing detection.
    pub fn to_graph(&self) -> Result<SpannerGraph> {
        let points = PointSet::from_coords(self.coords.iter().map(|c| (c[0], c[1])))?;
        SpannerGraph::from_edges(points, self.edges.iter().copied())
    }
}

/// Subdivides every edge of `g` at its crossings.
pub fn planarize(g: &SpannerGraph) -> Result<Planarization> {
    let cg = build_crossing_graph(g)?;
    Ok(planarize_with(g, &cg))
}

/// As [`planarize`], reusing an already computed crossing graph.
pub fn planarize_with(g: &SpannerGraph, cg: &CrossingGraph) -> Planarization {
    let n = g.num_vertices();
    let mut coords: Vec<[f64; 2]> = g.points().iter().map(|p| p.xy()).collect();
    let mut dummy_origin = Vec::with_capacity(cg.num_crossings());
    let mut dummy_of = BTreeMap::new();
    for (&(a, b), p) in &cg.crossing_points {
        dummy_of.insert((a, b), n + dummy_origin.len());
        dummy_origin.push((a, b));
        coords.push(p.xy());
    }
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let seg = g.segment(id);
        let mut stops: Vec<(f64, usize)> = cg.adjacency[id]
            .iter()
            .map(|&o| {
                let key = (id.min(o), id.max(o));
                (param_along(&seg, &cg.crossing_points[&key]), dummy_of[&key])
            })
            .collect();
        stops.sort_by(|a, b| a.0.total_cmp(&b.0));
        // `segment` runs from e.i to e.j.
        let mut prev = e.i;
        for (_, d) in stops {
            edges.push((prev, d));
            edge_origin.push(id);
            prev = d;
        }
        edges.push((prev, e.j));
        edge_origin.push(id);
    }
    Planarization { coords, n_original: n, dummy_origin, edges, edge_origin }
}
