//! Zig-zag point sequences and the three-band arrangement whose greedy
//! spanner contains an edge crossed by arbitrarily many other edges.
//!
//! Arrangement layout: column `c` sits at `x = c·dx` and holds two points.
//! Point `2c` belongs to the upper zig-zag U (row 1 if `c` is odd, row 2 if
//! even) and point `2c + 1` to the lower zig-zag B (row 3 if `c` is odd,
//! row 4 if even). The middle zig-zag M runs through rows 2 and 3.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{segments_cross, PointSet};
use crate::spanner::SpannerGraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZigZagSpec {
    pub origin: [f64; 2],
    pub dx: f64,
    /// Height-to-step ratio `|Δy| / |Δx|`.
    pub s: f64,
    pub count: usize,
    /// Unit step direction; odd points are offset to its left.
    pub direction: [f64; 2],
}

impl ZigZagSpec {
    pub fn horizontal(dx: f64, s: f64, count: usize) -> Self {
        ZigZagSpec { origin: [0.0, 0.0], dx, s, count, direction: [1.0, 0.0] }
    }

    fn validate(&self) -> Result<()> {
        let norm = self.direction[0].hypot(self.direction[1]);
        if !(self.dx > 0.0) || !(self.s >= 0.0) || self.count < 2 || (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!("invalid zig-zag {self:?}")));
        }
        Ok(())
    }
}

/// `P_i = P_0 + i·Δx + (i mod 2)·Δy`.
pub fn zigzag_points(spec: &ZigZagSpec) -> Result<PointSet> {
    spec.validate()?;
    let [ux, uy] = spec.direction;
    let (step_x, step_y) = (ux * spec.dx, uy * spec.dx);
    let (up_x, up_y) = (-uy * spec.s * spec.dx, ux * spec.s * spec.dx);
    PointSet::from_coords((0..spec.count).map(|i| {
        let odd = (i % 2) as f64;
        (spec.origin[0] + i as f64 * step_x + odd * up_x, spec.origin[1] + i as f64 * step_y + odd * up_y)
    }))
}

/// Whether the consecutive edges of a zig-zag with ratio `s` already form a
/// `t`-spanner: `s ≤ √(t² - 1)`.
pub fn zigzag_is_spanner(s: f64, t: f64) -> bool {
    s <= (t * t - 1.0).sqrt()
}

/// Interior angle at a zig-zag vertex with ratio `s`; its cosine is
/// `(s² - 1)/(s² + 1)`.
pub fn zigzag_vertex_angle(s: f64) -> f64 {
    ((s * s - 1.0) / (s * s + 1.0)).acos()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrangementSpec {
    pub t: f64,
    pub delta: f64,
    pub columns: usize,
    pub dx: f64,
}

impl ArrangementSpec {
    pub fn new(t: f64, delta: f64, columns: usize) -> Self {
        ArrangementSpec { t, delta, columns, dx: 1.0 }
    }

    /// Ratio of the outer zig-zags U and B.
    pub fn s_outer(&self) -> f64 {
        (self.t * self.t - 1.0).sqrt()
    }

    /// Ratio of the middle zig-zag M.
    pub fn s_middle(&self) -> f64 {
        let tm = self.t + self.delta;
        (tm * tm - 1.0).sqrt()
    }

    /// Row heights, top to bottom.
    pub fn rows(&self) -> [f64; 4] {
        let (u, m) = (self.s_outer() * self.dx, self.s_middle() * self.dx);
        [0.0, -u, -(u + m), -(u + m + u)]
    }

    /// Requires `√(4/3) < t`, `t + δ < 2`, `δ > 0`, `dx > 0` and at least
    /// two columns, so every zig-zag angle lies strictly between 60° and
    /// 120°.
    pub fn validate(&self) -> Result<()> {
        let ok = self.t > (4.0f64 / 3.0).sqrt()
            && self.delta > 0.0
            && self.t + self.delta < 2.0
            && self.dx > 0.0
            && self.dx.is_finite()
            && self.columns >= 2;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "need sqrt(4/3) < t, delta > 0, t + delta < 2, dx > 0 and 2+ columns; got {self:?}"
            )))
        }
    }

    pub fn column_of(&self, id: usize) -> usize {
        id / 2
    }

    /// Row index 0..4 of a point id.
    pub fn row_of(&self, id: usize) -> usize {
        let odd = self.column_of(id) % 2 == 1;
        match (id.is_multiple_of(2), odd) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        }
    }

    pub fn is_upper(&self, id: usize) -> bool {
        id.is_multiple_of(2)
    }

    /// Whether `a`–`b` is a step of the middle zig-zag.
    pub fn is_middle_step(&self, a: usize, b: usize) -> bool {
        let (ca, cb) = (self.column_of(a), self.column_of(b));
        ca.abs_diff(cb) == 1 && {
            let (ra, rb) = (self.row_of(a), self.row_of(b));
            (ra == 1 && rb == 2) || (ra == 2 && rb == 1)
        }
    }
}

pub fn three_band_arrangement(spec: &ArrangementSpec) -> Result<PointSet> {
    spec.validate()?;
    let rows = spec.rows();
    PointSet::from_coords((0..2 * spec.columns).map(|id| (spec.column_of(id) as f64 * spec.dx, rows[spec.row_of(id)])))
}

/// `(t(t² - 1)/(2δ), 9t((t+δ)² - 1)/(2δ))`: below the first column gap no
/// edge joins U to B; at the second one such an edge must exist.
pub fn thresholds(t: f64, delta: f64) -> (f64, f64) {
    let tm = t + delta;
    (t * (t * t - 1.0) / (2.0 * delta), 9.0 * t * (tm * tm - 1.0) / (2.0 * delta))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LongEdgeReport {
    /// Upper endpoint first.
    pub edge: (usize, usize),
    pub column_gap: usize,
    pub middle_crossings: usize,
    pub thresholds: (f64, f64),
    /// Number of U–B edges beyond the first threshold.
    pub candidates: usize,
}

impl LongEdgeReport {
    /// Crossings at least `column_gap - 2`.
    pub fn meets_crossing_floor(&self) -> bool {
        self.middle_crossings + 2 >= self.column_gap
    }
}

/// Finds the U–B spanner edge with column gap above the first threshold
/// that crosses the most middle zig-zag edges of `g`.
pub fn analyze_long_edge(g: &SpannerGraph, spec: &ArrangementSpec) -> Result<LongEdgeReport> {
    spec.validate()?;
    if g.num_vertices() != 2 * spec.columns {
        return Err(Error::InvalidParams(format!("{} vertices for {} columns", g.num_vertices(), spec.columns)));
    }
    let th = thresholds(spec.t, spec.delta);
    let middle: Vec<usize> = (0..g.num_edges()).filter(|&k| spec.is_middle_step(g.edges()[k].i, g.edges()[k].j)).collect();
    let mut best: Option<LongEdgeReport> = None;
    let mut candidates = 0;
    for (k, e) in g.edges().iter().enumerate() {
        if spec.is_upper(e.i) == spec.is_upper(e.j) {
            continue;
        }
        let gap = spec.column_of(e.i).abs_diff(spec.column_of(e.j));
        if gap as f64 <= th.0 {
            continue;
        }
        candidates += 1;
        let seg = g.segment(k);
        let mut crossings = 0;
        for &m in &middle {
            crossings += segments_cross(&seg, &g.segment(m))? as usize;
        }
        let edge = if spec.is_upper(e.i) { (e.i, e.j) } else { (e.j, e.i) };
        let better = best
            .as_ref()
            .is_none_or(|b| (crossings, gap, std::cmp::Reverse(edge)) > (b.middle_crossings, b.column_gap, std::cmp::Reverse(b.edge)));
        if better {
            best = Some(LongEdgeReport { edge, column_gap: gap, middle_crossings: crossings, thresholds: th, candidates: 0 });
        }
    }
    let mut report = best.ok_or(Error::NoLongEdge(th.0))?;
    report.candidates = candidates;
    Ok(report)
}

/// Spanner edges joining two points of the same outer zig-zag that are not
/// steps of it.
pub fn extra_outer_edges(g: &SpannerGraph, spec: &ArrangementSpec) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .filter(|e| spec.is_upper(e.i) == spec.is_upper(e.j))
        .filter(|e| spec.column_of(e.i).abs_diff(spec.column_of(e.j)) != 1)
        .map(|e| (e.i, e.j))
        .collect()
}
