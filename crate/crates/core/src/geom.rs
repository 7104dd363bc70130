//! Planar primitives: orientation, segment crossing, crossing points,
//! line angles and projections onto a baseline.
//!
//! Predicates use plain double-precision determinants. Inputs are expected
//! to be in general position; collinear overlaps are reported as errors
//! instead of being resolved.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(id: usize, x: f64, y: f64) -> Self {
        Point { id, x, y }
    }

    /// Anonymous point, for intermediate coordinates that are not vertices.
    pub fn at(x: f64, y: f64) -> Self {
        Point { id: usize::MAX, x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }

    pub fn xy(&self) -> [f64; 2] {
        [self.x, self.y]
    }
}

/// Immutable vertex set of a spanner: finite, pairwise distinct points with
/// ids `0..n`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a point set from raw coordinates, assigning ids by position.
    /// Duplicates are detected by the spanner builders, not here.
    pub fn from_coords<I>(coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let points: Vec<Point> = coords
            .into_iter()
            .enumerate()
            .map(|(i, (x, y))| Point::new(i, x, y))
            .collect();
        if let Some(p) = points.iter().find(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::NonFinite(p.id));
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&Point> {
        self.points.get(id)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn as_slice(&self) -> &[Point] {
        &self.points
    }

    /// First pair of coincident points in lexicographic coordinate order.
    pub fn find_duplicate(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.sort_by(|&a, &b| {
            let (p, q) = (&self.points[a], &self.points[b]);
            p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y))
        });
        order.windows(2).find_map(|w| {
            let (p, q) = (&self.points[w[0]], &self.points[w[1]]);
            (p.x == q.x && p.y == q.y).then(|| (w[0].min(w[1]), w[0].max(w[1])))
        })
    }

    /// Largest distance between two corners of the bounding box.
    pub fn diameter(&self) -> f64 {
        bbox_diagonal(self.points.iter().map(|p| p.xy()))
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point;
    fn index(&self, id: usize) -> &Point {
        &self.points[id]
    }
}

pub(crate) fn bbox_diagonal<I: Iterator<Item = [f64; 2]>>(coords: I) -> f64 {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut any = false;
    for c in coords {
        any = true;
        for k in 0..2 {
            lo[k] = lo[k].min(c[k]);
            hi[k] = hi[k].max(c[k]);
        }
    }
    if !any {
        return 0.0;
    }
    (hi[0] - lo[0]).hypot(hi[1] - lo[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn from_coords(ax: f64, ay: f64, bx: f64, by: f64) -> Self {
        Segment::new(Point::at(ax, ay), Point::at(bx, by))
    }

    pub fn length(&self) -> f64 {
        self.a.distance(&self.b)
    }

    fn dir(&self) -> (f64, f64) {
        (self.b.x - self.a.x, self.b.y - self.a.y)
    }

    fn raw(&self) -> [f64; 4] {
        [self.a.x, self.a.y, self.b.x, self.b.y]
    }

    /// Angle of the supporting line in `[0, π)`.
    pub fn line_angle(&self) -> f64 {
        let (dx, dy) = self.dir();
        let a = dy.atan2(dx);
        let a = if a < 0.0 { a + PI } else { a };
        if a >= PI {
            a - PI
        } else {
            a
        }
    }

    /// Parameter of `p`'s orthogonal projection along the segment, in `[0, 1]`
    /// for points that project inside it.
    fn param_of(&self, p: &Point) -> f64 {
        let (dx, dy) = self.dir();
        ((p.x - self.a.x) * dx + (p.y - self.a.y) * dy) / (dx * dx + dy * dy)
    }

    fn bbox_overlaps(&self, other: &Segment) -> bool {
        self.a.x.min(self.b.x) <= other.a.x.max(other.b.x)
            && other.a.x.min(other.b.x) <= self.a.x.max(self.b.x)
            && self.a.y.min(self.b.y) <= other.a.y.max(other.b.y)
            && other.a.y.min(other.b.y) <= self.a.y.max(self.b.y)
    }
}

/// Sign of the signed area of triangle `pqr`: `+1` counter-clockwise,
/// `-1` clockwise, `0` collinear.
pub fn orient(p: &Point, q: &Point, r: &Point) -> i8 {
    let det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    if det > 0.0 {
        1
    } else if det < 0.0 {
        -1
    } else {
        0
    }
}

/// True iff the open interiors of the two segments share a point.
///
/// Shared endpoints and T-touches are not crossings. Collinear segments that
/// overlap in more than one point yield [`Error::DegenerateOverlap`].
pub fn segments_cross(s1: &Segment, s2: &Segment) -> Result<bool> {
    if !s1.bbox_overlaps(s2) {
        return Ok(false);
    }
    let o1 = orient(&s1.a, &s1.b, &s2.a);
    let o2 = orient(&s1.a, &s1.b, &s2.b);
    if o1 == 0 && o2 == 0 {
        // Collinear: measure the overlap of the parameter ranges along s1.
        let (u, v) = (s1.param_of(&s2.a), s1.param_of(&s2.b));
        let (lo, hi) = (u.min(v).max(0.0), u.max(v).min(1.0));
        if hi > lo {
            return Err(Error::DegenerateOverlap(s1.raw(), s2.raw()));
        }
        return Ok(false);
    }
    let o3 = orient(&s2.a, &s2.b, &s1.a);
    let o4 = orient(&s2.a, &s2.b, &s1.b);
    Ok(o1 * o2 < 0 && o3 * o4 < 0)
}

/// The interior point where two crossing segments meet.
pub fn crossing_point(s1: &Segment, s2: &Segment) -> Result<Point> {
    if !segments_cross(s1, s2)? {
        return Err(Error::NotCrossing);
    }
    let (rx, ry) = s1.dir();
    let (sx, sy) = s2.dir();
    let denom = rx * sy - ry * sx;
    let qx = s2.a.x - s1.a.x;
    let qy = s2.a.y - s1.a.y;
    let tp = (qx * sy - qy * sx) / denom;
    Ok(Point::at(s1.a.x + tp * rx, s1.a.y + tp * ry))
}

/// Position of a crossing point along `seg`, as a parameter in `(0, 1)`.
pub fn param_along(seg: &Segment, p: &Point) -> f64 {
    seg.param_of(p)
}

/// True iff `p` lies strictly inside `seg` (collinear and between, but not
/// at, the endpoints).
pub fn touches_interior(p: &Point, seg: &Segment) -> bool {
    if orient(&seg.a, &seg.b, p) != 0 {
        return false;
    }
    let u = seg.param_of(p);
    u > 0.0 && u < 1.0 && (p.x, p.y) != (seg.a.x, seg.a.y) && (p.x, p.y) != (seg.b.x, seg.b.y)
}

/// Unsigned acute angle between the supporting lines, in `[0, π/2]`.
pub fn angle_between(s1: &Segment, s2: &Segment) -> f64 {
    let (ux, uy) = s1.dir();
    let (vx, vy) = s2.dir();
    let cross = (ux * vy - uy * vx).abs();
    let dot = (ux * vx + uy * vy).abs();
    cross.atan2(dot)
}

/// Scalar positions of the orthogonal projections of `seg.a` and `seg.b`
/// onto the line through `baseline`, measured from `baseline.a` in the
/// direction of `baseline.b`. Not reordered.
pub fn project_interval(seg: &Segment, baseline: &Segment) -> (f64, f64) {
    let (dx, dy) = baseline.dir();
    let len = (dx * dx + dy * dy).sqrt();
    let proj = |p: &Point| ((p.x - baseline.a.x) * dx + (p.y - baseline.a.y) * dy) / len;
    (proj(&seg.a), proj(&seg.b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;
    use std::f64::consts::FRAC_PI_4;

    fn p(x: f64, y: f64) -> Point {
        Point::at(x, y)
    }

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
        Segment::from_coords(ax, ay, bx, by)
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orient(&p(0.0, 0.0), &p(1.0, 0.0), &p(0.0, 1.0)), 1);
        assert_eq!(orient(&p(0.0, 0.0), &p(1.0, 0.0), &p(2.0, 0.0)), 0);
        assert_eq!(orient(&p(0.0, 0.0), &p(0.0, 1.0), &p(1.0, 0.0)), -1);
    }

    #[test]
    fn crossing_cases() {
        assert!(segments_cross(&seg(0.0, 0.0, 1.0, 1.0), &seg(0.0, 1.0, 1.0, 0.0)).unwrap());
        assert!(!segments_cross(&seg(0.0, 0.0, 1.0, 0.0), &seg(1.0, 0.0, 2.0, 1.0)).unwrap());
        assert!(!segments_cross(&seg(0.0, 0.0, 1.0, 0.0), &seg(0.0, 1.0, 1.0, 1.0)).unwrap());
        // T-touch is not a crossing.
        assert!(!segments_cross(&seg(0.0, 0.0, 2.0, 0.0), &seg(1.0, 0.0, 1.0, 1.0)).unwrap());
        // Collinear but only touching at a point.
        assert!(!segments_cross(&seg(0.0, 0.0, 1.0, 0.0), &seg(1.0, 0.0, 2.0, 0.0)).unwrap());
    }

    #[test]
    fn collinear_overlap_is_an_error() {
        let err = segments_cross(&seg(0.0, 0.0, 2.0, 0.0), &seg(1.0, 0.0, 3.0, 0.0));
        assert!(matches!(err, Err(Error::DegenerateOverlap(..))));
        let err = segments_cross(&seg(0.0, 0.0, 2.0, 2.0), &seg(0.0, 0.0, 1.0, 1.0));
        assert!(matches!(err, Err(Error::DegenerateOverlap(..))));
    }

    #[test]
    fn crossing_points() {
        let c = crossing_point(&seg(0.0, 0.0, 1.0, 1.0), &seg(0.0, 1.0, 1.0, 0.0)).unwrap();
        assert_eq!((c.x, c.y), (0.5, 0.5));
        let c = crossing_point(&seg(0.0, 0.0, 2.0, 0.0), &seg(1.0, -1.0, 1.0, 1.0)).unwrap();
        assert_eq!((c.x, c.y), (1.0, 0.0));
        let c = crossing_point(&seg(0.0, 0.0, 4.0, 4.0), &seg(0.0, 4.0, 4.0, 0.0)).unwrap();
        assert_eq!((c.x, c.y), (2.0, 2.0));
        assert_eq!(
            crossing_point(&seg(0.0, 0.0, 1.0, 0.0), &seg(0.0, 1.0, 1.0, 1.0)),
            Err(Error::NotCrossing)
        );
    }

    #[test]
    fn angles() {
        assert!((angle_between(&seg(0.0, 0.0, 1.0, 0.0), &seg(0.0, 0.0, 0.0, 1.0)) - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(angle_between(&seg(0.0, 0.0, 1.0, 0.0), &seg(5.0, 5.0, 9.0, 5.0)), 0.0);
        assert!((angle_between(&seg(0.0, 0.0, 1.0, 0.0), &seg(0.0, 0.0, 1.0, 1.0)) - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn projections() {
        assert_eq!(project_interval(&seg(0.0, 1.0, 2.0, 1.0), &seg(0.0, 0.0, 1.0, 0.0)), (0.0, 2.0));
        assert_eq!(project_interval(&seg(3.0, 7.0, 3.0, 9.0), &seg(0.0, 0.0, 1.0, 0.0)), (3.0, 3.0));
        assert_eq!(project_interval(&seg(1.0, 1.0, 2.0, 2.0), &seg(0.0, 0.0, 0.0, 1.0)), (1.0, 2.0));
    }

    #[test]
    fn line_angles_are_half_open() {
        assert_eq!(seg(0.0, 0.0, 1.0, 0.0).line_angle(), 0.0);
        assert_eq!(seg(1.0, 0.0, 0.0, 0.0).line_angle(), 0.0);
        assert!((seg(0.0, 0.0, 0.0, -1.0).line_angle() - FRAC_PI_2).abs() < 1e-15);
        assert!((seg(0.0, 0.0, -1.0, 1.0).line_angle() - 3.0 * FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn duplicates_and_diameter() {
        let ps = PointSet::from_coords([(0.0, 0.0), (3.0, 4.0), (0.0, 0.0)]).unwrap();
        assert_eq!(ps.find_duplicate(), Some((0, 2)));
        assert_eq!(ps.diameter(), 5.0);
        assert!(PointSet::from_coords([(f64::NAN, 0.0)]).is_err());
    }

    /// Independent crossing test: solve for both segment parameters and
    /// require each to lie strictly inside (0, 1).
    fn parametric_cross(s1: &Segment, s2: &Segment) -> bool {
        let (a11, a12) = (s1.b.x - s1.a.x, -(s2.b.x - s2.a.x));
        let (a21, a22) = (s1.b.y - s1.a.y, -(s2.b.y - s2.a.y));
        let (r1, r2) = (s2.a.x - s1.a.x, s2.a.y - s1.a.y);
        let det = a11 * a22 - a12 * a21;
        if det == 0.0 {
            return false;
        }
        let u = (r1 * a22 - a12 * r2) / det;
        let v = (a11 * r2 - a21 * r1) / det;
        u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0
    }

    #[test]
    fn agrees_with_parametric_oracle_on_seeded_pairs() {
        use rand_chacha::ChaCha8Rng;
        use rand_core::{RngCore, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut unit = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let mut crossings = 0;
        for _ in 0..1000 {
            let s1 = seg(unit(), unit(), unit(), unit());
            let s2 = seg(unit(), unit(), unit(), unit());
            let fast = segments_cross(&s1, &s2).unwrap();
            assert_eq!(fast, parametric_cross(&s1, &s2), "{s1:?} {s2:?}");
            crossings += fast as usize;
        }
        // Sanity: both outcomes are exercised.
        assert!(crossings > 50 && crossings < 950);
    }

    fn coord() -> impl Strategy<Value = f64> {
        -100.0f64..100.0
    }

    fn arb_segment() -> impl Strategy<Value = Segment> {
        (coord(), coord(), coord(), coord())
            .prop_filter("positive length", |(a, b, c, d)| a != c || b != d)
            .prop_map(|(a, b, c, d)| seg(a, b, c, d))
    }

    proptest! {
        #[test]
        fn crossing_is_symmetric(s in arb_segment(), u in arb_segment()) {
            let lhs = segments_cross(&s, &u).ok();
            let rhs = segments_cross(&u, &s).ok();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn crossing_point_is_interior(s in arb_segment(), u in arb_segment()) {
            if let Ok(true) = segments_cross(&s, &u) {
                let c = crossing_point(&s, &u).unwrap();
                for sg in [&s, &u] {
                    let t = param_along(sg, &c);
                    prop_assert!(t > -1e-12 && t < 1.0 + 1e-12, "param {}", t);
                }
            }
        }

        #[test]
        fn angle_is_symmetric_and_direction_free(s in arb_segment(), u in arb_segment()) {
            let a = angle_between(&s, &u);
            prop_assert!((0.0..=FRAC_PI_2).contains(&a));
            prop_assert_eq!(a, angle_between(&u, &s));
            let flipped = Segment::new(s.b, s.a);
            prop_assert!((a - angle_between(&flipped, &u)).abs() < 1e-12);
        }
    }
}
