//! SVG rendering of an embedded graph. The y axis is flipped so the picture
//! matches the usual mathematical orientation.

use std::fmt::Write;

use spanner_core::crossing::CrossingGraph;
use spanner_core::SpannerGraph;

const MARGIN: f64 = 0.05;

/// SVG y coordinate; adding zero turns `-0` into `0`.
fn flip(y: f64) -> f64 {
    -y + 0.0
}

pub fn render_svg(g: &SpannerGraph, crossings: Option<&CrossingGraph>) -> String {
    let pts = g.points();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts.iter() {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(flip(p.y));
        y1 = y1.max(flip(p.y));
    }
    if pts.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let w = (x1 - x0).max(span * 1e-3);
    let h = (y1 - y0).max(span * 1e-3);
    let (mx, my) = (MARGIN * w, MARGIN * h);
    let radius = span * 0.004;
    let stroke = span * 0.0015;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        x0 - mx,
        y0 - my,
        w + 2.0 * mx,
        h + 2.0 * my
    );
    let _ = writeln!(out, r#"<g class="edges" stroke="black" stroke-width="{stroke}">"#);
    for e in g.edges() {
        let (a, b) = (&pts[e.i], &pts[e.j]);
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, a.x, flip(a.y), b.x, flip(b.y));
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, r#"<g class="vertices" fill="black">"#);
    for p in pts.iter() {
        let _ = writeln!(out, r#"<circle class="vertex" cx="{}" cy="{}" r="{radius}"/>"#, p.x, flip(p.y));
    }
    out.push_str("</g>\n");
    if let Some(cg) = crossings {
        let side = 2.0 * radius;
        let _ = writeln!(out, r#"<g class="crossings" fill="red">"#);
        for p in cg.crossing_points.values() {
            let _ = writeln!(
                out,
                r#"<rect class="crossing" x="{}" y="{}" width="{side}" height="{side}"/>"#,
                p.x - radius,
                flip(p.y) - radius
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spanner_core::crossing::build_crossing_graph;
    use spanner_core::PointSet;

    fn x_pattern() -> SpannerGraph {
        let pts = PointSet::from_coords([(0.0, 0.0), (1.0, 1.0), (0.0, 1.0), (1.0, 0.0)]).unwrap();
        SpannerGraph::from_edges(pts, [(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn x_pattern_elements() {
        let g = x_pattern();
        let cg = build_crossing_graph(&g).unwrap();
        let svg = render_svg(&g, Some(&cg));
        assert_eq!(svg.matches("<line ").count(), 2);
        assert_eq!(svg.matches(r#"<circle class="vertex""#).count(), 4);
        assert_eq!(svg.matches(r#"<rect class="crossing""#).count(), 1);
        assert!(svg.contains(r#"viewBox="-0.05 -1.05 1.1 1.1""#), "{svg}");
        assert_eq!(svg, render_svg(&g, Some(&cg)));
    }

    #[test]
    fn no_edges() {
        let g = SpannerGraph::empty(PointSet::from_coords([(0.0, 0.0), (2.0, 1.0)]).unwrap());
        let svg = render_svg(&g, None);
        assert_eq!(svg.matches("<line ").count(), 0);
        assert_eq!(svg.matches("<circle ").count(), 2);
        assert!(!svg.contains("<rect"));
    }
}
