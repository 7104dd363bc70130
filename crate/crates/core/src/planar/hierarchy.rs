use crate::error::{Error, Result};
use crate::planar::planarize::planarize;
use crate::planar::separator::{map_to_spanner, planar_separator_unchecked, unit_weights, Separator};
use crate::spanner::SpannerGraph;

/// Recursive decomposition of a spanner by separators. Vertex ids are those
/// of the input graph.
#[derive(Debug, Clone, PartialEq)]
pub enum SeparatorTree {
    /// A piece with at most `cutoff` vertices.
    Leaf { vertices: Vec<usize> },
    /// A connected piece cut by `separator`; one child per non-empty side.
    Split { separator: Separator, children: Vec<SeparatorTree> },
    /// A disconnected piece; one child per component.
    Components(Vec<SeparatorTree>),
}

impl SeparatorTree {
    /// Largest number of `Split` nodes on a root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            SeparatorTree::Leaf { .. } => 0,
            SeparatorTree::Split { children, .. } => 1 + children.iter().map(Self::depth).max().unwrap_or(0),
            SeparatorTree::Components(children) => children.iter().map(Self::depth).max().unwrap_or(0),
        }
    }

    pub fn leaves(&self) -> Vec<&[usize]> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let SeparatorTree::Leaf { vertices } = t {
                out.push(vertices.as_slice());
            }
        });
        out
    }

    pub fn separators(&self) -> Vec<&Separator> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let SeparatorTree::Split { separator, .. } = t {
                out.push(separator);
            }
        });
        out
    }

    /// Every vertex stored in a leaf or a separator, with repetitions.
    pub fn all_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.leaves().into_iter().flatten().copied().collect();
        for s in self.separators() {
            out.extend(&s.vertices);
        }
        out
    }

    fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a SeparatorTree)) {
        f(self);
        match self {
            SeparatorTree::Leaf { .. } => {}
            SeparatorTree::Split { children, .. } | SeparatorTree::Components(children) => {
                for c in children {
                    c.walk(f);
                }
            }
        }
    }
}

/// Splits `g` recursively until every piece has at most `cutoff` vertices.
/// Disconnected pieces are split into their components first.
pub fn separator_hierarchy(g: &SpannerGraph, cutoff: usize) -> Result<SeparatorTree> {
    if cutoff == 0 {
        return Err(Error::InvalidParams("cutoff must be at least 1".into()));
    }
    build(g, &(0..g.num_vertices()).collect::<Vec<_>>(), cutoff)
}

fn build(g: &SpannerGraph, vertices: &[usize], cutoff: usize) -> Result<SeparatorTree> {
    if vertices.len() <= cutoff {
        return Ok(SeparatorTree::Leaf { vertices: vertices.to_vec() });
    }
    let (sub, _) = g.induced(vertices);
    let comps = components(&sub);
    if comps.len() > 1 {
        let children = comps
            .iter()
            .map(|c| build(g, &c.iter().map(|&v| vertices[v]).collect::<Vec<_>>(), cutoff))
            .collect::<Result<_>>()?;
        return Ok(SeparatorTree::Components(children));
    }
    // Size is not enforced here: a hierarchy must exist for every input.
    let p = planarize(&sub)?;
    let local = map_to_spanner(&sub, &p, &planar_separator_unchecked(&p, &unit_weights(&p))?);
    let lift = |set: &[usize]| set.iter().map(|&v| vertices[v]).collect::<Vec<_>>();
    let separator = Separator {
        vertices: lift(&local.vertices),
        side_a: lift(&local.side_a),
        side_b: lift(&local.side_b),
        balance: local.balance,
    };
    let mut children = Vec::new();
    for side in [&separator.side_a, &separator.side_b] {
        if !side.is_empty() {
            children.push(build(g, side, cutoff)?);
        }
    }
    Ok(SeparatorTree::Split { separator, children })
}

fn components(g: &SpannerGraph) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(w, _) in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
