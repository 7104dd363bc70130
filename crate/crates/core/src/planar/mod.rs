//! Planarization of an embedded spanner and balanced separators built on it.

mod hierarchy;
mod planarize;
mod separator;

pub use hierarchy::{separator_hierarchy, SeparatorTree};
pub use planarize::{planarize, planarize_with, Planarization};
pub use separator::{planar_separator, spanner_separator, Separator, SEPARATOR_CONSTANT};

use crate::error::Result;
use crate::spanner::{single_source, SpannerGraph};

/// Plain Dijkstra distances from `source`, for comparison with
/// separator-based methods.
pub fn sssp_baseline(g: &SpannerGraph, source: usize) -> Result<Vec<f64>> {
    single_source(g, source)
}
