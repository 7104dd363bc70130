//! Greedy geometric t-spanners in the plane: construction, crossing
//! analysis, crossing bounds, planarization-based separators, and
//! adversarial zig-zag instances.

pub mod adversarial;
pub mod bounds;
pub mod crossing;
pub mod error;
pub mod gen;
pub mod geom;
pub mod planar;
pub mod spanner;

pub use error::{Error, Result};
pub use geom::{Point, PointSet, Segment};
pub use spanner::{SpannerConfig, SpannerGraph, TieBreak};
