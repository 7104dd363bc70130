use thiserror::Error;

/// Errors raised by the geometry, construction and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("segments {0:?} and {1:?} are collinear and overlap")]
    DegenerateOverlap([f64; 4], [f64; 4]),
    #[error("point ({0}, {1}) lies in the interior of segment {2:?}")]
    VertexOnEdge(f64, f64, [f64; 4]),
    #[error("segments do not cross at an interior point")]
    NotCrossing,
    #[error("crossings of edge {edge} at ({x}, {y}) coincide")]
    CoincidentCrossings { edge: usize, x: f64, y: f64 },
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("stretch factor must exceed 1, got {0}")]
    InvalidStretch(f64),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("separator of size {size} exceeds the bound {bound:.3}")]
    SeparatorTooLarge { size: usize, bound: f64 },
    #[error("no balanced separator found (largest piece {largest} of {total})")]
    Unbalanced { largest: f64, total: f64 },
    #[error("no long U-B edge beyond column gap {0}")]
    NoLongEdge(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
