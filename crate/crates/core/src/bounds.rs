//! Closed-form bounds on the number of edges that can cross a greedy
//! spanner edge.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Length-ratio window `alpha·|AB| ≤ |PQ| ≤ beta·|AB|`, and the ratio floor
/// `epsilon` used when combining bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandParams {
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
}

impl BandParams {
    pub fn window(alpha: f64, beta: f64) -> Self {
        BandParams { alpha, beta, epsilon: alpha }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Crossings by much longer edges, summed over all angle classes.
    pub c1: f64,
    /// Crossings by edges whose length ratio lies in `[epsilon, long_ratio)`.
    pub c2: f64,
    pub total: f64,
    /// Angle-class width used for `c1`.
    pub theta: f64,
    pub angle_classes: usize,
}

fn check_stretch(t: f64) -> Result<()> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::InvalidParams(format!("stretch factor must exceed 1, got {t}")));
    }
    Ok(())
}

/// Length ratio `3t(t+1)/(t-1)` above which crossing edges count as long.
pub fn long_ratio(t: f64) -> f64 {
    3.0 * t * (t + 1.0) / (t - 1.0)
}

/// Largest admissible angle-class width for endpoint ordering,
/// `(t-1)/(2(t+1))`, exclusive.
pub fn ordering_theta_limit(t: f64) -> f64 {
    (t - 1.0) / (2.0 * (t + 1.0))
}

/// The class width actually used: just inside [`ordering_theta_limit`].
pub fn ordering_theta(t: f64) -> f64 {
    ordering_theta_limit(t) * (1.0 - 1e-6)
}

/// Maximum number of long, mutually `theta`-parallel edges crossing one edge:
/// `4t / ((t - 1 - 2 sin(θ/2)) cos θ) + 1`.
pub fn bound_long_parallel(t: f64, theta: f64) -> Result<f64> {
    check_stretch(t)?;
    if !(theta > 0.0) || theta >= PI / 2.0 {
        return Err(Error::InvalidParams(format!("theta must lie in (0, π/2), got {theta}")));
    }
    let gap = t - 1.0 - 2.0 * (theta / 2.0).sin();
    if gap <= 0.0 {
        return Err(Error::InvalidParams(format!("t - 1 - 2 sin(θ/2) = {gap} is not positive")));
    }
    Ok(4.0 * t / (gap * theta.cos()) + 1.0)
}

/// Maximum number of crossing edges with length ratio in `[alpha, beta]`:
/// `[2β(2β+1)/α² · 8t²/(t-1)²]²`.
pub fn bound_band(t: f64, p: &BandParams) -> Result<f64> {
    check_stretch(t)?;
    if !(p.alpha > 0.0) || p.alpha > p.beta || !p.beta.is_finite() {
        return Err(Error::InvalidParams(format!("need 0 < alpha ≤ beta, got {} and {}", p.alpha, p.beta)));
    }
    let squares = 2.0 * p.beta * (2.0 * p.beta + 1.0) / (p.alpha * p.alpha);
    let per_square = 8.0 * t * t / ((t - 1.0) * (t - 1.0));
    let cells = squares * per_square;
    Ok(cells * cells)
}

/// Bound on the number of edges of length at least `epsilon·|AB|` crossing
/// an edge `AB`: long edges over `⌈π/θ⌉` angle classes plus the band
/// `[epsilon, 3t(t+1)/(t-1)]`.
pub fn bound_total_not_smaller(t: f64, epsilon: f64) -> Result<BoundReport> {
    check_stretch(t)?;
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidParams(format!("epsilon must be positive, got {epsilon}")));
    }
    let theta = ordering_theta(t);
    let angle_classes = (PI / theta).ceil() as usize;
    let c1 = bound_long_parallel(t, theta)? * angle_classes as f64;
    let beta = long_ratio(t);
    let c2 = bound_band(t, &BandParams { alpha: epsilon, beta: beta.max(epsilon), epsilon })?;
    Ok(BoundReport { c1, c2, total: c1 + c2, theta, angle_classes })
}
