//! Photon-sharing trade-off regions of the pure-loss channel.
//!
//! Both regions are cut out by three linear inequalities whose right-hand
//! sides depend on the sharing fraction `lambda`:
//!
//! | region | face 1        | face 2   | face 3       |
//! |--------|---------------|----------|--------------|
//! | CQE    | `C + 2Q <= b1` | `Q + E <= b2` | `C + Q + E <= b3` |
//! | RPS    | `R + P <= b1`  | `P + S <= b2` | `R + P + S <= b3` |
//!
//! Rates are signed: positive means the resource is generated, negative that
//! it is consumed.

mod bounds;
mod frontier;
mod gain;
mod minkowski;
mod timeshare;

pub use bounds::{cqe_bounds, rps_bounds, BoundTriple, RateTriple, RegionTag};
pub use frontier::{
    ce_frontier, ce_rate_at_consumption, cq_frontier, max_first_given_second, rp_frontier, Frontier, FrontierPoint,
    MaxRate, PointOrigin, Slice,
};
pub use gain::{gain_metrics, CoordinateGain, GainMetrics};
pub use minkowski::minkowski_sum;
pub use timeshare::{
    ce_timeshare_corners, cq_timeshare_corners, reallocating_timeshare_cq, timeshare_companion_at, timeshare_frontier,
    ReallocatingPoint,
};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Fraction `lambda` of the photon budget dedicated to the quantum (or
/// private) part of the code.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ShareParam(f64);

impl ShareParam {
    pub const ZERO: ShareParam = ShareParam(0.0);
    pub const ONE: ShareParam = ShareParam(1.0);

    pub fn new(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(domain("sharing fraction", lambda, "must lie in [0, 1]"));
        }
        Ok(ShareParam(lambda))
    }

    pub fn lambda(self) -> f64 {
        self.0
    }

    /// `1 - lambda`, the fraction left to the classical (public) part.
    pub fn lambda_bar(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for ShareParam {
    type Error = crate::Error;
    fn try_from(v: f64) -> Result<Self> {
        ShareParam::new(v)
    }
}

impl From<ShareParam> for f64 {
    fn from(s: ShareParam) -> f64 {
        s.0
    }
}

/// Sorted set of sharing fractions to sweep, always containing 0 and 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ShareGrid {
    points: Vec<ShareParam>,
}

impl ShareGrid {
    pub const DEFAULT_SIZE: usize = 512;
    pub const DEFAULT_FLOOR: f64 = 1e-6;

    /// `lambda = 0` followed by `n` log-spaced values from `floor` to 1.
    ///
    /// Optimal fractions at large budgets are small, so uniform grids waste
    /// most of their points.
    pub fn log_spaced(n: usize, floor: f64) -> Result<Self> {
        if n < 2 {
            return Err(domain("grid size", n as f64, "need at least 2 points"));
        }
        if !(floor > 0.0 && floor < 1.0) {
            return Err(domain("grid floor", floor, "must lie in (0, 1)"));
        }
        let lo = floor.ln();
        let mut points = Vec::with_capacity(n + 1);
        points.push(ShareParam::ZERO);
        for i in 0..n {
            let x = if i + 1 == n {
                1.0
            } else {
                (lo * (1.0 - i as f64 / (n - 1) as f64)).exp()
            };
            points.push(ShareParam(x));
        }
        Ok(ShareGrid { points })
    }

    /// `n` evenly spaced values on `[0, 1]`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(domain("grid size", n as f64, "need at least 2 points"));
        }
        let points = (0..n)
            .map(|i| ShareParam(if i + 1 == n { 1.0 } else { i as f64 / (n - 1) as f64 }))
            .collect();
        Ok(ShareGrid { points })
    }

    pub fn points(&self) -> &[ShareParam] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl Default for ShareGrid {
    fn default() -> Self {
        ShareGrid::log_spaced(Self::DEFAULT_SIZE, Self::DEFAULT_FLOOR).expect("valid default grid")
    }
}
