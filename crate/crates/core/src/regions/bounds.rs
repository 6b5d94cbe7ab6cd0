use std::fmt;

use serde::{Deserialize, Serialize};

use super::ShareParam;
use crate::channel::{ChannelSpec, PowerBudget};
use crate::entropy::g;

/// Which trade-off region a triple belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionTag {
    /// classical bits, qubits, ebits
    #[serde(rename = "CQE")]
    Cqe,
    /// public bits, private bits, secret-key bits
    #[serde(rename = "RPS")]
    Rps,
}

impl RegionTag {
    /// Names of the three coordinates.
    pub fn axes(self) -> [&'static str; 3] {
        match self {
            RegionTag::Cqe => ["C", "Q", "E"],
            RegionTag::Rps => ["R", "P", "S"],
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionTag::Cqe => "CQE",
            RegionTag::Rps => "RPS",
        })
    }
}

/// Right-hand sides of the three region inequalities at a fixed `lambda`.
///
/// `b2` can be negative when `eta < 1/2`, so these are plain floats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundTriple {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

/// A rate point `(C, Q, E)` or `(R, P, S)` per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateTriple {
    pub region: RegionTag,
    pub first: f64,
    pub second: f64,
    pub third: f64,
}

impl RateTriple {
    pub fn new(region: RegionTag, first: f64, second: f64, third: f64) -> Self {
        RateTriple {
            region,
            first,
            second,
            third,
        }
    }

    pub fn origin(region: RegionTag) -> Self {
        RateTriple::new(region, 0.0, 0.0, 0.0)
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.first, self.second, self.third]
    }

    /// Slack of each face (bound minus left-hand side); all nonnegative for a
    /// point inside the region.
    pub fn slack(&self, b: &BoundTriple) -> [f64; 3] {
        let (x, y, z) = (self.first, self.second, self.third);
        match self.region {
            RegionTag::Cqe => [b.b1 - (x + 2.0 * y), b.b2 - (y + z), b.b3 - (x + y + z)],
            RegionTag::Rps => [b.b1 - (x + y), b.b2 - (y + z), b.b3 - (x + y + z)],
        }
    }

    pub fn satisfies(&self, b: &BoundTriple, tol: f64) -> bool {
        self.slack(b).iter().all(|s| *s >= -tol)
    }

    pub fn add(&self, other: &RateTriple) -> RateTriple {
        RateTriple::new(
            self.region,
            self.first + other.first,
            self.second + other.second,
            self.third + other.third,
        )
    }

    /// `t * self + (1 - t) * other`.
    pub fn mix(&self, other: &RateTriple, t: f64) -> RateTriple {
        let s = 1.0 - t;
        RateTriple::new(
            self.region,
            t * self.first + s * other.first,
            t * self.second + s * other.second,
            t * self.third + s * other.third,
        )
    }
}

/// CQE bounds of the displaced two-mode-squeezed-vacuum code:
///
/// - `b1 = g(lambda N_S) + g(eta N_S) - g((1-eta) lambda N_S)`
/// - `b2 = g(eta lambda N_S) - g((1-eta) lambda N_S)`
/// - `b3 = g(eta N_S) - g((1-eta) lambda N_S)`
pub fn cqe_bounds(ch: ChannelSpec, p: PowerBudget, s: ShareParam) -> BoundTriple {
    let ns = p.ns();
    let quantum = s.lambda() * ns;
    let leaked = g(ch.loss() * quantum);
    BoundTriple {
        b1: g(quantum) + g(ch.eta() * ns) - leaked,
        b2: g(ch.eta() * quantum) - leaked,
        b3: g(ch.eta() * ns) - leaked,
    }
}

/// RPS bounds with Gaussian coherent-state codewords:
///
/// - `b1 = g(eta N_S)`
/// - `b2 = g(eta lambda N_S) - g((1-eta) lambda N_S)`
/// - `b3 = g(eta N_S) - g((1-eta) lambda N_S)`
pub fn rps_bounds(ch: ChannelSpec, p: PowerBudget, s: ShareParam) -> BoundTriple {
    let ns = p.ns();
    let private = s.lambda() * ns;
    let leaked = g(ch.loss() * private);
    BoundTriple {
        b1: g(ch.eta() * ns),
        b2: g(ch.eta() * private) - leaked,
        b3: g(ch.eta() * ns) - leaked,
    }
}

pub(crate) fn bounds_for(region: RegionTag, ch: ChannelSpec, p: PowerBudget, s: ShareParam) -> BoundTriple {
    match region {
        RegionTag::Cqe => cqe_bounds(ch, p, s),
        RegionTag::Rps => rps_bounds(ch, p, s),
    }
}
