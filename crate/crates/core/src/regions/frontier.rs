use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{bounds_for, cqe_bounds, BoundTriple, RateTriple, RegionTag};
use super::{ShareGrid, ShareParam};
use crate::channel::{ChannelSpec, PowerBudget};
use crate::entropy::{g, g_inverse, EntropyBits};
use crate::error::{Error, Result};
use crate::solve::golden_max;

/// A two-dimensional slice through a region.
///
/// Each slice fixes one coordinate to zero and traces the other two. The
/// traced coordinate increases along a frontier while the companion one
/// does not increase; both are "larger is better".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slice {
    /// classical vs quantum, E = 0
    Cq,
    /// classical vs entanglement, Q = 0
    Ce,
    /// public vs private, S = 0
    Rp,
}

impl Slice {
    pub fn region(self) -> RegionTag {
        match self {
            Slice::Cq | Slice::Ce => RegionTag::Cqe,
            Slice::Rp => RegionTag::Rps,
        }
    }

    /// Index into [`RateTriple::coords`] of the traced coordinate.
    pub fn traced_index(self) -> usize {
        match self {
            Slice::Cq | Slice::Rp => 1,
            Slice::Ce => 2,
        }
    }

    pub fn traced(self, r: &RateTriple) -> f64 {
        r.coords()[self.traced_index()]
    }

    /// The companion coordinate is always the first one (C or R).
    pub fn companion(self, r: &RateTriple) -> f64 {
        r.first
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slice::Cq => "cq",
            Slice::Ce => "ce",
            Slice::Rp => "rp",
        })
    }
}

/// Where a frontier point came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointOrigin {
    /// A trade-off code with sharing fraction `share`; `bounds` are the
    /// region faces at that fraction.
    Sharing { share: ShareParam, bounds: BoundTriple },
    /// Time-sharing with weight `t` on the first corner.
    TimeShare { t: f64 },
    /// Sum of points from two frontiers.
    Sum,
}

impl PointOrigin {
    pub fn share(&self) -> Option<ShareParam> {
        match self {
            PointOrigin::Sharing { share, .. } => Some(*share),
            _ => None,
        }
    }

    pub fn bounds(&self) -> Option<BoundTriple> {
        match self {
            PointOrigin::Sharing { bounds, .. } => Some(*bounds),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub rates: RateTriple,
    pub origin: PointOrigin,
}

/// Ordered rate points along a slice, sorted by the traced coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frontier {
    pub slice: Slice,
    pub points: Vec<FrontierPoint>,
}

impl Frontier {
    pub fn new(slice: Slice, points: Vec<FrontierPoint>) -> Self {
        Frontier { slice, points }
    }

    pub fn singleton(slice: Slice, rates: RateTriple) -> Self {
        Frontier::new(
            slice,
            vec![FrontierPoint {
                rates,
                origin: PointOrigin::Sum,
            }],
        )
    }

    pub fn region(&self) -> RegionTag {
        self.slice.region()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn traced(&self) -> Vec<f64> {
        self.points.iter().map(|p| self.slice.traced(&p.rates)).collect()
    }

    pub fn companion(&self) -> Vec<f64> {
        self.points.iter().map(|p| self.slice.companion(&p.rates)).collect()
    }

    /// Traced coordinate strictly increasing and companion nonincreasing.
    pub fn is_strict_pareto(&self) -> bool {
        self.points.windows(2).all(|w| {
            let (a, b) = (&w[0].rates, &w[1].rates);
            self.slice.traced(a) < self.slice.traced(b) && self.slice.companion(a) >= self.slice.companion(b)
        })
    }

    /// Traced coordinate nondecreasing and companion nonincreasing.
    pub fn is_weak_pareto(&self) -> bool {
        self.points.windows(2).all(|w| {
            let (a, b) = (&w[0].rates, &w[1].rates);
            self.slice.traced(a) <= self.slice.traced(b) && self.slice.companion(a) >= self.slice.companion(b)
        })
    }

    /// Piecewise-linear companion value at `traced`, or `None` outside the
    /// traced range.
    pub fn companion_at(&self, traced: f64) -> Option<f64> {
        let t = self.traced();
        let c = self.companion();
        if t.is_empty() || traced < t[0] || traced > *t.last()? {
            return None;
        }
        let i = t.partition_point(|x| *x < traced);
        if i == 0 || t[i] == traced {
            return Some(c[i]);
        }
        let w = (traced - t[i - 1]) / (t[i] - t[i - 1]);
        Some(c[i - 1] + w * (c[i] - c[i - 1]))
    }
}

/// Best companion rate for a fixed traced rate, and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxRate {
    pub rate: f64,
    pub share: ShareParam,
    pub bounds: BoundTriple,
}

/// Largest first coordinate with the third set to zero, given the second.
///
/// For CQE this is `max_lambda min(b1 - 2Q, b3 - Q)` subject to `Q <= b2`;
/// for RPS `max_lambda min(b1 - P, b3 - P)` subject to `P <= b2`. The
/// grid optimum is refined on its neighbouring cells, first locating the
/// edge of the feasible set by bisection and then by golden section.
pub fn max_first_given_second(
    region: RegionTag,
    ch: ChannelSpec,
    p: PowerBudget,
    target: f64,
    grid: &ShareGrid,
) -> Result<MaxRate> {
    if !target.is_finite() || target < 0.0 {
        return Err(crate::error::domain("target rate", target, "must be finite and >= 0"));
    }
    let objective = |lambda: f64| -> Option<(f64, BoundTriple)> {
        let b = bounds_for(region, ch, p, ShareParam(lambda));
        if target > b.b2 {
            return None;
        }
        let first = match region {
            RegionTag::Cqe => (b.b1 - 2.0 * target).min(b.b3 - target),
            RegionTag::Rps => (b.b1 - target).min(b.b3 - target),
        };
        Some((first, b))
    };

    let lambdas: Vec<f64> = grid.points().iter().map(|s| s.lambda()).collect();
    let values: Vec<Option<f64>> = lambdas.par_iter().map(|&l| objective(l).map(|(v, _)| v)).collect();

    let best = values.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))).fold(
        None,
        |acc: Option<(usize, f64)>, (i, v)| match acc {
            Some((_, bv)) if bv >= v => acc,
            _ => Some((i, v)),
        },
    );
    let Some((i, _)) = best else {
        let max_attainable = lambdas
            .iter()
            .map(|&l| bounds_for(region, ch, p, ShareParam(l)).b2)
            .fold(f64::NEG_INFINITY, f64::max);
        return Err(Error::Infeasible { target, max_attainable });
    };

    let feasible = |l: f64| objective(l).is_some();
    let edge = |mut out: f64, mut inside: f64| {
        while (out - inside).abs() > 1e-13 {
            let mid = 0.5 * (out + inside);
            if mid == out || mid == inside {
                break;
            }
            if feasible(mid) {
                inside = mid;
            } else {
                out = mid;
            }
        }
        inside
    };

    let centre = lambdas[i];
    let mut lo = if i > 0 { lambdas[i - 1] } else { centre };
    let mut hi = if i + 1 < lambdas.len() { lambdas[i + 1] } else { centre };
    if !feasible(lo) {
        lo = edge(lo, centre);
    }
    if !feasible(hi) {
        hi = edge(hi, centre);
    }

    let score = |l: f64| objective(l).map_or(f64::NEG_INFINITY, |(v, _)| v);
    let (mut arg, mut val) = golden_max(score, lo, hi, 1e-10);
    if score(centre) > val {
        arg = centre;
        val = score(centre);
    }
    let (_, bounds) = objective(arg).expect("refined optimum is feasible");
    Ok(MaxRate {
        rate: val,
        share: ShareParam(arg),
        bounds,
    })
}

fn sweep<F>(slice: Slice, grid: &ShareGrid, point_at: F) -> Frontier
where
    F: Fn(ShareParam) -> Option<FrontierPoint> + Sync,
{
    let raw: Vec<Option<FrontierPoint>> = grid.points().par_iter().map(|&s| point_at(s)).collect();
    let mut pts: Vec<FrontierPoint> = raw.into_iter().flatten().collect();
    pts.sort_by(|a, b| {
        slice
            .traced(&a.rates)
            .total_cmp(&slice.traced(&b.rates))
            .then(slice.companion(&b.rates).total_cmp(&slice.companion(&a.rates)))
    });
    // keep the best companion per traced value, then drop anything dominated
    let mut out: Vec<FrontierPoint> = Vec::with_capacity(pts.len());
    for p in pts {
        if let Some(last) = out.last() {
            if slice.traced(&last.rates) == slice.traced(&p.rates) {
                continue;
            }
        }
        while let Some(last) = out.last() {
            if slice.companion(&last.rates) <= slice.companion(&p.rates) {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    Frontier::new(slice, out)
}

fn zero_third_point(region: RegionTag, ch: ChannelSpec, p: PowerBudget, s: ShareParam) -> Option<FrontierPoint> {
    let b = bounds_for(region, ch, p, s);
    // lambda = 0 always has b2 = 0, so the sweep never comes back empty.
    if b.b2 < 0.0 {
        return None;
    }
    let second = b.b2;
    let first = match region {
        RegionTag::Cqe => (b.b1 - 2.0 * second).min(b.b3 - second),
        RegionTag::Rps => (b.b1 - second).min(b.b3 - second),
    };
    Some(FrontierPoint {
        rates: RateTriple::new(region, first, second, 0.0),
        origin: PointOrigin::Sharing { share: s, bounds: b },
    })
}

/// `(C, Q)` frontier with `E = 0`. At each `lambda` the point spends the
/// full quantum face, `Q = b2`, and takes the best classical rate left.
pub fn cq_frontier(ch: ChannelSpec, p: PowerBudget, grid: &ShareGrid) -> Frontier {
    sweep(Slice::Cq, grid, |s| zero_third_point(RegionTag::Cqe, ch, p, s))
}

/// `(R, P)` frontier with `S = 0`.
pub fn rp_frontier(ch: ChannelSpec, p: PowerBudget, grid: &ShareGrid) -> Frontier {
    sweep(Slice::Rp, grid, |s| zero_third_point(RegionTag::Rps, ch, p, s))
}

/// `(C, E)` frontier with `Q = 0`: `C = b1` while consuming `g(lambda N_S)`
/// ebits, i.e. `E = -g(lambda N_S)`.
pub fn ce_frontier(ch: ChannelSpec, p: PowerBudget, grid: &ShareGrid) -> Frontier {
    sweep(Slice::Ce, grid, |s| {
        let b = cqe_bounds(ch, p, s);
        let consumed = g(s.lambda() * p.ns());
        Some(FrontierPoint {
            rates: RateTriple::new(RegionTag::Cqe, b.b1, 0.0, 0.0 - consumed),
            origin: PointOrigin::Sharing { share: s, bounds: b },
        })
    })
}

/// Point on the `(C, E)` frontier consuming exactly `consumption` ebits.
pub fn ce_rate_at_consumption(ch: ChannelSpec, p: PowerBudget, consumption: EntropyBits) -> Result<MaxRate> {
    let max_cost = g(p.ns());
    if consumption.value() > max_cost {
        return Err(Error::Infeasible {
            target: consumption.value(),
            max_attainable: max_cost,
        });
    }
    let photons = g_inverse(consumption)?.value();
    let lambda = if p.ns() == 0.0 {
        0.0
    } else {
        (photons / p.ns()).min(1.0)
    };
    let share = ShareParam(lambda);
    let bounds = cqe_bounds(ch, p, share);
    Ok(MaxRate {
        rate: bounds.b1,
        share,
        bounds,
    })
}
