//! Time-sharing baselines.
//!
//! Time-sharing runs one single-task protocol for a fraction `t` of the
//! channel uses and another for the rest. With the full photon budget in each
//! block the achievable set is the straight segment between the two corners.

use serde::Serialize;

use super::bounds::{RateTriple, RegionTag};
use super::frontier::{Frontier, FrontierPoint, PointOrigin, Slice};
use crate::channel::{
    classical_capacity, ea_classical_capacity, quantum_capacity, quantum_capacity_at, quantum_capacity_limit,
    ChannelSpec, PowerBudget,
};
use crate::entropy::g;
use crate::error::{domain, Error, Result};
use crate::solve::{bisect, golden_max};

/// Segment `t * corner_a + (1 - t) * corner_b` sampled at `n` evenly spaced
/// `t`, ordered by the slice's traced coordinate.
pub fn timeshare_frontier(slice: Slice, corner_a: RateTriple, corner_b: RateTriple, n: usize) -> Result<Frontier> {
    if n < 2 {
        return Err(domain("grid size", n as f64, "need at least 2 points"));
    }
    if corner_a.region != slice.region() || corner_b.region != slice.region() {
        return Err(Error::IncompatibleFrontiers(format!(
            "corners must lie in the {} region",
            slice.region()
        )));
    }
    let mut points: Vec<FrontierPoint> = (0..n)
        .map(|i| {
            let t = if i + 1 == n { 1.0 } else { i as f64 / (n - 1) as f64 };
            let rates = if t == 0.0 {
                corner_b
            } else if t == 1.0 {
                corner_a
            } else {
                corner_a.mix(&corner_b, t)
            };
            FrontierPoint {
                rates,
                origin: PointOrigin::TimeShare { t },
            }
        })
        .collect();
    points.sort_by(|a, b| slice.traced(&a.rates).total_cmp(&slice.traced(&b.rates)));
    Ok(Frontier::new(slice, points))
}

/// Companion rate on the time-sharing segment where the traced coordinate
/// equals `traced`.
pub fn timeshare_companion_at(slice: Slice, corner_a: RateTriple, corner_b: RateTriple, traced: f64) -> Result<f64> {
    let (ta, tb) = (slice.traced(&corner_a), slice.traced(&corner_b));
    let (lo, hi) = (ta.min(tb), ta.max(tb));
    if traced < lo || traced > hi {
        return Err(Error::Infeasible {
            target: traced,
            max_attainable: hi,
        });
    }
    if ta == tb {
        return Ok(slice.companion(&corner_a).max(slice.companion(&corner_b)));
    }
    let t = (traced - tb) / (ta - tb);
    Ok(t * slice.companion(&corner_a) + (1.0 - t) * slice.companion(&corner_b))
}

/// `(classical capacity, 0, 0)` and `(0, quantum capacity, 0)`.
pub fn cq_timeshare_corners(ch: ChannelSpec, p: PowerBudget) -> (RateTriple, RateTriple) {
    (
        RateTriple::new(RegionTag::Cqe, classical_capacity(ch, p).value(), 0.0, 0.0),
        RateTriple::new(RegionTag::Cqe, 0.0, quantum_capacity(ch, p).value(), 0.0),
    )
}

/// Entanglement-assisted corner `(C_E, 0, -g(N_S))` and the unassisted
/// classical corner `(g(eta N_S), 0, 0)`.
pub fn ce_timeshare_corners(ch: ChannelSpec, p: PowerBudget) -> (RateTriple, RateTriple) {
    let ea = ea_classical_capacity(ch, p);
    (
        RateTriple::new(RegionTag::Cqe, ea.rate.value(), 0.0, -ea.ebit_cost.value()),
        RateTriple::new(RegionTag::Cqe, classical_capacity(ch, p).value(), 0.0, 0.0),
    )
}

/// Best time-sharing point when photons may be moved between the blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReallocatingPoint {
    pub classical_rate: f64,
    /// fraction of channel uses running the quantum code
    pub quantum_fraction: f64,
    pub quantum_photons: f64,
    pub classical_photons: f64,
}

/// Smallest photon number with `Q(eta, n) >= rate`.
fn photons_for_quantum_rate(ch: ChannelSpec, rate: f64) -> Result<f64> {
    if rate <= 0.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while quantum_capacity_at(ch, hi).value() < rate {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::NoConvergence("quantum rate above the infinite-photon limit"));
        }
    }
    bisect(|n| quantum_capacity_at(ch, n).value() - rate, 0.0, hi, 1e-14)
}

/// Stricter `(C, Q)` time-sharing baseline.
///
/// A fraction `t` of the channel uses runs the quantum code at `N_q` photons
/// and the rest the classical code at `N_c`, subject only to the average
/// `t N_q + (1 - t) N_c = N_S`. Returns the largest classical rate
/// `(1 - t) g(eta N_c)` with `t Q(eta, N_q) = target`.
pub fn reallocating_timeshare_cq(ch: ChannelSpec, p: PowerBudget, target: f64) -> Result<ReallocatingPoint> {
    if !target.is_finite() || target < 0.0 {
        return Err(domain("target rate", target, "must be finite and >= 0"));
    }
    let ns = p.ns();
    if target == 0.0 {
        return Ok(ReallocatingPoint {
            classical_rate: g(ch.eta() * ns),
            quantum_fraction: 0.0,
            quantum_photons: 0.0,
            classical_photons: ns,
        });
    }
    let limit = quantum_capacity_limit(ch).finite().unwrap_or(f64::INFINITY);
    if target >= limit || ns == 0.0 {
        return Err(Error::Infeasible {
            target,
            max_attainable: quantum_capacity(ch, p).value(),
        });
    }

    let evaluate = |t: f64| -> Option<ReallocatingPoint> {
        if t <= 0.0 || t > 1.0 {
            return None;
        }
        let nq = photons_for_quantum_rate(ch, target / t).ok()?;
        let used = t * nq;
        if used > ns {
            return None;
        }
        let (rate, nc) = if t == 1.0 {
            (0.0, 0.0)
        } else {
            let nc = (ns - used) / (1.0 - t);
            ((1.0 - t) * g(ch.eta() * nc), nc)
        };
        Some(ReallocatingPoint {
            classical_rate: rate,
            quantum_fraction: t,
            quantum_photons: nq,
            classical_photons: nc,
        })
    };
    let score = |t: f64| evaluate(t).map_or(f64::NEG_INFINITY, |r| r.classical_rate);

    let t_min = target / limit;
    let steps = 400;
    let ts: Vec<f64> = (1..=steps)
        .map(|i| t_min + (1.0 - t_min) * i as f64 / steps as f64)
        .collect();
    let (i, best) =
        ts.iter().map(|&t| score(t)).enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
        );
    if best == f64::NEG_INFINITY {
        return Err(Error::Infeasible {
            target,
            max_attainable: quantum_capacity(ch, p).value(),
        });
    }
    let lo = if i == 0 { t_min } else { ts[i - 1] };
    let hi = ts[(i + 1).min(steps - 1)];
    let (t, _) = golden_max(score, lo, hi, 1e-12);
    let refined = evaluate(t).filter(|r| r.classical_rate >= best);
    Ok(refined.unwrap_or_else(|| evaluate(ts[i]).expect("grid optimum is feasible")))
}
