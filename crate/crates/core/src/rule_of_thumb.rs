//! Photon-allocation rule of thumb for trade-off codes.
//!
//! For large photon numbers the quantum rate of the pure-loss channel obeys
//! `Q(eta, x) >= Q_max(eta) - 1 / (eta (1 - eta) x ln 2)`. Setting the
//! correction equal to a tolerated gap `eps` gives the largest fraction of
//! the budget that needs to go to the quantum part of the code,
//! `lambda* = 1 / (eta (1 - eta) eps N_S ln 2)`.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::channel::{quantum_capacity_at, ChannelSpec, PowerBudget};
use crate::entropy::g;
use crate::error::{domain, Result};
use crate::regions::ShareParam;

/// Tolerated shortfall from the infinite-photon quantum capacity, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsilonGap(f64);

impl EpsilonGap {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(domain("epsilon", eps, "must be finite and > 0"));
        }
        Ok(EpsilonGap(eps))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_eta(ch: ChannelSpec) -> Result<f64> {
    let eta = ch.eta();
    if !(eta > 0.5 && eta < 1.0) {
        return Err(domain("transmissivity", eta, "rule of thumb needs 1/2 < eta < 1"));
    }
    Ok(eta)
}

/// `log2(eta / (1 - eta)) - 1 / (eta (1 - eta) x ln 2)` for `x` photons in
/// the quantum part. May be negative at small `x`.
pub fn taylor_lower_bound_at(ch: ChannelSpec, quantum_photons: f64) -> Result<f64> {
    let eta = check_eta(ch)?;
    if quantum_photons.is_nan() || quantum_photons <= 0.0 {
        return Err(domain("quantum photon number", quantum_photons, "must be > 0"));
    }
    let q_max = eta.log2() - (1.0 - eta).log2();
    Ok(q_max - 1.0 / (eta * (1.0 - eta) * quantum_photons * LN_2))
}

/// Lower bound on the trade-off quantum rate `Q(eta, lambda N_S)`.
pub fn taylor_lower_bound(ch: ChannelSpec, p: PowerBudget, s: ShareParam) -> Result<f64> {
    taylor_lower_bound_at(ch, s.lambda() * p.ns())
}

/// Photon number at which the bound crosses zero.
pub fn taylor_zero_crossing(ch: ChannelSpec) -> Result<f64> {
    let eta = check_eta(ch)?;
    let q_max = eta.log2() - (1.0 - eta).log2();
    Ok(1.0 / (eta * (1.0 - eta) * LN_2 * q_max))
}

/// `min(1, 1 / (eta (1 - eta) eps N_S ln 2))`.
pub fn lambda_star(ch: ChannelSpec, p: PowerBudget, gap: EpsilonGap) -> Result<ShareParam> {
    let eta = check_eta(ch)?;
    let ns = p.ns();
    if ns.is_nan() || ns <= 0.0 {
        return Err(domain("photon budget", ns, "must be > 0"));
    }
    let raw = 1.0 / (eta * (1.0 - eta) * gap.value() * ns * LN_2);
    ShareParam::new(raw.min(1.0))
}

/// Outcome of checking the bound against the exact rate over a photon grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSweep {
    pub eta: f64,
    pub points: usize,
    /// smallest `Q(eta, x) - bound(x)` over the grid
    pub min_margin: f64,
    pub argmin_photons: f64,
    /// grid photon numbers where the bound exceeds the exact rate
    pub violations: Vec<f64>,
}

impl BoundSweep {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compare `g(eta x) - g((1 - eta) x)` with the Taylor bound on `n`
/// log-spaced photon numbers in `[lo, hi]`.
pub fn sweep_bound(ch: ChannelSpec, lo: f64, hi: f64, n: usize) -> Result<BoundSweep> {
    let eta = check_eta(ch)?;
    if !(lo > 0.0 && hi >= lo) || n < 2 {
        return Err(domain("sweep range", lo, "need 0 < lo <= hi and n >= 2"));
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    let mut sweep = BoundSweep {
        eta,
        points: n,
        min_margin: f64::INFINITY,
        argmin_photons: lo,
        violations: Vec::new(),
    };
    for i in 0..n {
        let x = (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp();
        let exact = g(eta * x) - g((1.0 - eta) * x);
        let margin = exact - taylor_lower_bound_at(ch, x)?;
        if margin < sweep.min_margin {
            sweep.min_margin = margin;
            sweep.argmin_photons = x;
        }
        if margin < 0.0 {
            sweep.violations.push(x);
        }
    }
    Ok(sweep)
}

/// Rule-of-thumb summary for one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RuleOfThumb {
    pub lambda_star: f64,
    pub quantum_photons: f64,
    pub q_max: f64,
    pub taylor_bound: f64,
    pub quantum_rate: f64,
    /// `q_max - quantum_rate`
    pub shortfall: f64,
}

pub fn rule_of_thumb(ch: ChannelSpec, p: PowerBudget, gap: EpsilonGap) -> Result<RuleOfThumb> {
    let s = lambda_star(ch, p, gap)?;
    let x = s.lambda() * p.ns();
    let eta = ch.eta();
    let q_max = eta.log2() - (1.0 - eta).log2();
    let q = quantum_capacity_at(ch, x).value();
    Ok(RuleOfThumb {
        lambda_star: s.lambda(),
        quantum_photons: x,
        q_max,
        taylor_bound: taylor_lower_bound_at(ch, x)?,
        quantum_rate: q,
        shortfall: q_max - q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ch(eta: f64) -> ChannelSpec {
        ChannelSpec::new(eta).unwrap()
    }

    #[test]
    fn taylor_examples() {
        let p = PowerBudget::new(200.0).unwrap();
        let b = taylor_lower_bound(ch(0.75), p, ShareParam::ONE).unwrap();
        assert_relative_eq!(b, 1.546_490_632_964_117, max_relative = 1e-14);
        let far = taylor_lower_bound_at(ch(0.75), 1e15).unwrap();
        assert!((far - 3f64.log2()).abs() < 1e-13);
        let x0 = taylor_zero_crossing(ch(0.75)).unwrap();
        assert_relative_eq!(x0, 4.854_609_208_676_466, max_relative = 1e-14);
        assert!(taylor_lower_bound_at(ch(0.75), x0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn lambda_star_examples() {
        let eps = EpsilonGap::new(0.1).unwrap();
        let l = lambda_star(ch(0.75), PowerBudget::new(200.0).unwrap(), eps).unwrap();
        assert_relative_eq!(l.lambda(), 0.384_718_677_570_390_24, max_relative = 1e-14);
        let l = lambda_star(ch(0.75), PowerBudget::new(20.0).unwrap(), eps).unwrap();
        assert_eq!(l.lambda(), 1.0);
        // no floor at 1 / N_S
        let big = EpsilonGap::new(1e3).unwrap();
        let l = lambda_star(ch(0.75), PowerBudget::new(200.0).unwrap(), big).unwrap();
        assert!(l.lambda() < 1.0 / 200.0);
        assert_relative_eq!(l.lambda() * 200.0, 1.0 / (0.1875 * 1e3 * LN_2), max_relative = 1e-14);
    }

    #[test]
    fn domain_errors() {
        let p = PowerBudget::new(10.0).unwrap();
        let eps = EpsilonGap::new(0.1).unwrap();
        for eta in [0.3, 0.5, 1.0] {
            assert!(lambda_star(ch(eta), p, eps).is_err());
            assert!(taylor_lower_bound(ch(eta), p, ShareParam::ONE).is_err());
        }
        assert!(EpsilonGap::new(0.0).is_err());
        assert!(taylor_lower_bound(ch(0.75), p, ShareParam::ZERO).is_err());
        assert!(lambda_star(ch(0.75), PowerBudget::new(0.0).unwrap(), eps).is_err());
    }

    #[test]
    fn bound_holds_in_the_high_photon_regime() {
        for eta in [0.6, 0.75, 0.9] {
            let s = sweep_bound(ch(eta), 20.0, 1e4, 300).unwrap();
            assert!(s.holds(), "{s:?}");
        }
    }

    #[test]
    fn lambda_star_reaches_the_gap() {
        for eta in [0.6, 0.75, 0.9] {
            for ns in [200.0, 2000.0, 1e4] {
                for eps in [0.01, 0.05, 0.1, 0.5] {
                    let r =
                        rule_of_thumb(ch(eta), PowerBudget::new(ns).unwrap(), EpsilonGap::new(eps).unwrap()).unwrap();
                    if r.lambda_star < 1.0 && r.quantum_photons >= 20.0 {
                        assert!(r.shortfall <= 2.0 * eps, "{eta} {ns} {eps} {r:?}");
                        // measured: slack 1 also holds here
                        assert!(r.shortfall <= eps);
                    }
                }
            }
        }
    }
}
