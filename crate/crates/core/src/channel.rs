//! The single-mode pure-loss channel and its single-task capacities.
//!
//! In the Heisenberg picture the channel mixes the sender's mode `a` with a
//! vacuum environment mode `e` on a beamsplitter, `b = sqrt(eta) a +
//! sqrt(1 - eta) e`. Only the transmissivity is needed here; the operator
//! picture is simulated explicitly in [`crate::fock`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::entropy::{g, EntropyBits, MeanPhotonNumber};
use crate::error::{domain, Result};

/// A pure-loss channel with power transmissivity `eta` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ChannelSpec {
    eta: f64,
}

impl ChannelSpec {
    pub fn new(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(domain("transmissivity", eta, "must lie in (0, 1]"));
        }
        Ok(ChannelSpec { eta })
    }

    pub fn eta(self) -> f64 {
        self.eta
    }

    /// Fraction of the input photons lost to the environment.
    pub fn loss(self) -> f64 {
        1.0 - self.eta
    }

    /// Degradable channels (eta >= 1/2) have a nonzero quantum capacity
    /// for eta > 1/2 and coinciding classical-quantum / public-private
    /// frontiers.
    pub fn is_degradable(self) -> bool {
        self.eta >= 0.5
    }
}

impl TryFrom<f64> for ChannelSpec {
    type Error = crate::Error;
    fn try_from(eta: f64) -> Result<Self> {
        ChannelSpec::new(eta)
    }
}

impl From<ChannelSpec> for f64 {
    fn from(c: ChannelSpec) -> f64 {
        c.eta
    }
}

/// Mean photon budget per channel use at the transmitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PowerBudget {
    ns: MeanPhotonNumber,
}

impl PowerBudget {
    pub fn new(ns: f64) -> Result<Self> {
        Ok(PowerBudget {
            ns: MeanPhotonNumber::new(ns)?,
        })
    }

    pub fn ns(self) -> f64 {
        self.ns.value()
    }

    pub fn photons(self) -> MeanPhotonNumber {
        self.ns
    }
}

impl TryFrom<f64> for PowerBudget {
    type Error = crate::Error;
    fn try_from(ns: f64) -> Result<Self> {
        PowerBudget::new(ns)
    }
}

impl From<PowerBudget> for f64 {
    fn from(p: PowerBudget) -> f64 {
        p.ns()
    }
}

/// Infinite-photon quantum capacity. The noiseless channel has no finite
/// limit, which is reported as `Unbounded` instead of a float infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuantumCapacityLimit {
    Finite(EntropyBits),
    Unbounded,
}

impl QuantumCapacityLimit {
    pub fn finite(self) -> Option<f64> {
        match self {
            QuantumCapacityLimit::Finite(q) => Some(q.value()),
            QuantumCapacityLimit::Unbounded => None,
        }
    }
}

impl fmt::Display for QuantumCapacityLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumCapacityLimit::Finite(q) => write!(f, "{:?}", q.value()),
            QuantumCapacityLimit::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl Serialize for QuantumCapacityLimit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            QuantumCapacityLimit::Finite(q) => s.serialize_f64(q.value()),
            QuantumCapacityLimit::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

/// Entanglement-assisted classical capacity together with the entanglement
/// it consumes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EaCorner {
    pub rate: EntropyBits,
    pub ebit_cost: EntropyBits,
}

/// Unassisted classical capacity, `g(eta N_S)`.
pub fn classical_capacity(ch: ChannelSpec, p: PowerBudget) -> EntropyBits {
    EntropyBits::clamped(g(ch.eta * p.ns()))
}

/// Quantum capacity, `max(0, g(eta N_S) - g((1 - eta) N_S))`.
pub fn quantum_capacity(ch: ChannelSpec, p: PowerBudget) -> EntropyBits {
    quantum_capacity_at(ch, p.ns())
}

pub(crate) fn quantum_capacity_at(ch: ChannelSpec, photons: f64) -> EntropyBits {
    if ch.eta <= 0.5 {
        return EntropyBits::ZERO;
    }
    EntropyBits::clamped(g(ch.eta * photons) - g(ch.loss() * photons))
}

/// `lim_{N_S -> inf} Q(eta, N_S) = log2(eta / (1 - eta))`.
pub fn quantum_capacity_limit(ch: ChannelSpec) -> QuantumCapacityLimit {
    if ch.eta <= 0.5 {
        QuantumCapacityLimit::Finite(EntropyBits::ZERO)
    } else if ch.eta == 1.0 {
        QuantumCapacityLimit::Unbounded
    } else {
        QuantumCapacityLimit::Finite(EntropyBits::clamped(ch.eta.log2() - ch.loss().log2()))
    }
}

/// The full-allocation (lambda = 1) corner of the CQE region with Q = 0:
/// `C = g(N_S) + g(eta N_S) - g((1 - eta) N_S)` at an entanglement cost of
/// `g(N_S)`.
pub fn ea_classical_capacity(ch: ChannelSpec, p: PowerBudget) -> EaCorner {
    let ns = p.ns();
    let cost = g(ns);
    EaCorner {
        rate: EntropyBits::clamped(cost + g(ch.eta * ns) - g(ch.loss() * ns)),
        ebit_cost: EntropyBits::clamped(cost),
    }
}
