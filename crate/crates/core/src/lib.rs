//! Capacity regions of the pure-loss bosonic channel.
//!
//! Closed-form thermal entropies give the classical, quantum and
//! entanglement-assisted capacities, and the achievable trade-off regions for
//! classical/quantum/entanglement (CQE) and public/private/secret-key (RPS)
//! communication. Frontiers are traced over the photon-number-sharing
//! parameter and compared against time-sharing. Two independent checks are
//! included: a finite-dimensional evaluator for Kraus channels and a
//! truncated Fock-basis simulation of the loss channel.

pub mod channel;
pub mod entropy;
pub mod error;
pub mod finite_dim;
pub mod fock;
pub mod linalg;
pub mod regions;
pub mod rule_of_thumb;
pub mod solve;

pub use channel::{
    classical_capacity, ea_classical_capacity, quantum_capacity, quantum_capacity_limit, ChannelSpec, EaCorner,
    PowerBudget, QuantumCapacityLimit,
};
pub use entropy::{g_checked, g_entropy, g_inverse, EntropyBits, MeanPhotonNumber};
pub use error::{Error, Result};
pub use finite_dim::{FdChannel, FdEnsemble, FdInstance};
pub use regions::{Frontier, FrontierPoint, RateTriple, RegionTag, ShareGrid, ShareParam, Slice};
pub use rule_of_thumb::{lambda_star, rule_of_thumb, EpsilonGap, RuleOfThumb};
