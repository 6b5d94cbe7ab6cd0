//! The thermal-state entropy `g(N)` and its inverse.
//!
//! `g(N) = (N+1) log2(N+1) - N log2 N` is the von Neumann entropy, in bits, of
//! a single-mode thermal state with mean photon number `N`. Every rate in the
//! pure-loss regions is a signed sum of `g` evaluated at some scaled photon
//! number.

use std::f64::consts::LN_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::solve::bisect;

/// Mean photon number per mode. Nonnegative and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct MeanPhotonNumber(f64);

impl MeanPhotonNumber {
    pub const ZERO: MeanPhotonNumber = MeanPhotonNumber(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(domain("mean photon number", value, "must be finite and >= 0"));
        }
        Ok(MeanPhotonNumber(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for MeanPhotonNumber {
    type Error = crate::Error;
    fn try_from(value: f64) -> Result<Self> {
        MeanPhotonNumber::new(value)
    }
}

impl From<MeanPhotonNumber> for f64 {
    fn from(n: MeanPhotonNumber) -> f64 {
        n.0
    }
}

impl fmt::Display for MeanPhotonNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An entropy (or nonnegative rate) in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EntropyBits(f64);

impl EntropyBits {
    pub const ZERO: EntropyBits = EntropyBits(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(domain("entropy", value, "must be finite and >= 0"));
        }
        Ok(EntropyBits(value))
    }

    /// Clamp a computed difference of entropies at zero.
    pub(crate) fn clamped(value: f64) -> EntropyBits {
        EntropyBits(value.max(0.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for EntropyBits {
    type Error = crate::Error;
    fn try_from(value: f64) -> Result<Self> {
        EntropyBits::new(value)
    }
}

impl From<EntropyBits> for f64 {
    fn from(h: EntropyBits) -> f64 {
        h.0
    }
}

impl fmt::Display for EntropyBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `g(N)` on a raw float already known to be a valid photon number.
///
/// Uses `log2(N+1) + N log2(1 + 1/N)`, which avoids subtracting two large
/// nearly equal terms once `N` is in the hundreds.
pub(crate) fn g(n: f64) -> f64 {
    if n == 0.0 {
        return 0.0;
    }
    if n < f64::MIN_POSITIVE {
        // 1/n overflows; the direct form has no cancellation here.
        return ((n + 1.0) * n.ln_1p() - n * n.ln()) / LN_2;
    }
    (n.ln_1p() + n * n.recip().ln_1p()) / LN_2
}

/// Entropy in bits of a thermal state with mean photon number `n`.
pub fn g_entropy(n: MeanPhotonNumber) -> EntropyBits {
    EntropyBits(g(n.0))
}

/// Checked variant of [`g_entropy`] taking a raw float.
pub fn g_checked(n: f64) -> Result<EntropyBits> {
    MeanPhotonNumber::new(n).map(g_entropy)
}

/// The unique `n >= 0` with `g(n) = h`.
///
/// `g(N) >= log2(N+1)` gives the bracket `[0, 2^h]`, and `g` is strictly
/// increasing, so plain bisection converges.
pub fn g_inverse(h: EntropyBits) -> Result<MeanPhotonNumber> {
    let target = h.0;
    if target == 0.0 {
        return Ok(MeanPhotonNumber::ZERO);
    }
    let hi = target.exp2();
    if !hi.is_finite() {
        return Err(domain("entropy", target, "inverse overflows f64"));
    }
    let n = bisect(|n| g(n) - target, 0.0, hi, 1e-15)?;
    Ok(MeanPhotonNumber(n))
}
