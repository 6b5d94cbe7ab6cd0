use serde::Serialize;

use super::{beamsplitter, tmsv_state, BeamsplitterUnitary, TruncatedState, CLAMP};
use crate::channel::{ChannelSpec, PowerBudget};
use crate::entropy::{g, MeanPhotonNumber};
use crate::error::{domain, Result};
use crate::linalg::spectrum_entropy;
use crate::regions::ShareParam;

/// Entropies of one TMSV conditional state after the channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionalEntropies {
    pub reference: f64,
    pub receiver: f64,
    pub environment: f64,
    pub joint_reference_receiver: f64,
}

/// Propagate `state` through `bs` and diagonalise every marginal.
pub fn conditional_entropies(state: &TruncatedState, bs: &BeamsplitterUnitary) -> Result<ConditionalEntropies> {
    let out = state.propagate(bs)?;
    Ok(ConditionalEntropies {
        reference: out.reference_entropy()?,
        receiver: out.receiver_entropy()?,
        environment: out.environment_entropy()?,
        joint_reference_receiver: out.joint_reference_receiver_entropy()?,
    })
}

/// Output entropy of a thermal input with mean `nbar`, truncated at the
/// beamsplitter's cutoff and renormalised. Returns the entropy and the
/// dropped thermal mass.
///
/// A photon-number-diagonal input stays diagonal, so the receiver's
/// populations are `sum_n p_n |<j, n - j| U |n, 0>|^2`.
pub fn thermal_output_entropy(bs: &BeamsplitterUnitary, nbar: MeanPhotonNumber) -> Result<(f64, f64)> {
    let cutoff = bs.cutoff();
    let nbar = nbar.value();
    let probs: Vec<f64> = if nbar == 0.0 {
        let mut p = vec![0.0; cutoff + 1];
        p[0] = 1.0;
        p
    } else {
        let (ln_n, ln_n1) = (nbar.ln(), nbar.ln_1p());
        (0..=cutoff)
            .map(|n| (n as f64 * ln_n - (n + 1) as f64 * ln_n1).exp())
            .collect()
    };
    let kept: f64 = probs.iter().sum();
    let mut out = vec![0.0; cutoff + 1];
    for (n, p) in probs.iter().enumerate() {
        let u = bs.block(n).expect("block within cutoff");
        for (j, o) in out.iter_mut().enumerate().take(n + 1) {
            *o += p / kept * u[(j, n)].norm_sqr();
        }
    }
    Ok((spectrum_entropy(&out, CLAMP)?, 1.0 - kept))
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantityCheck {
    pub name: &'static str,
    pub expected: f64,
    pub observed: f64,
    pub deviation: f64,
    pub passed: bool,
}

impl QuantityCheck {
    fn new(name: &'static str, expected: f64, observed: f64, tol: f64) -> Self {
        let deviation = (observed - expected).abs();
        QuantityCheck {
            name,
            expected,
            observed,
            deviation,
            passed: deviation <= tol,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub eta: f64,
    pub ns: f64,
    pub lambda: f64,
    pub cutoff: usize,
    pub tolerance: f64,
    pub tail_mass: f64,
    pub thermal_tail_mass: f64,
    pub checks: Vec<QuantityCheck>,
    pub max_deviation: f64,
    pub passed: bool,
    pub diagnostics: Vec<String>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &QuantityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Compare the brute-force entropies of a TMSV with mean `lambda * ns`
/// pushed through the pure-loss channel against the thermal closed forms.
///
/// Checks: `H(A) = g(lambda N)`, `H(B) = g(eta lambda N)`,
/// `H(E) = g((1 - eta) lambda N)`, `H(AB) = g((1 - eta) lambda N)`,
/// `H(AB) - H(E) = 0`, and the thermal-input output entropy `g(eta N)`.
///
/// The truncated TMSV is renormalised before propagation. Truncation tails
/// above 1e-8 are reported as diagnostics, not errors. A failed comparison
/// is reported through `passed`, so the caller decides what to do with it.
pub fn verify_cqe_entropies(
    ch: ChannelSpec,
    p: PowerBudget,
    share: ShareParam,
    cutoff: usize,
    tol: f64,
) -> Result<VerificationReport> {
    if tol.is_nan() || tol < 0.0 {
        return Err(domain("tolerance", tol, "must be >= 0"));
    }
    let eta = ch.eta();
    let x = share.lambda() * p.ns();
    let state = tmsv_state(MeanPhotonNumber::new(x)?, cutoff)?;
    let bs = beamsplitter(eta, cutoff)?;
    let h = conditional_entropies(&state.normalized(), &bs)?;
    let (thermal, thermal_tail_mass) = thermal_output_entropy(&bs, p.photons())?;

    let mut diagnostics = state.diagnostics().to_vec();
    if thermal_tail_mass > 1e-8 {
        diagnostics.push(format!(
            "thermal input truncated at n <= {cutoff} drops mass {thermal_tail_mass:e} (mean photon number {})",
            p.ns()
        ));
    }

    let checks = vec![
        QuantityCheck::new("H(A)", g(x), h.reference, tol),
        QuantityCheck::new("H(B)", g(eta * x), h.receiver, tol),
        QuantityCheck::new("H(E)", g((1.0 - eta) * x), h.environment, tol),
        QuantityCheck::new("H(AB)", g((1.0 - eta) * x), h.joint_reference_receiver, tol),
        QuantityCheck::new("H(AB)-H(E)", 0.0, h.joint_reference_receiver - h.environment, tol),
        QuantityCheck::new("H(B|thermal)", g(eta * p.ns()), thermal, tol),
    ];
    let max_deviation = checks.iter().map(|c| c.deviation).fold(0.0, f64::max);
    let passed = checks.iter().all(|c| c.passed);
    for c in checks.iter().filter(|c| !c.passed) {
        diagnostics.push(format!(
            "{}: observed {} expected {} (deviation {:e} > {:e})",
            c.name, c.observed, c.expected, c.deviation, tol
        ));
    }
    Ok(VerificationReport {
        eta,
        ns: p.ns(),
        lambda: share.lambda(),
        cutoff,
        tolerance: tol,
        tail_mass: state.tail_mass(),
        thermal_tail_mass,
        checks,
        max_deviation,
        passed,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::displacement;
    use num_complex::Complex64;

    fn run(eta: f64, ns: f64, lambda: f64, cutoff: usize, tol: f64) -> VerificationReport {
        verify_cqe_entropies(
            ChannelSpec::new(eta).unwrap(),
            PowerBudget::new(ns).unwrap(),
            ShareParam::new(lambda).unwrap(),
            cutoff,
            tol,
        )
        .unwrap()
    }

    #[test]
    fn identity_channel_leaves_environment_empty() {
        let r = run(1.0, 0.7, 1.0, 50, 1e-9);
        assert!(r.passed, "{r:?}");
        assert!(r.checks[2].observed.abs() < 1e-12);
        assert!((r.checks[1].observed - g(0.7)).abs() < 1e-9);
    }

    #[test]
    fn reference_point_is_tight() {
        let r = run(0.6, 1.0, 1.0, 60, 1e-8);
        assert!(r.passed, "{r:?}");
        assert!(r.max_deviation < 1e-8);
        assert!(r.diagnostics.is_empty());
    }

    #[test]
    fn zero_share_gives_zero_conditional_entropies() {
        let r = run(0.7, 0.0, 0.0, 10, 1e-12);
        assert!(r.passed);
        assert!(r.checks.iter().all(|c| c.observed.abs() < 1e-12));
        let r = run(0.7, 1.5, 0.0, 60, 1e-9);
        assert!(r.passed, "{r:?}");
        assert!(r.checks[..5].iter().all(|c| c.observed.abs() < 1e-12));
        assert!((r.checks[5].observed - g(0.7 * 1.5)).abs() < 1e-9);
    }

    #[test]
    fn loose_tolerance_failure_is_reported() {
        let r = run(0.6, 1.0, 1.0, 8, 1e-8);
        assert!(!r.passed);
        assert!(r.failures().count() > 0);
        assert!(!r.diagnostics.is_empty());
    }

    #[test]
    fn deviations_shrink_as_cutoff_doubles() {
        let mut prev = f64::INFINITY;
        for cutoff in [20, 40, 80] {
            let r = run(0.6, 1.0, 1.0, cutoff, 1.0);
            assert!(
                r.max_deviation <= prev + 1e-12,
                "{cutoff}: {} vs {prev}",
                r.max_deviation
            );
            prev = r.max_deviation;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn displacement_leaves_entropies_unchanged() {
        let eta = 0.7;
        let state = tmsv_state(MeanPhotonNumber::new(0.2).unwrap(), 15)
            .unwrap()
            .normalized();
        let bs = beamsplitter(eta, 40).unwrap();
        let plain = conditional_entropies(&state, &bs).unwrap();
        for alpha in [Complex64::new(0.1, 0.0), Complex64::from_polar(0.15, 2.1)] {
            let shifted = state.apply_signal(&displacement(alpha, 41)).unwrap();
            let h = conditional_entropies(&shifted, &bs).unwrap();
            for (a, b) in [
                (plain.reference, h.reference),
                (plain.receiver, h.receiver),
                (plain.environment, h.environment),
                (plain.joint_reference_receiver, h.joint_reference_receiver),
            ] {
                assert!((a - b).abs() < 1e-8, "{alpha}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn thermal_output_matches_attenuated_thermal() {
        let bs = beamsplitter(0.4, 100).unwrap();
        let (h, tail) = thermal_output_entropy(&bs, MeanPhotonNumber::new(2.0).unwrap()).unwrap();
        assert!(tail < 1e-17);
        assert!((h - g(0.8)).abs() < 1e-10);
    }
}
