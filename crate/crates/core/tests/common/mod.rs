#![allow(dead_code)]

use bosonic_tradeoff::finite_dim::{EnsembleEntry, EnsembleState};
use bosonic_tradeoff::linalg::{c, CMatrix};
use bosonic_tradeoff::{ChannelSpec, FdChannel, FdEnsemble, MeanPhotonNumber, PowerBudget};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn g(x: f64) -> f64 {
    bosonic_tradeoff::g_entropy(MeanPhotonNumber::new(x).unwrap()).value()
}

pub fn setup(eta: f64, ns: f64) -> (ChannelSpec, PowerBudget) {
    (ChannelSpec::new(eta).unwrap(), PowerBudget::new(ns).unwrap())
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n).map(|_| c(gaussian(rng), gaussian(rng))).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Random channel from a Haar-like isometry `C^d_in -> C^d_out (x) C^k`.
pub fn random_channel(seed: u64, d_in: usize, d_out: usize, k: usize) -> FdChannel {
    assert!(d_out * k >= d_in);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = CMatrix::from_fn(d_out * k, d_in, |_, _| c(gaussian(&mut rng), gaussian(&mut rng)));
    let q = m.qr().q();
    let kraus = (0..k).map(|j| q.rows(j * d_out, d_out).into_owned()).collect();
    FdChannel::new(kraus).unwrap()
}

/// Random ensemble of pure states on reference (x) input.
pub fn random_ensemble(seed: u64, d_in: usize, members: usize) -> FdEnsemble {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let raw: Vec<f64> = (0..members).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let head: f64 = weights[..members - 1].iter().sum();
    weights[members - 1] = 1.0 - head;
    let entries = weights
        .into_iter()
        .map(|weight| {
            let reference_dim = rng.gen_range(1..=d_in);
            EnsembleEntry {
                weight,
                state: EnsembleState::Pure {
                    reference_dim,
                    amplitudes: random_vector(&mut rng, reference_dim * d_in),
                },
            }
        })
        .collect();
    FdEnsemble::new(d_in, entries).unwrap()
}

/// Random unitary of size `d`.
pub fn random_unitary(seed: u64, d: usize) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31) + 7);
    let m = CMatrix::from_fn(d, d, |_, _| c(gaussian(&mut rng), gaussian(&mut rng)));
    m.qr().q()
}
