//! Rates and region bounds for finite-dimensional channels and ensembles.
//!
//! A channel is given by Kraus operators `E_k`. Its isometric extension
//! `V = sum_k E_k (x) |k>_env` defines the complementary channel, whose output
//! has entries `<k| N^c(rho) |l> = Tr(E_l^dag E_k rho)`. The environment
//! dimension is simply the number of Kraus operators.

mod io;

pub use io::{FdInstance, InstanceFile};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigenvalues, max_abs_diff, spectrum_entropy, trace, CMatrix};
use crate::regions::BoundTriple;

const COMPLETENESS_TOL: f64 = 1e-10;
const DENSITY_TOL: f64 = 1e-10;
const WEIGHT_TOL: f64 = 1e-12;
const CLAMP: f64 = 1e-12;

/// A channel `rho -> sum_k E_k rho E_k^dag`.
#[derive(Debug, Clone, PartialEq)]
pub struct FdChannel {
    input_dim: usize,
    output_dim: usize,
    kraus: Vec<CMatrix>,
}

impl FdChannel {
    /// Validates shapes and `sum_k E_k^dag E_k = I` within 1e-10.
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::DimensionMismatch("channel needs at least one Kraus operator".into()))?;
        let (output_dim, input_dim) = first.shape();
        if input_dim == 0 || output_dim == 0 {
            return Err(Error::DimensionMismatch("empty Kraus operator".into()));
        }
        if let Some(k) = kraus.iter().find(|k| k.shape() != (output_dim, input_dim)) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operator is {:?}, expected {:?}",
                k.shape(),
                (output_dim, input_dim)
            )));
        }
        let sum = kraus
            .iter()
            .fold(CMatrix::zeros(input_dim, input_dim), |acc, k| acc + k.adjoint() * k);
        let dev = max_abs_diff(&sum, &CMatrix::identity(input_dim, input_dim));
        if dev > COMPLETENESS_TOL {
            return Err(Error::Incomplete(dev));
        }
        Ok(FdChannel {
            input_dim,
            output_dim,
            kraus,
        })
    }

    pub fn identity(dim: usize) -> Self {
        FdChannel::new(vec![CMatrix::identity(dim, dim)]).expect("identity is a channel")
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn env_dim(&self) -> usize {
        self.kraus.len()
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    fn check_input(&self, rho: &CMatrix) -> Result<()> {
        if rho.shape() != (self.input_dim, self.input_dim) {
            return Err(Error::DimensionMismatch(format!(
                "density matrix is {:?}, channel input dimension is {}",
                rho.shape(),
                self.input_dim
            )));
        }
        Ok(())
    }

    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        self.check_input(rho)?;
        Ok(self
            .kraus
            .iter()
            .fold(CMatrix::zeros(self.output_dim, self.output_dim), |acc, k| {
                acc + k * rho * k.adjoint()
            }))
    }

    /// Output of the complementary channel.
    pub fn complementary_output(&self, rho: &CMatrix) -> Result<CMatrix> {
        self.check_input(rho)?;
        check_density(rho)?;
        let n = self.kraus.len();
        let products: Vec<CMatrix> = self.kraus.iter().map(|k| k * rho).collect();
        Ok(CMatrix::from_fn(n, n, |k, l| {
            // Tr(E_l^dag E_k rho) = sum_ij conj(E_l)_ij (E_k rho)_ij
            self.kraus[l]
                .iter()
                .zip(products[k].iter())
                .map(|(a, b)| a.conj() * b)
                .sum()
        }))
    }

    /// Conjugate every Kraus operator by a fixed output unitary.
    pub fn rotate_output(&self, u: &CMatrix) -> Result<Self> {
        FdChannel::new(self.kraus.iter().map(|k| u * k).collect())
    }
}

/// Checks unit trace, Hermiticity and positivity within 1e-10.
pub fn check_density(rho: &CMatrix) -> Result<()> {
    let tr = trace(rho);
    if (tr - c(1.0, 0.0)).norm() > DENSITY_TOL {
        return Err(Error::InvalidEnsemble(format!("density matrix trace is {tr}")));
    }
    if max_abs_diff(rho, &rho.adjoint()) > DENSITY_TOL {
        return Err(Error::InvalidEnsemble("density matrix is not Hermitian".into()));
    }
    let min = hermitian_eigenvalues(rho).first().copied().unwrap_or(0.0);
    if min < -DENSITY_TOL {
        return Err(Error::NotPositive(min));
    }
    Ok(())
}

fn entropy(rho: &CMatrix) -> Result<f64> {
    spectrum_entropy(&hermitian_eigenvalues(rho), CLAMP)
}

/// An ensemble member: a pure state on reference (x) input, or directly a
/// density operator on the input whose purification is left implicit.
#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleState {
    /// Amplitudes indexed `r * input_dim + i`.
    Pure {
        reference_dim: usize,
        amplitudes: Vec<num_complex::Complex64>,
    },
    Density(CMatrix),
}

impl EnsembleState {
    /// Pure state on the input alone (trivial reference).
    pub fn pure(amplitudes: Vec<num_complex::Complex64>) -> Self {
        EnsembleState::Pure {
            reference_dim: 1,
            amplitudes,
        }
    }

    /// Input marginal `rho_x`.
    pub fn input_density(&self, input_dim: usize) -> Result<CMatrix> {
        match self {
            EnsembleState::Density(rho) => {
                if rho.shape() != (input_dim, input_dim) {
                    return Err(Error::DimensionMismatch(format!(
                        "ensemble density is {:?}, input dimension is {input_dim}",
                        rho.shape()
                    )));
                }
                Ok(rho.clone())
            }
            EnsembleState::Pure {
                reference_dim,
                amplitudes,
            } => {
                if amplitudes.len() != reference_dim * input_dim {
                    return Err(Error::DimensionMismatch(format!(
                        "pure state has {} amplitudes, expected {} x {}",
                        amplitudes.len(),
                        reference_dim,
                        input_dim
                    )));
                }
                Ok(CMatrix::from_fn(input_dim, input_dim, |i, j| {
                    (0..*reference_dim)
                        .map(|r| amplitudes[r * input_dim + i] * amplitudes[r * input_dim + j].conj())
                        .sum()
                }))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleEntry {
    pub weight: f64,
    pub state: EnsembleState,
}

/// Weighted ensemble `{p_X(x), rho_x}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FdEnsemble {
    input_dim: usize,
    entries: Vec<EnsembleEntry>,
    densities: Vec<CMatrix>,
}

impl FdEnsemble {
    pub fn new(input_dim: usize, entries: Vec<EnsembleEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidEnsemble("ensemble is empty".into()));
        }
        if let Some(e) = entries.iter().find(|e| !(e.weight >= 0.0 && e.weight.is_finite())) {
            return Err(Error::InvalidEnsemble(format!("bad weight {}", e.weight)));
        }
        let total: f64 = entries.iter().map(|e| e.weight).sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidEnsemble(format!("weights sum to {total}")));
        }
        let densities = entries
            .iter()
            .map(|e| {
                let rho = e.state.input_density(input_dim)?;
                check_density(&rho)?;
                Ok(rho)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FdEnsemble {
            input_dim,
            entries,
            densities,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn entries(&self) -> &[EnsembleEntry] {
        &self.entries
    }

    /// `rho = sum_x p(x) rho_x`.
    pub fn average(&self) -> CMatrix {
        self.entries
            .iter()
            .zip(&self.densities)
            .fold(CMatrix::zeros(self.input_dim, self.input_dim), |acc, (e, rho)| {
                acc + rho * c(e.weight, 0.0)
            })
    }
}

/// Entropies feeding the rate formulas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleEntropies {
    /// `H(N(rho))`
    pub output_of_average: f64,
    /// `sum p H(rho_x)`
    pub input: f64,
    /// `sum p H(N(rho_x))`
    pub output: f64,
    /// `sum p H(N^c(rho_x))`
    pub environment: f64,
}

pub fn ensemble_entropies(ch: &FdChannel, ens: &FdEnsemble) -> Result<EnsembleEntropies> {
    if ch.input_dim() != ens.input_dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel input dimension {} vs ensemble dimension {}",
            ch.input_dim(),
            ens.input_dim()
        )));
    }
    let mut out = EnsembleEntropies {
        output_of_average: entropy(&ch.apply(&ens.average())?)?,
        input: 0.0,
        output: 0.0,
        environment: 0.0,
    };
    for (e, rho) in ens.entries.iter().zip(&ens.densities) {
        out.input += e.weight * entropy(rho)?;
        out.output += e.weight * entropy(&ch.apply(rho)?)?;
        out.environment += e.weight * entropy(&ch.complementary_output(rho)?)?;
    }
    Ok(out)
}

/// Rates of the entanglement-assisted classical-quantum protocol built from
/// one ensemble. `ebits` is the entanglement consumed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateFormulas {
    pub bits: f64,
    pub qubits: f64,
    pub ebits: f64,
}

/// Classical bits `H(N(rho)) - sum p H(N(rho_x))` (the Holevo information),
/// qubits `sum p [H(rho_x) + H(N(rho_x)) - H(N^c(rho_x))] / 2`, and ebits
/// consumed `sum p [H(rho_x) + H(N^c(rho_x)) - H(N(rho_x))] / 2`.
pub fn protocol_rates(ch: &FdChannel, ens: &FdEnsemble) -> Result<RateFormulas> {
    let h = ensemble_entropies(ch, ens)?;
    Ok(RateFormulas {
        bits: h.output_of_average - h.output,
        qubits: 0.5 * (h.input + h.output - h.environment),
        ebits: 0.5 * (h.input + h.environment - h.output),
    })
}

/// Right-hand sides of the general CQE region for one ensemble:
///
/// - `C + 2Q <= H(N(rho)) + sum p [H(rho_x) - H(N^c(rho_x))]`
/// - `Q + E <= sum p [H(N(rho_x)) - H(N^c(rho_x))]`
/// - `C + Q + E <= H(N(rho)) - sum p H(N^c(rho_x))`
pub fn cqe_region_bounds_fd(ch: &FdChannel, ens: &FdEnsemble) -> Result<BoundTriple> {
    let h = ensemble_entropies(ch, ens)?;
    Ok(BoundTriple {
        b1: h.output_of_average + h.input - h.environment,
        b2: h.output - h.environment,
        b3: h.output_of_average - h.environment,
    })
}
