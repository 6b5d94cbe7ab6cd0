//! Dense complex matrices and von Neumann entropy.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    if m.nrows() == 1 {
        return vec![m[(0, 0)].re];
    }
    let h = (m + m.adjoint()) * c(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `-sum p log2 p` over a spectrum, clamping entries in `[-neg_tol, 0)` to
/// zero and rejecting anything more negative.
pub fn spectrum_entropy(eigenvalues: &[f64], neg_tol: f64) -> Result<f64> {
    let mut h = 0.0;
    for &p in eigenvalues {
        if p < -neg_tol {
            return Err(Error::NotPositive(p));
        }
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    Ok(h.max(0.0))
}

/// Von Neumann entropy in bits of a density matrix.
pub fn von_neumann_entropy(rho: &CMatrix, neg_tol: f64) -> Result<f64> {
    spectrum_entropy(&hermitian_eigenvalues(rho), neg_tol)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
