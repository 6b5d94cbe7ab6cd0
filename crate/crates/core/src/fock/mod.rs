//! Brute-force cross-check of the closed-form entropies in a truncated Fock
//! basis.
//!
//! A two-mode squeezed vacuum on modes `A` (reference) and `A'` (signal) is
//! built explicitly. `A'` is then mixed with a vacuum environment mode on a
//! beamsplitter of transmissivity `eta`, and the entropies of the receiver
//! `B`, the environment `E` and the pair `AB` are obtained by dense
//! diagonalisation of the reduced states. These entropies are compared with
//! the `g(.)` expressions used by the region formulas.
//!
//! This is desk-scale machinery. Mean photon numbers up to a few and cutoffs
//! up to about 120 are cheap. The closed forms are what scale to large
//! budgets.

mod beamsplitter;
mod state;
mod verify;

pub use beamsplitter::{beamsplitter, BeamsplitterUnitary};
pub use state::{displacement, tmsv_state, ThreeModeState, TruncatedState};
pub use verify::{
    conditional_entropies, thermal_output_entropy, verify_cqe_entropies, ConditionalEntropies, QuantityCheck,
    VerificationReport,
};

use num_complex::Complex64;

use crate::linalg::{c, CMatrix};

/// Eigenvalues below this are treated as zero when taking entropies.
pub(crate) const CLAMP: f64 = 1e-14;

/// `exp(theta (A - A^T))` where `A` is the lower bidiagonal matrix with
/// `A[k+1][k] = offdiag[k]`.
///
/// With `D = diag(i^k)` the real skew generator becomes `-i theta T` for the
/// symmetric tridiagonal `T = A + A^T`, so the exponential follows from a
/// real symmetric eigendecomposition: `exp = D V exp(-i theta L) V^T D^dag`.
pub(crate) fn exp_skew_tridiagonal(offdiag: &[f64], theta: f64) -> CMatrix {
    let n = offdiag.len() + 1;
    if n == 1 || theta == 0.0 {
        return CMatrix::identity(n, n);
    }
    let t = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i == j + 1 {
            offdiag[j]
        } else if j == i + 1 {
            offdiag[i]
        } else {
            0.0
        }
    });
    let eig = t.symmetric_eigen();
    let v = &eig.eigenvectors;
    let phases: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|l| Complex64::from_polar(1.0, -theta * l))
        .collect();
    let i_pow = |k: usize| match k % 4 {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    };
    CMatrix::from_fn(n, n, |j, k| {
        let core: Complex64 = (0..n).map(|m| phases[m] * (v[(j, m)] * v[(k, m)])).sum();
        i_pow(j) * core * i_pow(k).conj()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn two_by_two_rotation() {
        let u = exp_skew_tridiagonal(&[1.0], 0.3);
        // exp(0.3 [[0,-1],[1,0]]) is a plane rotation
        let (s, co) = 0.3f64.sin_cos();
        let expected = CMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)]);
        assert!(max_abs_diff(&u, &expected) < 1e-14);
    }

    #[test]
    fn matches_taylor_series() {
        let off = [0.7, 1.3, 0.2, 2.0];
        let theta = 0.45;
        let n = off.len() + 1;
        let g = CMatrix::from_fn(n, n, |i, j| {
            if i == j + 1 {
                c(theta * off[j], 0.0)
            } else if j == i + 1 {
                c(-theta * off[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let mut term = CMatrix::identity(n, n);
        let mut sum = term.clone();
        for k in 1..60 {
            term = &term * &g * c(1.0 / k as f64, 0.0);
            sum += &term;
        }
        assert!(max_abs_diff(&exp_skew_tridiagonal(&off, theta), &sum) < 1e-12);
    }
}
