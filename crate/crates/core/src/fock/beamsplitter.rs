use serde::Serialize;

use super::exp_skew_tridiagonal;
use crate::error::{domain, Result};
use crate::linalg::{max_abs_diff, CMatrix};

/// Beamsplitter unitary on two modes, stored block by block in total photon
/// number.
///
/// Block `n` acts on the span of `|k, n - k>`, `k = 0..=n`, indexed by the
/// photon count `k` of the first (signal) mode. Only complete blocks with
/// `n <= cutoff` are kept, since those are the ones a cutoff-`n_max` input
/// with a vacuum environment can reach.
#[derive(Debug, Clone)]
pub struct BeamsplitterUnitary {
    eta: f64,
    blocks: Vec<CMatrix>,
}

/// Build `exp(theta (a^dag e - a e^dag))` with `cos^2 theta = eta`, so a photon
/// entering the first port stays in the first output mode with probability
/// `eta`.
pub fn beamsplitter(eta: f64, cutoff: usize) -> Result<BeamsplitterUnitary> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(domain("transmissivity", eta, "must lie in [0, 1]"));
    }
    let theta = eta.sqrt().acos();
    let blocks = (0..=cutoff)
        .map(|n| {
            // <k+1, n-k-1| a^dag e |k, n-k> = sqrt((k + 1)(n - k))
            let off: Vec<f64> = (0..n).map(|k| (((k + 1) * (n - k)) as f64).sqrt()).collect();
            exp_skew_tridiagonal(&off, theta)
        })
        .collect();
    Ok(BeamsplitterUnitary { eta, blocks })
}

/// Unitarity residual of each block.
#[derive(Debug, Clone, Serialize)]
pub struct UnitarityReport {
    pub worst_block: usize,
    pub worst_error: f64,
}

impl BeamsplitterUnitary {
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Largest total photon number covered.
    pub fn cutoff(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, total: usize) -> Option<&CMatrix> {
        self.blocks.get(total)
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn unitarity(&self) -> UnitarityReport {
        self.blocks
            .iter()
            .enumerate()
            .map(|(n, u)| (n, max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(n + 1, n + 1))))
            .fold(
                UnitarityReport {
                    worst_block: 0,
                    worst_error: 0.0,
                },
                |acc, (n, e)| {
                    if e > acc.worst_error {
                        UnitarityReport {
                            worst_block: n,
                            worst_error: e,
                        }
                    } else {
                        acc
                    }
                },
            )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn binomial(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn transmissive_is_identity() {
        let bs = beamsplitter(1.0, 12).unwrap();
        for (n, u) in bs.blocks().iter().enumerate() {
            assert!(max_abs_diff(u, &CMatrix::identity(n + 1, n + 1)) < 1e-15);
        }
    }

    #[test]
    fn reflective_swaps_modes() {
        let bs = beamsplitter(0.0, 12).unwrap();
        for (n, u) in bs.blocks().iter().enumerate() {
            for j in 0..=n {
                for k in 0..=n {
                    let expected = if j + k == n { 1.0 } else { 0.0 };
                    assert!((u[(j, k)].norm() - expected).abs() < 1e-12, "n={n} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn balanced_single_photon() {
        let bs = beamsplitter(0.5, 1).unwrap();
        let u = bs.block(1).unwrap();
        // |1,0> is index k = 1
        let stay = u[(1, 1)];
        let leave = u[(0, 1)];
        assert!((stay - c(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((leave.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn fock_input_splits_binomially() {
        let eta = 0.37;
        let bs = beamsplitter(eta, 60).unwrap();
        for n in [1usize, 5, 17, 40, 60] {
            let u = bs.block(n).unwrap();
            for j in 0..=n {
                let p = binomial(n, j) * eta.powi(j as i32) * (1.0 - eta).powi((n - j) as i32);
                assert!((u[(j, n)].norm_sqr() - p).abs() < 1e-12, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn blocks_are_unitary() {
        for eta in [0.1, 0.55, 0.9] {
            let r = beamsplitter(eta, 120).unwrap().unitarity();
            assert!(r.worst_error < 1e-10, "{eta}: {r:?}");
        }
        assert!(beamsplitter(1.2, 3).is_err());
    }
}
