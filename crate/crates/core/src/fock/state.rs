use std::collections::HashMap;

use num_complex::Complex64;

use super::{exp_skew_tridiagonal, BeamsplitterUnitary, CLAMP};
use crate::entropy::MeanPhotonNumber;
use crate::error::{domain, Error, Result};
use crate::linalg::{c, hermitian_eigenvalues, spectrum_entropy, CMatrix};

/// Pure state of a reference mode `A` and a signal mode `A'` in a truncated
/// Fock basis. Amplitudes are indexed `a * signal_dim + s`.
#[derive(Debug, Clone)]
pub struct TruncatedState {
    reference_dim: usize,
    signal_dim: usize,
    amplitudes: Vec<Complex64>,
    tail_mass: f64,
    diagnostics: Vec<String>,
}

/// Truncated two-mode squeezed vacuum
/// `sum_n sqrt(nbar^n / (nbar + 1)^(n + 1)) |n, n>` for `n <= cutoff`.
///
/// The amplitudes are left unnormalised so that the norm equals the
/// captured Schmidt mass `1 - tail_mass`. A tail above 1e-8 is recorded as a
/// diagnostic.
pub fn tmsv_state(nbar: MeanPhotonNumber, cutoff: usize) -> Result<TruncatedState> {
    if cutoff < 1 {
        return Err(domain("cutoff", cutoff as f64, "must be >= 1"));
    }
    let nbar = nbar.value();
    let dim = cutoff + 1;
    let mut amplitudes = vec![c(0.0, 0.0); dim * dim];
    if nbar == 0.0 {
        amplitudes[0] = c(1.0, 0.0);
    } else {
        let (ln_n, ln_n1) = (nbar.ln(), nbar.ln_1p());
        for n in 0..dim {
            let log_p = n as f64 * ln_n - (n + 1) as f64 * ln_n1;
            amplitudes[n * dim + n] = c((0.5 * log_p).exp(), 0.0);
        }
    }
    let tail_mass = if nbar == 0.0 {
        0.0
    } else {
        // 1 - sum_{n <= cutoff} p_n = (nbar / (nbar + 1))^(cutoff + 1)
        ((cutoff + 1) as f64 * (nbar.ln() - nbar.ln_1p())).exp()
    };
    let mut diagnostics = Vec::new();
    if tail_mass > 1e-8 {
        diagnostics.push(format!(
            "truncation at n <= {cutoff} drops Schmidt mass {tail_mass:e} (mean photon number {nbar})"
        ));
    }
    Ok(TruncatedState {
        reference_dim: dim,
        signal_dim: dim,
        amplitudes,
        tail_mass,
        diagnostics,
    })
}

/// Displacement operator `exp(alpha a^dag - conj(alpha) a)` truncated to
/// `dim` Fock levels. The truncated generator is anti-Hermitian, so the
/// result is exactly unitary. It agrees with the true displacement on
/// states far below the cutoff.
pub fn displacement(alpha: Complex64, dim: usize) -> CMatrix {
    let off: Vec<f64> = (1..dim).map(|n| (n as f64).sqrt()).collect();
    let real = exp_skew_tridiagonal(&off, alpha.norm());
    let phi = alpha.arg();
    // D(|alpha| e^{i phi}) = R(phi) D(|alpha|) R(-phi), R(phi) = e^{i phi n}
    CMatrix::from_fn(dim, dim, |j, k| {
        real[(j, k)] * Complex64::from_polar(1.0, phi * (j as f64 - k as f64))
    })
}

impl TruncatedState {
    pub fn reference_dim(&self) -> usize {
        self.reference_dim
    }

    pub fn signal_dim(&self) -> usize {
        self.signal_dim
    }

    pub fn amplitude(&self, a: usize, s: usize) -> Complex64 {
        self.amplitudes[a * self.signal_dim + s]
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Copy scaled to unit norm.
    pub fn normalized(&self) -> TruncatedState {
        let scale = self.norm_sqr().sqrt().recip();
        let mut out = self.clone();
        for z in &mut out.amplitudes {
            *z *= scale;
        }
        out
    }

    /// Spectrum of the reduced state of `A` (the Schmidt probabilities).
    pub fn reference_spectrum(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.reference_density())
    }

    pub fn reference_density(&self) -> CMatrix {
        let (da, ds) = (self.reference_dim, self.signal_dim);
        CMatrix::from_fn(da, da, |a, a2| {
            (0..ds)
                .map(|s| self.amplitude(a, s) * self.amplitude(a2, s).conj())
                .sum()
        })
    }

    pub fn reference_entropy(&self) -> Result<f64> {
        spectrum_entropy(&self.reference_spectrum(), CLAMP)
    }

    /// Apply a unitary `u` on the signal mode, enlarging it to `u.nrows()`
    /// levels (zero padded).
    pub fn apply_signal(&self, u: &CMatrix) -> Result<TruncatedState> {
        let new_dim = u.nrows();
        if u.ncols() != new_dim || new_dim < self.signal_dim {
            return Err(Error::DimensionMismatch(format!(
                "signal operator is {:?}, state has {} levels",
                u.shape(),
                self.signal_dim
            )));
        }
        let mut amplitudes = vec![c(0.0, 0.0); self.reference_dim * new_dim];
        for a in 0..self.reference_dim {
            for j in 0..new_dim {
                amplitudes[a * new_dim + j] = (0..self.signal_dim).map(|s| u[(j, s)] * self.amplitude(a, s)).sum();
            }
        }
        Ok(TruncatedState {
            reference_dim: self.reference_dim,
            signal_dim: new_dim,
            amplitudes,
            tail_mass: self.tail_mass,
            diagnostics: self.diagnostics.clone(),
        })
    }

    /// Send the signal mode through the beamsplitter together with a vacuum
    /// environment mode.
    pub fn propagate(&self, bs: &BeamsplitterUnitary) -> Result<ThreeModeState> {
        if self.signal_dim > bs.cutoff() + 1 {
            return Err(Error::DimensionMismatch(format!(
                "beamsplitter covers {} photons, signal mode has {} levels",
                bs.cutoff(),
                self.signal_dim
            )));
        }
        let (da, d) = (self.reference_dim, self.signal_dim);
        let mut out = ThreeModeState {
            dims: [da, d, d],
            amplitudes: vec![c(0.0, 0.0); da * d * d],
        };
        for a in 0..da {
            for s in 0..d {
                let amp = self.amplitude(a, s);
                if amp == c(0.0, 0.0) {
                    continue;
                }
                // |s, 0> sits at index k = s of block s
                let u = bs.block(s).expect("block within cutoff");
                for j in 0..=s {
                    let i = out.index(a, j, s - j);
                    out.amplitudes[i] += u[(j, s)] * amp;
                }
            }
        }
        Ok(out)
    }
}

/// Pure state of the reference `A`, receiver `B` and environment `E`.
#[derive(Debug, Clone)]
pub struct ThreeModeState {
    dims: [usize; 3],
    amplitudes: Vec<Complex64>,
}

/// Local row indices, local environment indices and entries of one
/// connected block of the `(A, B)` marginal.
type Block = (HashMap<usize, usize>, HashMap<usize, usize>, Vec<(usize, usize, Complex64)>);

#[derive(Clone, Copy)]
enum Mode {
    A = 0,
    B = 1,
    E = 2,
}

impl ThreeModeState {
    fn index(&self, a: usize, b: usize, e: usize) -> usize {
        (a * self.dims[1] + b) * self.dims[2] + e
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    fn nonzero(&self) -> impl Iterator<Item = ([usize; 3], Complex64)> + '_ {
        let [_, db, de] = self.dims;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != c(0.0, 0.0))
            .map(move |(i, z)| ([i / (db * de), (i / de) % db, i % de], *z))
    }

    /// Reduced density matrix of one mode. Amplitudes are grouped by the
    /// traced-out indices, so only entries that actually overlap are summed.
    fn reduced(&self, keep: Mode) -> CMatrix {
        let k = keep as usize;
        let dim = self.dims[k];
        let mut groups: HashMap<(usize, usize), Vec<(usize, Complex64)>> = HashMap::new();
        for (idx, z) in self.nonzero() {
            let rest = match keep {
                Mode::A => (idx[1], idx[2]),
                Mode::B => (idx[0], idx[2]),
                Mode::E => (idx[0], idx[1]),
            };
            groups.entry(rest).or_default().push((idx[k], z));
        }
        let mut rho = CMatrix::zeros(dim, dim);
        for members in groups.values() {
            for &(i, x) in members {
                for &(j, y) in members {
                    rho[(i, j)] += x * y.conj();
                }
            }
        }
        rho
    }

    pub fn receiver_density(&self) -> CMatrix {
        self.reduced(Mode::B)
    }

    pub fn environment_density(&self) -> CMatrix {
        self.reduced(Mode::E)
    }

    pub fn reference_density(&self) -> CMatrix {
        self.reduced(Mode::A)
    }

    pub fn receiver_entropy(&self) -> Result<f64> {
        spectrum_entropy(&hermitian_eigenvalues(&self.receiver_density()), CLAMP)
    }

    pub fn environment_entropy(&self) -> Result<f64> {
        spectrum_entropy(&hermitian_eigenvalues(&self.environment_density()), CLAMP)
    }

    pub fn reference_entropy(&self) -> Result<f64> {
        spectrum_entropy(&hermitian_eigenvalues(&self.reference_density()), CLAMP)
    }

    /// Entropy of the joint `(A, B)` marginal.
    ///
    /// `rho_AB` couples two basis states `|a, b>` and `|a', b'>` only if
    /// some environment index carries amplitude on both, so the marginal is
    /// split into connected blocks that are diagonalised separately.
    pub fn joint_reference_receiver_entropy(&self) -> Result<f64> {
        let [_, db, _] = self.dims;
        let entries: Vec<([usize; 3], Complex64)> = self.nonzero().collect();

        let mut row_of: HashMap<usize, usize> = HashMap::new();
        let mut rows: Vec<usize> = Vec::new();
        for (idx, _) in &entries {
            let key = idx[0] * db + idx[1];
            row_of.entry(key).or_insert_with(|| {
                rows.push(key);
                rows.len() - 1
            });
        }

        let mut parent: Vec<usize> = (0..rows.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut first_row_for_env: HashMap<usize, usize> = HashMap::new();
        for (idx, _) in &entries {
            let r = row_of[&(idx[0] * db + idx[1])];
            match first_row_for_env.get(&idx[2]) {
                Some(&r0) => {
                    let (x, y) = (find(&mut parent, r), find(&mut parent, r0));
                    if x != y {
                        parent[x] = y;
                    }
                }
                None => {
                    first_row_for_env.insert(idx[2], r);
                }
            }
        }

        let mut comps: HashMap<usize, Block> = HashMap::new();
        for (idx, z) in &entries {
            let r = row_of[&(idx[0] * db + idx[1])];
            let root = find(&mut parent, r);
            let (rmap, emap, list) = comps.entry(root).or_default();
            let nr = rmap.len();
            let lr = *rmap.entry(r).or_insert(nr);
            let ne = emap.len();
            let le = *emap.entry(idx[2]).or_insert(ne);
            list.push((lr, le, *z));
        }

        let mut spectrum = Vec::new();
        let mut keys: Vec<usize> = comps.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let (rmap, emap, list) = &comps[&key];
            let mut m = CMatrix::zeros(rmap.len(), emap.len());
            for &(r, e, z) in list {
                m[(r, e)] += z;
            }
            let block = &m * m.adjoint();
            spectrum.extend(hermitian_eigenvalues(&block));
        }
        spectrum_entropy(&spectrum, CLAMP)
    }
}
