use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{
    check_finite, check_permutation, check_qubits, permuted_index, PureState, MAX_DENSE_QUBITS,
    NORM_TOL, PSD_TOL,
};
use crate::error::{Error, Result};

/// Dense 2^N × 2^N density matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positive semidefiniteness.
    pub fn new(n_qubits: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_qubits(n_qubits, MAX_DENSE_QUBITS, "density matrix")?;
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        check_finite(&entries)?;
        let rho = Self { n_qubits, entries };
        rho.check_hermitian()?;
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::TraceNotOne(tr.re));
        }
        rho.check_psd()?;
        Ok(rho)
    }

    /// Builds from rows, e.g. as read from JSON.
    pub fn from_rows(n_qubits: usize, rows: Vec<Vec<Complex64>>) -> Result<Self> {
        check_qubits(n_qubits, MAX_DENSE_QUBITS, "density matrix")?;
        let dim = 1usize << n_qubits;
        if rows.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: rows.len(),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: bad.len(),
            });
        }
        Self::new(n_qubits, rows.into_iter().flatten().collect())
    }

    /// |ψ⟩⟨ψ|.
    pub fn from_pure(psi: &PureState) -> Result<Self> {
        check_qubits(psi.n_qubits(), MAX_DENSE_QUBITS, "density matrix")?;
        let a = psi.amplitudes();
        let mut entries = Vec::with_capacity(a.len() * a.len());
        for x in a {
            for y in a {
                entries.push(x * y.conj());
            }
        }
        Ok(Self {
            n_qubits: psi.n_qubits(),
            entries,
        })
    }

    /// 𝟙 / 2^N.
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits, MAX_DENSE_QUBITS, "density matrix")?;
        let dim = 1usize << n_qubits;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Ok(Self { n_qubits, entries })
    }

    /// Random full-rank (for `rank = 2^N`) state G G† / Tr(G G†) with a
    /// 2^N × rank complex Ginibre matrix G.
    pub fn random_mixed<R: Rng + ?Sized>(n_qubits: usize, rank: usize, rng: &mut R) -> Result<Self> {
        check_qubits(n_qubits, MAX_DENSE_QUBITS, "density matrix")?;
        let dim = 1usize << n_qubits;
        let rank = rank.clamp(1, dim);
        let g: Vec<Complex64> = (0..dim * rank)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let mut s = Complex64::new(0.0, 0.0);
                for c in 0..rank {
                    s += g[i * rank + c] * g[j * rank + c].conj();
                }
                entries[i * dim + j] = s;
                entries[j * dim + i] = s.conj();
            }
        }
        let tr: f64 = (0..dim).map(|i| entries[i * dim + i].re).sum();
        for e in &mut entries {
            *e /= tr;
        }
        Ok(Self { n_qubits, entries })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.dim())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// Tr ρ², equal to 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n_qubits)?;
        let dim = self.dim();
        let map: Vec<usize> = (0..dim).map(|i| permuted_index(i, perm)).collect();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                entries[map[r] * dim + map[c]] = self.get(r, c);
            }
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            entries,
        })
    }

    fn check_hermitian(&self) -> Result<()> {
        let dim = self.dim();
        for r in 0..dim {
            for c in r..dim {
                let dev = (self.get(r, c) - self.get(c, r).conj()).norm();
                if dev > NORM_TOL {
                    return Err(Error::NotHermitian {
                        row: r,
                        col: c,
                        deviation: dev,
                    });
                }
            }
        }
        Ok(())
    }

    // ρ + tol·𝟙 admits a Cholesky factorization iff λ_min(ρ) > -tol.
    fn check_psd(&self) -> Result<()> {
        // Real embedding [[A, −B], [B, A]] of H = A + iB is PSD iff H is; complex
        // Cholesky would happily take square roots of negative pivots.
        let dim = self.dim();
        let shifted = DMatrix::<f64>::from_fn(2 * dim, 2 * dim, |r, c| {
            let v = self.get(r % dim, c % dim);
            let x = match (r < dim, c < dim) {
                (true, true) | (false, false) => v.re,
                (true, false) => -v.im,
                (false, true) => v.im,
            };
            if r == c {
                x + PSD_TOL
            } else {
                x
            }
        });
        match shifted.cholesky() {
            Some(_) => Ok(()),
            None => Err(Error::NotPositive),
        }
    }

    pub(crate) fn from_parts_unchecked(n_qubits: usize, entries: Vec<Complex64>) -> Self {
        Self { n_qubits, entries }
    }
}

/// Convex combination Σ wᵢ ρᵢ.
pub fn mix(components: &[(f64, DensityMatrix)]) -> Result<DensityMatrix> {
    let Some((_, first)) = components.first() else {
        return Err(Error::InvalidWeights("empty mixture".into()));
    };
    let n = first.n_qubits();
    let mut total = 0.0;
    for (w, rho) in components {
        if !w.is_finite() || *w < 0.0 {
            return Err(Error::InvalidWeights(format!("negative or non-finite weight {w}")));
        }
        if rho.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: rho.n_qubits(),
            });
        }
        total += w;
    }
    if (total - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); first.entries().len()];
    for (w, rho) in components {
        for (acc, e) in entries.iter_mut().zip(rho.entries()) {
            *acc += e * *w;
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(n, entries))
}

/// V ρ₀ + (1 − V) 𝟙 / 2^N.
pub fn add_white_noise(rho0: &DensityMatrix, visibility: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::InvalidVisibility(visibility));
    }
    let dim = rho0.dim();
    let noise = (1.0 - visibility) / dim as f64;
    let mut entries: Vec<Complex64> = rho0.entries().iter().map(|e| e * visibility).collect();
    for i in 0..dim {
        entries[i * dim + i] += noise;
    }
    Ok(DensityMatrix::from_parts_unchecked(rho0.n_qubits(), entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_ghz, rng_from_seed};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_mixture() {
        let rho = DensityMatrix::from_pure(&make_ghz(2).unwrap()).unwrap();
        let m = mix(&[(1.0, rho.clone())]).unwrap();
        assert_eq!(m, rho);
    }

    #[test]
    fn classical_mixture() {
        let zero = DensityMatrix::from_pure(&PureState::basis(1, 0).unwrap()).unwrap();
        let one = DensityMatrix::from_pure(&PureState::basis(1, 1).unwrap()).unwrap();
        let m = mix(&[(0.5, zero), (0.5, one)]).unwrap();
        assert_eq!(m.entries(), &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
    }

    #[test]
    fn mixture_errors() {
        let a = DensityMatrix::maximally_mixed(1).unwrap();
        let b = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(matches!(
            mix(&[(-0.5, a.clone()), (1.5, a.clone())]),
            Err(Error::InvalidWeights(_))
        ));
        assert!(matches!(
            mix(&[(0.5, a.clone()), (0.4, a.clone())]),
            Err(Error::InvalidWeights(_))
        ));
        assert!(matches!(
            mix(&[(0.5, a), (0.5, b)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(mix(&[]).is_err());
    }

    #[test]
    fn noise_endpoints() {
        let rho = DensityMatrix::from_pure(&make_ghz(3).unwrap()).unwrap();
        assert_eq!(add_white_noise(&rho, 1.0).unwrap(), rho);
        let mm = add_white_noise(&rho, 0.0).unwrap();
        assert_eq!(mm, DensityMatrix::maximally_mixed(3).unwrap());
        assert!(matches!(
            add_white_noise(&rho, 1.01),
            Err(Error::InvalidVisibility(_))
        ));
        assert!(add_white_noise(&rho, -0.1).is_err());
    }

    #[test]
    fn validation_catches_each_invariant() {
        // non-Hermitian
        let e = vec![c(0.5, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.5, 0.0)];
        assert!(matches!(DensityMatrix::new(1, e), Err(Error::NotHermitian { .. })));
        // bad trace
        let e = vec![c(0.6, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)];
        assert!(matches!(DensityMatrix::new(1, e), Err(Error::TraceNotOne(_))));
        // negative eigenvalue: eigenvalues 0.5 ± 0.6
        let e = vec![c(0.5, 0.0), c(0.6, 0.0), c(0.6, 0.0), c(0.5, 0.0)];
        assert!(matches!(DensityMatrix::new(1, e), Err(Error::NotPositive)));
        // rank-deficient but valid
        let e = vec![c(0.5, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.5, 0.0)];
        assert!(DensityMatrix::new(1, e).is_ok());
    }

    #[test]
    fn random_mixed_is_valid() {
        let mut rng = rng_from_seed(3);
        for n in 1..=4 {
            let rho = DensityMatrix::random_mixed(n, 1 << n, &mut rng).unwrap();
            DensityMatrix::new(n, rho.entries().to_vec()).unwrap();
            assert!(rho.purity() < 1.0);
        }
        let pure = DensityMatrix::random_mixed(2, 1, &mut rng).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dense_cap() {
        assert!(matches!(
            DensityMatrix::maximally_mixed(14),
            Err(Error::TooManyQubits { .. })
        ));
    }
}
