use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{check_finite, check_permutation, check_qubits, permuted_index, MAX_PURE_QUBITS, NORM_TOL};
use crate::error::{Error, Result};

/// Normalized state vector of `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates length, finiteness and Σ|ψ|² = 1 (within [`NORM_TOL`]).
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubits(n_qubits, MAX_PURE_QUBITS, "pure state")?;
        check_len(n_qubits, &amplitudes)?;
        check_finite(&amplitudes)?;
        let norm_sq = norm_sq(&amplitudes);
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sq));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales to unit norm. Returns the state and the input's Euclidean norm.
    pub fn normalized(n_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<(Self, f64)> {
        check_qubits(n_qubits, MAX_PURE_QUBITS, "pure state")?;
        check_len(n_qubits, &amplitudes)?;
        check_finite(&amplitudes)?;
        let norm = norm_sq(&amplitudes).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok((
            Self {
                n_qubits,
                amplitudes,
            },
            norm,
        ))
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits, MAX_PURE_QUBITS, "pure state")?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: index,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Haar-random state: i.i.d. standard complex Gaussians, normalized.
    pub fn random_haar<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        check_qubits(n_qubits, MAX_PURE_QUBITS, "pure state")?;
        loop {
            let amps: Vec<Complex64> = (0..1usize << n_qubits)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            match Self::normalized(n_qubits, amps) {
                Ok((s, _)) => return Ok(s),
                Err(Error::ZeroVector) => continue,
                Err(e) => return Err(e),
            }
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Moves the qubit at 0-based position `i` to position `perm[i]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n_qubits)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            out[permuted_index(i, perm)] = *a;
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            amplitudes: out,
        })
    }

    /// |⟨self|other⟩|², phase-insensitive overlap.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }
}

/// (|0…0⟩ + |1…1⟩)/√2.
pub fn make_ghz(n: usize) -> Result<PureState> {
    check_qubits(n, MAX_PURE_QUBITS, "pure state")?;
    let dim = 1usize << n;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amplitudes[0] = h;
    amplitudes[dim - 1] = h;
    Ok(PureState {
        n_qubits: n,
        amplitudes,
    })
}

fn norm_sq(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

fn check_len(n: usize, amps: &[Complex64]) -> Result<()> {
    let dim = 1usize << n;
    if amps.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: amps.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::rng_from_seed;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn ghz_amplitudes() {
        let g = make_ghz(3).unwrap();
        for (i, a) in g.amplitudes().iter().enumerate() {
            let want = if i == 0 || i == 7 { FRAC_1_SQRT_2 } else { 0.0 };
            assert_eq!(a.re, want);
            assert_eq!(a.im, 0.0);
        }
        let g1 = make_ghz(1).unwrap();
        assert_eq!(g1.amplitudes()[0].re, FRAC_1_SQRT_2);
        assert_eq!(g1.amplitudes()[1].re, FRAC_1_SQRT_2);
    }

    #[test]
    fn zero_qubits_rejected() {
        assert!(matches!(make_ghz(0), Err(Error::InvalidQubitCount(0))));
        assert!(matches!(
            make_ghz(27),
            Err(Error::TooManyQubits { n: 27, .. })
        ));
    }

    #[test]
    fn new_validates_norm_and_length() {
        let c = |x: f64| Complex64::new(x, 0.0);
        assert!(matches!(
            PureState::new(1, vec![c(1.0), c(1.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            PureState::new(2, vec![c(1.0), c(0.0)]),
            Err(Error::DimensionMismatch { expected: 4, .. })
        ));
        assert!(matches!(
            PureState::new(1, vec![c(f64::NAN), c(0.0)]),
            Err(Error::NonFinite(0))
        ));
        assert!(matches!(
            PureState::normalized(1, vec![c(0.0), c(0.0)]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn haar_samples_are_normalized_and_seeded() {
        let mut a = rng_from_seed(7);
        let mut b = rng_from_seed(7);
        let s = PureState::random_haar(4, &mut a).unwrap();
        let t = PureState::random_haar(4, &mut b).unwrap();
        assert_eq!(s, t);
        let n: f64 = s.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn permutation_moves_bits() {
        // |100⟩ with qubit 1 -> position 3 becomes |001⟩
        let s = PureState::basis(3, 0b100).unwrap();
        let p = s.permute_qubits(&[2, 0, 1]).unwrap();
        assert_eq!(p.amplitude(0b001).re, 1.0);
        assert!(s.permute_qubits(&[0, 0, 1]).is_err());
    }
}
