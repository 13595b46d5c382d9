//! N-qubit pure states and density matrices in the computational basis.
//!
//! Qubit 1 is the most significant bit of a basis index, so for three qubits
//! the amplitude of `|011⟩` lives at index 3.

mod density;
mod json;
mod ket;
mod partition;
mod product;
mod pure;

pub use density::{add_white_noise, mix, DensityMatrix};
pub use json::{read_state_json, state_to_json, StateFile};
pub use ket::{parse_ket, render_ket, ParsedKet};
pub use partition::PartitionSpec;
pub use product::{
    sample_k_separable, sample_product_state, tensor_product, tensor_product_density,
    tensor_product_pure,
};
pub use pure::{make_ghz, PureState};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Amplitude type used throughout. Every constructor rejects NaN and infinities.
pub type ComplexAmplitude = Complex64;

/// Tolerance on Σ|ψ|² = 1, Hermiticity and unit trace.
pub const NORM_TOL: f64 = 1e-10;
/// Smallest eigenvalue a density matrix may have and still count as PSD.
pub const PSD_TOL: f64 = 1e-8;
/// Dense density matrices hold 4^N complex entries; 13 qubits is 64M entries.
pub const MAX_DENSE_QUBITS: usize = 13;
pub const MAX_PURE_QUBITS: usize = 26;

/// Either representation; most analysis entry points accept both.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(PureState),
    Density(DensityMatrix),
}

impl State {
    pub fn n_qubits(&self) -> usize {
        match self {
            State::Pure(p) => p.n_qubits(),
            State::Density(d) => d.n_qubits(),
        }
    }

    /// Materializes ρ. Fails above [`MAX_DENSE_QUBITS`].
    pub fn to_density(&self) -> Result<DensityMatrix> {
        match self {
            State::Pure(p) => DensityMatrix::from_pure(p),
            State::Density(d) => Ok(d.clone()),
        }
    }

    pub fn with_white_noise(&self, visibility: f64) -> Result<DensityMatrix> {
        add_white_noise(&self.to_density()?, visibility)
    }
}

impl From<PureState> for State {
    fn from(p: PureState) -> Self {
        State::Pure(p)
    }
}

impl From<DensityMatrix> for State {
    fn from(d: DensityMatrix) -> Self {
        State::Density(d)
    }
}

/// Deterministic generator used by every sampler in the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bit of basis index `index` that belongs to qubit `q` (1-based) of `n`.
#[inline]
pub(crate) fn qubit_bit(index: usize, q: usize, n: usize) -> usize {
    (index >> (n - q)) & 1
}

pub(crate) fn check_qubits(n: usize, max: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidQubitCount(0));
    }
    if n > max {
        return Err(Error::TooManyQubits { what, n, max });
    }
    Ok(())
}

pub(crate) fn check_finite(values: &[Complex64]) -> Result<()> {
    match values
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

/// Maps every basis index through a qubit permutation. `perm[i]` is the new
/// 0-based position of the qubit currently at 0-based position `i`.
pub(crate) fn permuted_index(index: usize, perm: &[usize]) -> usize {
    let n = perm.len();
    let mut out = 0;
    for (from, &to) in perm.iter().enumerate() {
        let bit = (index >> (n - 1 - from)) & 1;
        out |= bit << (n - 1 - to);
    }
    out
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPartition(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}
