use num_complex::Complex64;
use rand::Rng;
use rand_distr::Exp1;

use super::{
    check_qubits, mix, qubit_bit, rng_from_seed, DensityMatrix, PartitionSpec, PureState, State,
    MAX_DENSE_QUBITS, MAX_PURE_QUBITS,
};
use crate::error::{Error, Result};
use crate::separability::sample_partition;

/// Local basis index of every global index, one table per block.
fn local_index_tables(partition: &PartitionSpec) -> Vec<Vec<usize>> {
    let n = partition.n();
    partition
        .blocks()
        .iter()
        .map(|block| {
            let m = block.len();
            (0..1usize << n)
                .map(|g| {
                    block
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (q, &global)| acc | (qubit_bit(g, global, n) << (m - 1 - q)))
                })
                .collect()
        })
        .collect()
}

fn check_sizes(sizes: impl Iterator<Item = usize>, partition: &PartitionSpec) -> Result<()> {
    let sizes: Vec<usize> = sizes.collect();
    if sizes.len() != partition.k() {
        return Err(Error::InvalidPartition(format!(
            "{} factors for {} blocks",
            sizes.len(),
            partition.k()
        )));
    }
    for (s, b) in sizes.iter().zip(partition.blocks()) {
        if *s != b.len() {
            return Err(Error::InvalidPartition(format!(
                "factor on {s} qubits assigned to block of size {}",
                b.len()
            )));
        }
    }
    Ok(())
}

/// ⊗ of pure factors; factor `i` occupies the qubits of block `i`.
pub fn tensor_product_pure(factors: &[PureState], partition: &PartitionSpec) -> Result<PureState> {
    check_sizes(factors.iter().map(PureState::n_qubits), partition)?;
    check_qubits(partition.n(), MAX_PURE_QUBITS, "pure state")?;
    let tables = local_index_tables(partition);
    let amps = (0..1usize << partition.n())
        .map(|g| {
            factors
                .iter()
                .zip(&tables)
                .map(|(f, t)| f.amplitude(t[g]))
                .product()
        })
        .collect();
    PureState::new(partition.n(), amps)
}

/// ⊗ of density-matrix factors; factor `i` occupies the qubits of block `i`.
pub fn tensor_product_density(
    factors: &[DensityMatrix],
    partition: &PartitionSpec,
) -> Result<DensityMatrix> {
    check_sizes(factors.iter().map(DensityMatrix::n_qubits), partition)?;
    check_qubits(partition.n(), MAX_DENSE_QUBITS, "density matrix")?;
    let tables = local_index_tables(partition);
    let dim = 1usize << partition.n();
    let mut entries = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for c in 0..dim {
            let v: Complex64 = factors
                .iter()
                .zip(&tables)
                .map(|(f, t)| f.get(t[r], t[c]))
                .product();
            entries.push(v);
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(partition.n(), entries))
}

/// Pure output when every factor is pure, dense otherwise.
pub fn tensor_product(factors: &[State], partition: &PartitionSpec) -> Result<State> {
    let pure: Option<Vec<PureState>> = factors
        .iter()
        .map(|f| match f {
            State::Pure(p) => Some(p.clone()),
            State::Density(_) => None,
        })
        .collect();
    match pure {
        Some(p) => tensor_product_pure(&p, partition).map(State::Pure),
        None => {
            let dense = factors
                .iter()
                .map(State::to_density)
                .collect::<Result<Vec<_>>>()?;
            tensor_product_density(&dense, partition).map(State::Density)
        }
    }
}

/// One product of Haar-random block states over a uniformly drawn partition
/// with at least `k` blocks.
pub fn sample_product_state<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<(PureState, PartitionSpec)> {
    check_qubits(n, MAX_PURE_QUBITS, "pure state")?;
    if k == 0 || k > n {
        return Err(Error::SeparabilityOutOfRange { k, n });
    }
    let blocks = rng.random_range(k..=n);
    let partition = sample_partition(n, blocks, rng)?;
    let factors = partition
        .blocks()
        .iter()
        .map(|b| PureState::random_haar(b.len(), rng))
        .collect::<Result<Vec<_>>>()?;
    Ok((tensor_product_pure(&factors, &partition)?, partition))
}

/// Mixture of `n_terms` k-separable products with Dirichlet(1, …, 1) weights.
/// The same seed always yields the same matrix.
pub fn sample_k_separable(n: usize, k: usize, n_terms: usize, rng_seed: u64) -> Result<DensityMatrix> {
    check_qubits(n, MAX_DENSE_QUBITS, "density matrix")?;
    if k == 0 || k > n {
        return Err(Error::SeparabilityOutOfRange { k, n });
    }
    if n_terms == 0 {
        return Err(Error::InvalidWeights("n_terms must be at least 1".into()));
    }
    let mut rng = rng_from_seed(rng_seed);
    let mut raw = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let w: f64 = rng.sample(Exp1);
        let (psi, _) = sample_product_state(n, k, &mut rng)?;
        raw.push((w, DensityMatrix::from_pure(&psi)?));
    }
    let total: f64 = raw.iter().map(|(w, _)| w).sum();
    let mut components: Vec<(f64, DensityMatrix)> =
        raw.into_iter().map(|(w, rho)| (w / total, rho)).collect();
    // absorb round-off so the weights sum to 1 exactly enough for `mix`
    let drift = 1.0 - components.iter().map(|(w, _)| w).sum::<f64>();
    components[0].0 += drift;
    mix(&components)
}
