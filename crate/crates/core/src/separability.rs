//! Set partitions of the qubits and the antidiagonal bound for k-separable
//! states: every antidiagonal element of a product over k blocks is a product
//! of k single-block antidiagonal elements, each of modulus at most ½, and
//! mixing can only shrink the maximum. So |ρ_k| ≤ (½)^k.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::correlation::{antidiagonal_profile, profile_of_pure, AntidiagonalProfile};
use crate::error::{Error, Result};
use crate::states::{rng_from_seed, sample_product_state, PartitionSpec, State};

/// Exhaustive enumeration is refused beyond this many qubits (B(9) = 21147
/// and growing super-exponentially).
pub const MAX_ENUMERATION_QUBITS: usize = 8;
const BOUND_TOL: f64 = 1e-12;

/// Stirling number of the second kind S(n, k).
pub fn stirling2(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    // row-by-row recurrence S(m, j) = j S(m−1, j) + S(m−1, j−1)
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// Σ_{j=k_min}^{n} S(n, j).
pub fn count_partitions(n: usize, k_min: usize) -> u128 {
    (k_min.max(1)..=n).map(|j| stirling2(n, j)).sum()
}

/// Lazily yields every set partition of {1..n} with at least `k_min` blocks,
/// in lexicographic order of restricted growth strings.
#[derive(Debug, Clone)]
pub struct PartitionEnumeration {
    n: usize,
    k_min: usize,
    rgs: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionEnumeration {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k_min(&self) -> usize {
        self.k_min
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        // rightmost position that can grow: a[i] <= max(a[0..i])
        for i in (1..self.n).rev() {
            let prefix_max = self.rgs[..i].iter().copied().max().unwrap_or(0);
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for x in &mut self.rgs[i + 1..] {
                    *x = 0;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> PartitionSpec {
        let k = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (q, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(q + 1);
        }
        PartitionSpec::new(blocks).expect("restricted growth strings encode valid partitions")
    }
}

impl Iterator for PartitionEnumeration {
    type Item = PartitionSpec;

    fn next(&mut self) -> Option<PartitionSpec> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                break;
            }
            let blocks = self.rgs.iter().max().map_or(0, |m| m + 1);
            if blocks >= self.k_min {
                return Some(self.current());
            }
        }
        None
    }
}

pub fn enumerate_partitions(n: usize, k_min: usize) -> Result<PartitionEnumeration> {
    if k_min == 0 || k_min > n {
        return Err(Error::SeparabilityOutOfRange { k: k_min, n });
    }
    if n > MAX_ENUMERATION_QUBITS {
        return Err(Error::TooManyQubits {
            what: "partition enumeration",
            n,
            max: MAX_ENUMERATION_QUBITS,
        });
    }
    Ok(PartitionEnumeration {
        n,
        k_min,
        rgs: vec![0; n],
        started: false,
        done: false,
    })
}

/// Uniform draw among the S(n, k) partitions of {1..n} with exactly k blocks.
///
/// Unwinds the recurrence S(m, j) = S(m−1, j−1) + j S(m−1, j) from (n, k)
/// down: element m opens its own block with probability S(m−1, j−1)/S(m, j),
/// otherwise it joins one of the j blocks of the smaller partition uniformly.
pub fn sample_partition<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<PartitionSpec> {
    if n == 0 {
        return Err(Error::InvalidQubitCount(0));
    }
    if k == 0 || k > n {
        return Err(Error::SeparabilityOutOfRange { k, n });
    }
    // opens[m-1]: does element m start a new block (as seen from level m)?
    let mut opens = vec![false; n];
    let mut j = k;
    for m in (1..=n).rev() {
        if j == m {
            for o in &mut opens[..m] {
                *o = true;
            }
            break;
        }
        if j == 1 {
            opens[0] = true;
            break;
        }
        let p_new = stirling2(m - 1, j - 1) as f64 / stirling2(m, j) as f64;
        if rng.random::<f64>() < p_new {
            opens[m - 1] = true;
            j -= 1;
        }
    }
    let mut labels = vec![0usize; n];
    let mut blocks = 0usize;
    for m in 0..n {
        if opens[m] {
            labels[m] = blocks;
            blocks += 1;
        } else {
            labels[m] = rng.random_range(0..blocks);
        }
    }
    let mut out = vec![Vec::new(); blocks];
    for (q, &b) in labels.iter().enumerate() {
        out[b].push(q + 1);
    }
    PartitionSpec::new(out)
}

/// (½)^k.
pub fn max_antidiagonal_bound(k: usize) -> f64 {
    0.5f64.powi(k as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub max_modulus: f64,
    pub bound: f64,
    pub satisfied: bool,
}

/// Checks a claimed product structure: the largest antidiagonal modulus must
/// not exceed (½)^k for the partition's k. A violation proves the claim false.
pub fn verify_antidiagonal_bound(state: &State, partition: &PartitionSpec) -> BoundCheck {
    let max_modulus = antidiagonal_profile(state).max_modulus();
    let bound = max_antidiagonal_bound(partition.k());
    BoundCheck {
        max_modulus,
        bound,
        satisfied: max_modulus <= bound + BOUND_TOL,
    }
}

/// Antidiagonal profile of `sample_k_separable(n, k, n_terms, rng_seed)`,
/// built by mixing the factors' profiles, so ρ is never materialized and n
/// may go up to the pure-state limit.
pub fn sample_k_separable_profile(
    n: usize,
    k: usize,
    n_terms: usize,
    rng_seed: u64,
) -> Result<AntidiagonalProfile> {
    if k == 0 || k > n {
        return Err(Error::SeparabilityOutOfRange { k, n });
    }
    if n_terms == 0 {
        return Err(Error::InvalidWeights("n_terms must be at least 1".into()));
    }
    // same draw sequence as states::sample_k_separable
    let mut rng = rng_from_seed(rng_seed);
    let mut raw = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let w: f64 = rng.sample(Exp1);
        let (psi, _) = sample_product_state(n, k, &mut rng)?;
        raw.push((w, profile_of_pure(&psi)));
    }
    let total: f64 = raw.iter().map(|(w, _)| w).sum();
    let mut weights: Vec<f64> = raw.iter().map(|(w, _)| w / total).collect();
    weights[0] += 1.0 - weights.iter().sum::<f64>();
    let mut values = vec![Complex64::new(0.0, 0.0); 1usize << (n - 1)];
    for (w, (_, p)) in weights.iter().zip(&raw) {
        for (acc, v) in values.iter_mut().zip(p.values()) {
            *acc += v * *w;
        }
    }
    AntidiagonalProfile::new(n, values)
}
