use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A split of qubits {1..N} into disjoint non-empty blocks.
///
/// Block order and the order of qubits inside a block are kept as given:
/// when a partition drives [`tensor_product`](super::tensor_product), block
/// `i` receives the `i`-th factor and that factor's local qubit `q` lands on
/// global qubit `blocks[i][q]`. Serializes as nested arrays, `[[1],[2,3]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct PartitionSpec {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl PartitionSpec {
    /// N is inferred as the total number of listed qubits, which must then be
    /// exactly {1..N}.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &q in blocks.iter().flatten() {
            if q == 0 || q > n {
                return Err(Error::InvalidPartition(format!(
                    "qubit {q} outside 1..={n}"
                )));
            }
            if seen[q] {
                return Err(Error::InvalidPartition(format!("qubit {q} appears twice")));
            }
            seen[q] = true;
        }
        Ok(Self { n, blocks })
    }

    /// Every qubit in its own block.
    pub fn singletons(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQubitCount(0));
        }
        Self::new((1..=n).map(|q| vec![q]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Blocks sorted internally and ordered by smallest element.
    pub fn canonical(&self) -> Self {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { n: self.n, blocks }
    }

    /// Relabels qubits: 0-based qubit `i` becomes `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        super::check_permutation(perm, self.n)?;
        Self::new(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&q| perm[q - 1] + 1).collect())
                .collect(),
        )
    }
}

impl TryFrom<Vec<Vec<usize>>> for PartitionSpec {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(blocks)
    }
}

impl From<PartitionSpec> for Vec<Vec<usize>> {
    fn from(p: PartitionSpec) -> Self {
        p.blocks
    }
}

impl std::fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.blocks {
            write!(f, "{{")?;
            for (i, q) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{q}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}
