//! JSON state files:
//!
//! ```json
//! { "n": 2, "kind": "pure", "amplitudes": [[0.7071, 0], [0, 0], [0, 0], [0.7071, 0]] }
//! { "n": 1, "kind": "density", "matrix": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]] }
//! ```
//! Complex numbers are `[re, im]` pairs. Pure amplitudes are normalized on load;
//! density matrices must already satisfy every invariant.

use std::io::Read;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DensityMatrix, PureState, State};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateFile {
    Pure {
        n: usize,
        amplitudes: Vec<[f64; 2]>,
    },
    Density {
        n: usize,
        matrix: Vec<Vec<[f64; 2]>>,
    },
}

fn to_complex(p: &[f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn to_pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl StateFile {
    pub fn into_state(self) -> Result<State> {
        match self {
            StateFile::Pure { n, amplitudes } => {
                let amps = amplitudes.iter().map(to_complex).collect();
                Ok(State::Pure(PureState::normalized(n, amps)?.0))
            }
            StateFile::Density { n, matrix } => {
                let rows = matrix
                    .iter()
                    .map(|r| r.iter().map(to_complex).collect())
                    .collect();
                Ok(State::Density(DensityMatrix::from_rows(n, rows)?))
            }
        }
    }

    pub fn from_state(state: &State) -> Self {
        match state {
            State::Pure(p) => StateFile::Pure {
                n: p.n_qubits(),
                amplitudes: p.amplitudes().iter().map(to_pair).collect(),
            },
            State::Density(d) => StateFile::Density {
                n: d.n_qubits(),
                matrix: d.rows().map(|r| r.iter().map(to_pair).collect()).collect(),
            },
        }
    }
}

pub fn read_state_json<R: Read>(reader: R) -> Result<State> {
    let file: StateFile = serde_json::from_reader(reader)?;
    file.into_state()
}

pub fn state_to_json(state: &State) -> String {
    serde_json::to_string(&StateFile::from_state(state)).expect("state file serializes")
}
