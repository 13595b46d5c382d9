//! Detects genuinely N-partite quantum correlations with rotationally
//! invariant Bell inequalities.
//!
//! For measurements confined to each qubit's x–y plane, the correlation
//! function of any N-qubit state is fixed by the 2^(N−1) antidiagonal
//! elements of ρ. From them come closed forms for the maximum E_max, the
//! norm ‖E‖², and the violation factor r = ‖E‖² / (4^N E_max). r is then
//! compared with the local-realism bound (r > 1) and with the k-separability
//! ladder r ≤ 2^(−k) (π/2)^N.
//!
//! ```
//! use rotbell::{states::make_ghz, witness::classify};
//!
//! let report = classify(&make_ghz(3).unwrap().into());
//! assert!(report.lhv_violated);
//! assert!(report.genuine_multipartite());
//! ```
//!
//! Every closed form has a brute-force counterpart in [`oracle`].

pub mod cli;
pub mod correlation;
pub mod error;
pub mod format;
pub mod oracle;
pub mod separability;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
