//! Violation factor r = ‖E‖² / (4^N E_max) and the verdicts it supports.
//!
//! r > 1 rules out a local realistic model of the planar correlations.
//! Independently, a k-separable state never exceeds 2^(−k)(π/2)^N, so
//! exceeding that threshold excludes k-separability. Exceeding the k = 2
//! threshold certifies genuine N-partite correlations. The test is one-sided:
//! "not excluded" does not mean the state is separable.

use std::f64::consts::PI;

use serde::Serialize;

use crate::correlation::{antidiagonal_profile, e_max, norm_squared_antidiagonal, AntidiagonalProfile};
use crate::error::{Error, Result};
use crate::states::State;

/// 4^(−N) ‖E‖² / E_max; zero when E_max = 0 (no planar correlations at all).
pub fn violation_factor(norm_squared: f64, e_max: f64, n: usize) -> Result<f64> {
    if norm_squared.is_nan() || e_max.is_nan() || norm_squared < 0.0 || e_max < 0.0 {
        return Err(Error::Inconsistent(format!(
            "negative or NaN inputs: norm² = {norm_squared}, E_max = {e_max}"
        )));
    }
    if e_max == 0.0 {
        if norm_squared > 0.0 {
            return Err(Error::Inconsistent(format!(
                "E_max = 0 but ‖E‖² = {norm_squared}"
            )));
        }
        return Ok(0.0);
    }
    Ok(norm_squared / (4f64.powi(n as i32) * e_max))
}

/// Relative slack on every strict comparison against a bound. States built
/// to sit exactly on a threshold (|+x⟩⊗Bell at k = 2) land a few ulps either
/// side of it and must not be certified.
pub const VERDICT_REL_TOL: f64 = 1e-12;

fn exceeds(r: f64, bound: f64) -> bool {
    r > bound * (1.0 + VERDICT_REL_TOL)
}

/// ½ (π/2)^N, reached by the GHZ state.
pub fn max_possible_r(n: usize) -> f64 {
    0.5 * (PI / 2.0).powi(n as i32)
}

/// Largest r of any k-separable N-qubit state: 2^(−k) (π/2)^N.
pub fn k_sep_threshold(n: usize, k: usize) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::SeparabilityOutOfRange { k, n });
    }
    Ok((PI / 2.0).powi(n as i32) / 2f64.powi(k as i32))
}

/// Visibility above which ρ(V) = Vρ + (1−V)𝟙/d violates the inequality.
pub fn critical_visibility(r: f64) -> Option<f64> {
    exceeds(r, 1.0).then(|| 1.0 / r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdVerdict {
    pub k: usize,
    pub r_k_max: f64,
    /// r > r_k_max, strictly and beyond rounding.
    pub excluded: bool,
    /// r − r_k_max, for callers that want their own error bars.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub n_qubits: usize,
    pub e_max: f64,
    pub norm_squared: f64,
    pub r: f64,
    pub lhv_violated: bool,
    pub max_possible_r: f64,
    /// k = 2..=N, thresholds halving with each step.
    pub thresholds: Vec<ThresholdVerdict>,
    /// Smallest k whose threshold r exceeds; the state cannot be k-separable
    /// for this or any larger k.
    pub min_excluded_separability: Option<usize>,
    pub critical_visibility: Option<f64>,
}

impl WitnessReport {
    /// Biseparability excluded, i.e. genuine N-partite correlations.
    pub fn genuine_multipartite(&self) -> bool {
        self.min_excluded_separability == Some(2)
    }

    pub fn threshold(&self, k: usize) -> Option<&ThresholdVerdict> {
        self.thresholds.iter().find(|t| t.k == k)
    }

    pub fn verdict(&self) -> String {
        let n = self.n_qubits;
        match self.min_excluded_separability {
            Some(2) => format!(
                "genuine {n}-partite correlations: biseparability excluded"
            ),
            Some(k) if k == n => format!("full separability ({k}-separability) excluded"),
            Some(k) => format!("k-separability excluded for k >= {k}"),
            None => "no separability class excluded".to_string(),
        }
    }
}

pub fn classify(state: &State) -> WitnessReport {
    classify_profile(&antidiagonal_profile(state))
}

pub fn classify_profile(profile: &AntidiagonalProfile) -> WitnessReport {
    let n = profile.n_qubits();
    let e = e_max(profile);
    let norm = norm_squared_antidiagonal(profile);
    // valid profiles never trip the inconsistency branch: ‖E‖² = 0 ⇔ E_max = 0
    let r = violation_factor(norm, e, n).unwrap_or(0.0);
    let thresholds: Vec<ThresholdVerdict> = (2..=n)
        .map(|k| {
            let r_k_max = k_sep_threshold(n, k).expect("k in range");
            ThresholdVerdict {
                k,
                r_k_max,
                excluded: exceeds(r, r_k_max),
                margin: r - r_k_max,
            }
        })
        .collect();
    let min_excluded_separability = thresholds.iter().find(|t| t.excluded).map(|t| t.k);
    WitnessReport {
        n_qubits: n,
        e_max: e,
        norm_squared: norm,
        r,
        lhv_violated: exceeds(r, 1.0),
        max_possible_r: max_possible_r(n),
        thresholds,
        min_excluded_separability,
        critical_visibility: critical_visibility(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_ghz, DensityMatrix};

    #[test]
    fn two_decimal_thresholds() {
        let t22 = k_sep_threshold(2, 2).unwrap();
        let t32 = k_sep_threshold(3, 2).unwrap();
        assert!((t22 - PI * PI / 16.0).abs() < 1e-15);
        assert!((t32 - PI.powi(3) / 32.0).abs() < 1e-15);
        assert_eq!(format!("{t22:.2}"), "0.62");
        assert_eq!(format!("{t32:.2}"), "0.97");
        let t44 = k_sep_threshold(4, 4).unwrap();
        assert!((t44 - (PI / 4.0).powi(4)).abs() < 1e-15);
        assert!(t44 < 1.0);
    }

    #[test]
    fn threshold_endpoints() {
        for n in 1..=8 {
            assert_eq!(k_sep_threshold(n, 1).unwrap(), max_possible_r(n));
        }
        assert!(k_sep_threshold(3, 0).is_err());
        assert!(k_sep_threshold(3, 4).is_err());
    }

    #[test]
    fn violation_factor_edges() {
        assert_eq!(violation_factor(0.0, 0.0, 3).unwrap(), 0.0);
        assert!(violation_factor(1.0, 0.0, 3).is_err());
        assert!(violation_factor(-1.0, 1.0, 3).is_err());
        let r = violation_factor(4.0 * PI.powi(3), 1.0, 3).unwrap();
        assert!((r - PI.powi(3) / 16.0).abs() < 1e-15);
    }

    #[test]
    fn critical_visibility_examples() {
        let v = critical_visibility(PI.powi(3) / 16.0).unwrap();
        assert!((v - 16.0 / PI.powi(3)).abs() < 1e-15);
        assert!((v - 0.5160).abs() < 5e-5);
        assert_eq!(critical_visibility(1.0), None);
        assert_eq!(critical_visibility(0.3), None);
        assert_eq!(critical_visibility(2.0), Some(0.5));
    }

    #[test]
    fn ghz_values() {
        let r2 = classify(&make_ghz(2).unwrap().into()).r;
        let r3 = classify(&make_ghz(3).unwrap().into()).r;
        assert!((r2 - PI * PI / 8.0).abs() < 1e-12);
        assert!((r3 - PI.powi(3) / 16.0).abs() < 1e-12);
        assert!((r2 - 1.2337).abs() < 5e-5);
        assert!((r3 - 1.9379).abs() < 5e-5);
    }

    #[test]
    fn boundary_is_not_excluded() {
        assert!(!exceeds(PI.powi(3) / 32.0 + 4.4e-16, PI.powi(3) / 32.0));
        assert!(exceeds(PI.powi(3) / 32.0 + 1e-9, PI.powi(3) / 32.0));
        assert_eq!(critical_visibility(1.0 + 1e-15), None);
    }

    #[test]
    fn ghz3_report() {
        let rep = classify(&make_ghz(3).unwrap().into());
        assert!(rep.lhv_violated);
        assert!(rep.genuine_multipartite());
        assert_eq!(rep.min_excluded_separability, Some(2));
        assert_eq!(rep.thresholds.len(), 2);
        assert!(rep.verdict().contains("biseparability excluded"));
    }

    #[test]
    fn maximally_mixed_report() {
        let rep = classify(&DensityMatrix::maximally_mixed(3).unwrap().into());
        assert_eq!(rep.r, 0.0);
        assert_eq!(rep.min_excluded_separability, None);
        assert_eq!(rep.critical_visibility, None);
        assert!(rep.verdict().contains("no separability class excluded"));
    }

    #[test]
    fn single_qubit_has_no_ladder() {
        let rep = classify(&make_ghz(1).unwrap().into());
        assert!(rep.thresholds.is_empty());
        assert!((rep.r - PI / 4.0).abs() < 1e-15);
        assert!(!rep.lhv_violated);
    }
}
