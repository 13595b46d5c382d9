//! Brute-force checks for the closed forms in [`crate::correlation`]:
//! direct operator traces, a refined grid search for max E, and a periodic
//! trapezoid quadrature of ‖E‖².

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::correlation::{
    antidiagonal_profile, closed_form_attainable, correlation_tensor, correlation_value,
    correlation_value_trace, e_max, norm_squared_antidiagonal, norm_squared_tensor,
    AngleSetting, AntidiagonalProfile, PhaseEvaluator,
};
use crate::error::{Error, Result};
use crate::states::{
    add_white_noise, make_ghz, rng_from_seed, tensor_product_pure, DensityMatrix, PartitionSpec,
    PureState, State,
};

pub const DEFAULT_EVALUATION_BUDGET: u64 = 10_000_000;
/// Oracles evaluate E on grids, so they stop at six qubits.
pub const MAX_ORACLE_QUBITS: usize = 6;

pub const TRACE_TOL: f64 = 1e-12;
pub const NORM_REL_TOL: f64 = 1e-9;
pub const SOUNDNESS_TOL: f64 = 1e-9;
pub const ATTAINABILITY_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSearchConfig {
    pub points_per_axis: usize,
    pub refinement_rounds: usize,
    pub refinement_shrink: f64,
    /// Cap on correlation evaluations over all rounds.
    pub max_evaluations: u64,
}

impl Default for GridSearchConfig {
    fn default() -> Self {
        Self {
            points_per_axis: 64,
            refinement_rounds: 3,
            refinement_shrink: 0.1,
            max_evaluations: DEFAULT_EVALUATION_BUDGET,
        }
    }
}

impl GridSearchConfig {
    /// Default settings with the resolution lowered (not below 8) until
    /// `points^n · (rounds + 1)` fits the evaluation budget.
    pub fn for_qubits(n: usize) -> Self {
        let mut cfg = Self::default();
        while cfg.points_per_axis > 8 && cfg.evaluations(n) > cfg.max_evaluations as u128 {
            cfg.points_per_axis -= 1;
        }
        cfg
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points_per_axis = points;
        self
    }

    pub fn evaluations(&self, n: usize) -> u128 {
        (self.points_per_axis as u128).pow(n as u32) * (self.refinement_rounds as u128 + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points_per_axis < 8 {
            return Err(Error::InvalidConfig(format!(
                "points_per_axis = {} (need >= 8)",
                self.points_per_axis
            )));
        }
        if !(self.refinement_shrink > 0.0 && self.refinement_shrink < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "refinement_shrink = {} (need 0 < s < 1)",
                self.refinement_shrink
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridMaximum {
    pub value: f64,
    pub setting: AngleSetting,
    pub evaluations: u64,
}

/// Best value over one full grid, ties broken by the smallest flat index,
/// which is the lexicographically smallest setting since every axis is
/// listed in increasing order.
fn best_on_grid(profile: &AntidiagonalProfile, axes: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let n = axes.len();
    let p = axes[0].len();
    let phase_axes: Vec<Vec<Complex64>> = axes
        .iter()
        .map(|a| a.iter().map(|&x| Complex64::from_polar(1.0, x)).collect())
        .collect();
    let total = p.pow(n as u32);
    let (value, idx) = (0..total)
        .into_par_iter()
        .map_init(
            || (PhaseEvaluator::new(profile), vec![Complex64::new(1.0, 0.0); n]),
            |(eval, phases), idx| {
                let mut rest = idx;
                for j in (0..n).rev() {
                    phases[j] = phase_axes[j][rest % p];
                    rest /= p;
                }
                (eval.eval(phases), idx)
            },
        )
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let mut rest = idx;
    let mut setting = vec![0.0; n];
    for j in (0..n).rev() {
        setting[j] = axes[j][rest % p];
        rest /= p;
    }
    (value, setting)
}

/// Maximizes E over a periodic grid, then re-grids a box around the incumbent
/// that shrinks by `refinement_shrink` each round.
pub fn maximize_grid(profile: &AntidiagonalProfile, config: &GridSearchConfig) -> Result<GridMaximum> {
    config.validate()?;
    let n = profile.n_qubits();
    let needed = config.evaluations(n);
    if needed > config.max_evaluations as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            cap: config.max_evaluations,
        });
    }
    let p = config.points_per_axis;
    let periodic: Vec<f64> = (0..p).map(|i| 2.0 * PI * i as f64 / p as f64).collect();
    let (mut best, mut setting) = best_on_grid(profile, &vec![periodic; n]);
    let mut half_width = PI;
    for _ in 0..config.refinement_rounds {
        half_width *= config.refinement_shrink;
        let axes: Vec<Vec<f64>> = setting
            .iter()
            .map(|&c| {
                (0..p)
                    .map(|i| c - half_width + 2.0 * half_width * i as f64 / (p - 1) as f64)
                    .collect()
            })
            .collect();
        let (v, s) = best_on_grid(profile, &axes);
        if v > best {
            best = v;
            setting = s;
        }
    }
    Ok(GridMaximum {
        value: best,
        setting: AngleSetting::new(setting)?.wrapped(),
        evaluations: needed as u64,
    })
}

/// ‖E‖² as the equally spaced periodic trapezoid sum of E² over [0, 2π)^N.
/// E² has trigonometric degree ≤ 2 in every angle, so 5 or more points per
/// axis make the rule exact up to round-off.
pub fn norm_squared_quadrature(profile: &AntidiagonalProfile, points_per_axis: usize) -> Result<f64> {
    if points_per_axis < 5 {
        return Err(Error::InvalidConfig(format!(
            "quadrature needs >= 5 points per axis, got {points_per_axis}"
        )));
    }
    let n = profile.n_qubits();
    let p = points_per_axis;
    let needed = (p as u128).pow(n as u32);
    if needed > DEFAULT_EVALUATION_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            cap: DEFAULT_EVALUATION_BUDGET,
        });
    }
    let nodes: Vec<Complex64> = (0..p)
        .map(|i| Complex64::from_polar(1.0, 2.0 * PI * i as f64 / p as f64))
        .collect();
    let total = needed as usize;
    const CHUNK: usize = 4096;
    // fixed chunks summed in order keep the result independent of scheduling
    let partial: Vec<f64> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map_init(
            || (PhaseEvaluator::new(profile), vec![Complex64::new(1.0, 0.0); n]),
            |(eval, phases), chunk| {
                let mut s = 0.0;
                for idx in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                    let mut rest = idx;
                    for j in (0..n).rev() {
                        phases[j] = nodes[rest % p];
                        rest /= p;
                    }
                    let e = eval.eval(phases);
                    s += e * e;
                }
                s
            },
        )
        .collect();
    let weight = (2.0 * PI / p as f64).powi(n as i32);
    Ok(partial.iter().sum::<f64>() * weight)
}

/// Maps a profile and setting to E. Lets the validation run against a
/// substitute implementation (e.g. a deliberately broken one).
pub type CorrelationModel = dyn Fn(&AntidiagonalProfile, &AngleSetting) -> f64 + Sync;

/// The crate's closed form.
pub fn closed_form_model(profile: &AntidiagonalProfile, setting: &AngleSetting) -> f64 {
    correlation_value(profile, setting).expect("setting sized to profile")
}

/// Closed form with the sine term's sign flipped. Only useful to show that
/// the trace check catches such a mistake.
pub fn sign_flipped_model(profile: &AntidiagonalProfile, setting: &AngleSetting) -> f64 {
    let n = profile.n_qubits();
    let a = setting.angles();
    2.0 * profile
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let theta = a[0]
                + (1..n)
                    .map(|j| if (k >> (n - 1 - j)) & 1 == 0 { a[j] } else { -a[j] })
                    .sum::<f64>();
            theta.cos() * v.re + theta.sin() * v.im
        })
        .sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl Check {
    fn bounded(name: &'static str, deviation: f64, tolerance: f64) -> Self {
        Self {
            name,
            deviation,
            tolerance,
            status: if deviation <= tolerance {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            note: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationConfig {
    /// `None` picks [`GridSearchConfig::for_qubits`].
    pub grid: Option<GridSearchConfig>,
    pub setting_samples: usize,
    pub quadrature_points: usize,
    pub seed: u64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            grid: None,
            setting_samples: 100,
            quadrature_points: 8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub n_qubits: usize,
    pub e_max: f64,
    pub grid_max: f64,
    /// Whether 2Σ|ρ_k| is reachable at all (see
    /// [`closed_form_attainable`]); gates the attainability check.
    pub closed_form_attainable: bool,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn cross_validate(state: &State, config: &ValidationConfig) -> Result<ValidationReport> {
    cross_validate_with(state, config, &closed_form_model)
}

/// Runs five checks:
/// * `trace_equivalence`: max |model − direct trace| at random settings
/// * `tensor_norm`: relative gap between the antidiagonal and tensor norms
/// * `quadrature_norm`: relative gap between the antidiagonal norm and quadrature
/// * `grid_soundness`: grid maximum − e_max (must not be positive)
/// * `grid_attainability`: e_max − grid maximum, enforced only when the closed
///   form is attainable for this profile
pub fn cross_validate_with(
    state: &State,
    config: &ValidationConfig,
    model: &CorrelationModel,
) -> Result<ValidationReport> {
    let n = state.n_qubits();
    if n > MAX_ORACLE_QUBITS {
        return Err(Error::TooManyQubits {
            what: "oracle validation",
            n,
            max: MAX_ORACLE_QUBITS,
        });
    }
    let profile = antidiagonal_profile(state);
    let mut rng = rng_from_seed(config.seed);
    let mut trace_dev: f64 = 0.0;
    for _ in 0..config.setting_samples {
        let s = AngleSetting::new((0..n).map(|_| rng.random::<f64>() * 2.0 * PI).collect())?;
        let direct = correlation_value_trace(state, &s)?;
        trace_dev = trace_dev.max((model(&profile, &s) - direct).abs());
    }

    let ns = norm_squared_antidiagonal(&profile);
    let ns_tensor = norm_squared_tensor(&correlation_tensor(&profile));
    let ns_quad = norm_squared_quadrature(&profile, config.quadrature_points)?;
    let rel = |a: f64, b: f64| {
        let scale = a.abs().max(b.abs());
        if scale == 0.0 {
            0.0
        } else {
            (a - b).abs() / scale
        }
    };

    let grid_cfg = config.grid.unwrap_or_else(|| GridSearchConfig::for_qubits(n));
    let grid = maximize_grid(&profile, &grid_cfg)?;
    let emax = e_max(&profile);
    let attainable = closed_form_attainable(&profile);
    let mut attain = Check::bounded("grid_attainability", emax - grid.value, ATTAINABILITY_TOL);
    if !attainable {
        attain.status = CheckStatus::NotApplicable;
        attain.note = Some("closed form is a strict upper bound for this profile");
    }

    let checks = vec![
        Check::bounded("trace_equivalence", trace_dev, TRACE_TOL),
        Check::bounded("tensor_norm", rel(ns, ns_tensor), NORM_REL_TOL),
        Check::bounded("quadrature_norm", rel(ns, ns_quad), NORM_REL_TOL),
        Check::bounded("grid_soundness", grid.value - emax, SOUNDNESS_TOL),
        attain,
    ];
    let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    Ok(ValidationReport {
        n_qubits: n,
        e_max: emax,
        grid_max: grid.value,
        closed_form_attainable: attainable,
        checks,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureResult {
    pub fixture: String,
    pub report: ValidationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub seed: u64,
    pub results: Vec<FixtureResult>,
    pub passed: bool,
}

impl BatteryReport {
    pub fn failures(&self) -> impl Iterator<Item = (&str, &Check)> {
        self.results.iter().flat_map(|r| {
            r.report
                .checks
                .iter()
                .filter(|c| c.status == CheckStatus::Fail)
                .map(move |c| (r.fixture.as_str(), c))
        })
    }
}

/// Number of seeded random states in the battery.
pub const BATTERY_RANDOM_STATES: usize = 50;

/// The built-in fixtures: GHZ for N = 2..5, product states, biseparable
/// boundary states, a noisy GHZ, the maximally mixed state, and
/// [`BATTERY_RANDOM_STATES`] seeded random pure and mixed states on 1–4 qubits.
pub fn battery_fixtures(seed: u64) -> Result<Vec<(String, State)>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x: f64| Complex64::new(x, 0.0);
    let plus = PureState::new(1, vec![c(h), c(h)])?;
    let bell = make_ghz(2)?;

    let mut out: Vec<(String, State)> = Vec::new();
    for n in 2..=5 {
        out.push((format!("ghz{n}"), make_ghz(n)?.into()));
    }
    out.push(("zero3".into(), PureState::basis(3, 0)?.into()));
    out.push((
        "plus_x3".into(),
        tensor_product_pure(&[plus.clone(), plus.clone(), plus.clone()], &PartitionSpec::singletons(3)?)?
            .into(),
    ));
    let mut rng = rng_from_seed(seed ^ 0x5eed_f17e);
    let factors = (0..4)
        .map(|_| PureState::random_haar(1, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    out.push((
        "haar_product4".into(),
        tensor_product_pure(&factors, &PartitionSpec::singletons(4)?)?.into(),
    ));
    out.push((
        "plus_x_bell".into(),
        tensor_product_pure(
            &[plus.clone(), bell.clone()],
            &PartitionSpec::new(vec![vec![1], vec![2, 3]])?,
        )?
        .into(),
    ));
    out.push((
        "bell13_plus_x".into(),
        tensor_product_pure(&[bell, plus], &PartitionSpec::new(vec![vec![1, 3], vec![2]])?)?.into(),
    ));
    out.push((
        "ghz3_v0.6".into(),
        add_white_noise(&DensityMatrix::from_pure(&make_ghz(3)?)?, 0.6)?.into(),
    ));
    out.push(("mixed2".into(), DensityMatrix::maximally_mixed(2)?.into()));
    for i in 0..BATTERY_RANDOM_STATES {
        let n = 1 + i % 4;
        if i % 2 == 0 {
            out.push((format!("random_pure{n}_{i}"), PureState::random_haar(n, &mut rng)?.into()));
        } else {
            let rank = 1 + rng.random_range(0..1usize << n);
            out.push((
                format!("random_mixed{n}_{i}"),
                DensityMatrix::random_mixed(n, rank, &mut rng)?.into(),
            ));
        }
    }
    Ok(out)
}

/// Grid resolution used by the battery: the budget-limited default, capped
/// at 24 points per axis.
pub fn battery_grid(n: usize) -> GridSearchConfig {
    let cfg = GridSearchConfig::for_qubits(n);
    cfg.with_points(cfg.points_per_axis.min(24))
}

pub fn verify_battery(seed: u64) -> Result<BatteryReport> {
    verify_battery_with(seed, &closed_form_model)
}

pub fn verify_battery_with(seed: u64, model: &CorrelationModel) -> Result<BatteryReport> {
    let mut results = Vec::new();
    for (i, (fixture, state)) in battery_fixtures(seed)?.into_iter().enumerate() {
        let config = ValidationConfig {
            grid: Some(battery_grid(state.n_qubits())),
            seed: seed.wrapping_add(i as u64),
            ..ValidationConfig::default()
        };
        let report = cross_validate_with(&state, &config, model)?;
        results.push(FixtureResult { fixture, report });
    }
    let passed = results.iter().all(|r| r.report.passed);
    Ok(BatteryReport {
        seed,
        results,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ghz_profile(n: usize) -> AntidiagonalProfile {
        antidiagonal_profile(&make_ghz(n).unwrap().into())
    }

    #[test]
    fn config_validation() {
        assert!(GridSearchConfig::default().validate().is_ok());
        assert!(GridSearchConfig::default().with_points(7).validate().is_err());
        let bad = GridSearchConfig {
            refinement_shrink: 1.0,
            ..GridSearchConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let err = maximize_grid(&ghz_profile(4), &GridSearchConfig::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let cfg = GridSearchConfig::for_qubits(4);
        assert!(cfg.evaluations(4) <= DEFAULT_EVALUATION_BUDGET as u128);
        assert_eq!(GridSearchConfig::for_qubits(3).points_per_axis, 64);
    }

    #[test]
    fn ghz3_grid_maximum() {
        let m = maximize_grid(&ghz_profile(3), &GridSearchConfig::default()).unwrap();
        assert!(m.value <= 1.0 + 1e-12);
        assert!(1.0 - m.value <= 1e-6);
        let sum: f64 = m.setting.angles().iter().sum();
        let wrapped = sum - (sum / (2.0 * PI)).round() * 2.0 * PI;
        assert!(wrapped.abs() < 1e-3);
    }

    #[test]
    fn flat_profile_grid() {
        let p = antidiagonal_profile(&DensityMatrix::maximally_mixed(2).unwrap().into());
        let m = maximize_grid(&p, &GridSearchConfig::default()).unwrap();
        assert_eq!(m.value, 0.0);
        // ties resolve to the lexicographically smallest setting
        assert_eq!(m.setting.angles(), &[0.0, 0.0]);
    }

    #[test]
    fn quadrature_examples() {
        let q = norm_squared_quadrature(&ghz_profile(3), 8).unwrap();
        assert!((q - 4.0 * PI.powi(3)).abs() <= 1e-9 * 4.0 * PI.powi(3));
        let p = antidiagonal_profile(&DensityMatrix::maximally_mixed(3).unwrap().into());
        assert_eq!(norm_squared_quadrature(&p, 8).unwrap(), 0.0);
        assert!(norm_squared_quadrature(&p, 4).is_err());
    }

    #[test]
    fn quadrature_is_deterministic() {
        let mut rng = rng_from_seed(2);
        let psi = PureState::random_haar(4, &mut rng).unwrap();
        let p = antidiagonal_profile(&psi.into());
        let a = norm_squared_quadrature(&p, 16).unwrap();
        let b = norm_squared_quadrature(&p, 16).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn ghz_cross_validation_passes() {
        for n in 2..=4 {
            let rep = cross_validate(
                &make_ghz(n).unwrap().into(),
                &ValidationConfig {
                    grid: Some(battery_grid(n)),
                    ..ValidationConfig::default()
                },
            )
            .unwrap();
            assert!(rep.passed, "{rep:?}");
            assert!(rep.closed_form_attainable);
            assert_eq!(rep.check("grid_attainability").unwrap().status, CheckStatus::Pass);
        }
    }

    #[test]
    fn sign_flip_is_caught() {
        // an imaginary coherence makes the sine term matter
        let psi = crate::states::parse_ket("|00> + (0+1i)|11>").unwrap().state;
        let cfg = ValidationConfig {
            grid: Some(battery_grid(2)),
            ..ValidationConfig::default()
        };
        let good = cross_validate(&psi.clone().into(), &cfg).unwrap();
        assert!(good.passed);
        let bad = cross_validate_with(&psi.into(), &cfg, &sign_flipped_model).unwrap();
        assert!(!bad.passed);
        assert_eq!(bad.check("trace_equivalence").unwrap().status, CheckStatus::Fail);
    }

    #[test]
    fn oracle_size_limit() {
        let s: State = make_ghz(7).unwrap().into();
        assert!(matches!(
            cross_validate(&s, &ValidationConfig::default()),
            Err(Error::TooManyQubits { .. })
        ));
    }
}
