use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rotbell::correlation::{
    antidiagonal_profile, closed_form_attainable, correlation_tensor, correlation_value,
    correlation_value_trace, e_max, norm_squared_antidiagonal, norm_squared_tensor,
    optimal_angles_two_qubit, AngleSetting, AntidiagonalProfile,
};
use rotbell::states::{make_ghz, rng_from_seed, DensityMatrix, PureState, State};

#[test]
fn ghz_norm_closed_form() {
    for n in 1..=8 {
        let p = antidiagonal_profile(&make_ghz(n).unwrap().into());
        let want = 2.0 * (2.0 * PI).powi(n as i32) * 0.25;
        let got = norm_squared_antidiagonal(&p);
        assert!((got - want).abs() / want < 1e-14, "n={n}");
    }
}

#[test]
fn tensor_reconstructs_correlation_function() {
    let mut rng = rng_from_seed(3);
    let rho = DensityMatrix::random_mixed(3, 3, &mut rng).unwrap();
    let p = antidiagonal_profile(&rho.into());
    let t = correlation_tensor(&p);
    for s in [[0.1, 0.2, 0.3], [FRAC_PI_2, 0.0, -1.0], [2.0, 4.0, 6.0]] {
        let s = AngleSetting::new(s.to_vec()).unwrap();
        let a = t.expand(&s).unwrap();
        let b = correlation_value(&p, &s).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn corners_equal_tensor_entries() {
    let mut rng = rng_from_seed(4);
    let psi: State = PureState::random_haar(3, &mut rng).unwrap().into();
    let t = correlation_tensor(&antidiagonal_profile(&psi));
    for idx in 0..8 {
        let label = t.label(idx);
        let angles: Vec<f64> = label.chars().map(|ch| if ch == 'x' { 0.0 } else { FRAC_PI_2 }).collect();
        let direct = correlation_value_trace(&psi, &AngleSetting::new(angles).unwrap()).unwrap();
        assert!((direct - t.components()[idx]).abs() < 1e-14, "{label}");
    }
}

#[test]
fn two_qubit_optimum_reaches_e_max() {
    let mut rng = rng_from_seed(5);
    for _ in 0..20 {
        let rho = DensityMatrix::random_mixed(2, 2, &mut rng).unwrap();
        let p = antidiagonal_profile(&rho.into());
        let s = optimal_angles_two_qubit(&p).unwrap();
        assert!((correlation_value(&p, &s).unwrap() - e_max(&p)).abs() < 1e-14);
        assert!(closed_form_attainable(&p));
    }
}

#[test]
fn attainability_of_three_qubit_phases() {
    let c = |m: f64, ph: f64| Complex64::from_polar(m, ph);
    // phase pattern Φ = (0, 0, 0, π) cannot be cancelled by three angles
    let bad = AntidiagonalProfile::new(3, vec![c(0.1, 0.0), c(0.1, 0.0), c(0.1, 0.0), c(0.1, PI)]).unwrap();
    assert!(!closed_form_attainable(&bad));
    let ok = AntidiagonalProfile::new(3, vec![c(0.1, 0.3), c(0.1, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
    assert!(closed_form_attainable(&ok));
}

#[test]
fn dual_norms_on_random_states() {
    let mut rng = rng_from_seed(6);
    for n in 1..=6 {
        let psi = PureState::random_haar(n, &mut rng).unwrap();
        let p = antidiagonal_profile(&psi.into());
        let a = norm_squared_antidiagonal(&p);
        let b = norm_squared_tensor(&correlation_tensor(&p));
        assert!((a - b).abs() <= 1e-12 * a.max(1e-300));
    }
}

#[test]
fn profile_validation() {
    assert!(AntidiagonalProfile::new(3, vec![Complex64::new(0.0, 0.0); 3]).is_err());
    assert!(AntidiagonalProfile::new(1, vec![Complex64::new(0.6, 0.0)]).is_err());
    assert!(AntidiagonalProfile::new(1, vec![Complex64::new(f64::NAN, 0.0)]).is_err());
    assert!(AngleSetting::new(vec![f64::INFINITY]).is_err());
    let p = antidiagonal_profile(&make_ghz(3).unwrap().into());
    assert!(correlation_value(&p, &AngleSetting::zeros(2)).is_err());
}
