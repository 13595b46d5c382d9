//! Correlation functions restricted to the local x–y planes.
//!
//! Each qubit measures σ(α) = cos α σx + sin α σy. In the computational basis
//! σ(α₁) ⊗ … ⊗ σ(α_N) only couples a basis state to its bitwise complement,
//! so the correlation function depends on ρ only through the 2^(N−1)
//! antidiagonal elements
//!
//! ```text
//! ρ_k = ρ[0k₂…k_N][1,1−k₂,…,1−k_N]
//! E(α) = 2 Σ_k [cos θ_k · Re ρ_k − sin θ_k · Im ρ_k],   θ_k = α₁ + Σ_{j≥2} (−1)^{k_j} α_j
//! ```
//!
//! The sign convention above was checked against the direct operator trace
//! ([`correlation_value_trace`]), which stays available as the reference.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::{check_finite, qubit_bit, DensityMatrix, PureState, State, MAX_DENSE_QUBITS};

/// Largest modulus an antidiagonal entry of a valid state can have.
pub const ANTIDIAGONAL_MAX: f64 = 0.5;
const PROFILE_TOL: f64 = 1e-12;

/// The antidiagonal elements ρ_{0k⃗; 1¬k⃗}, indexed by k⃗ = (k₂…k_N) packed
/// with k₂ as the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct AntidiagonalProfile {
    n_qubits: usize,
    values: Vec<Complex64>,
}

impl AntidiagonalProfile {
    /// Accepts any finite values of modulus at most ½ (+1e−12).
    pub fn new(n_qubits: usize, values: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidQubitCount(0));
        }
        let len = 1usize << (n_qubits - 1);
        if values.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                actual: values.len(),
            });
        }
        check_finite(&values)?;
        if let Some(v) = values
            .iter()
            .find(|v| v.norm() > ANTIDIAGONAL_MAX + PROFILE_TOL)
        {
            return Err(Error::Inconsistent(format!(
                "antidiagonal modulus {} exceeds 1/2",
                v.norm()
            )));
        }
        Ok(Self { n_qubits, values })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    /// Profile of V ρ + (1 − V) 𝟙/2^N: white noise has no antidiagonal part.
    pub fn scaled(&self, visibility: f64) -> Self {
        Self {
            n_qubits: self.n_qubits,
            values: self.values.iter().map(|v| v * visibility).collect(),
        }
    }
}

/// Reads the antidiagonal of ρ. Pure states use ψ_{0k⃗}·conj(ψ_{1¬k⃗})
/// directly in O(2^N), so ρ is never formed.
pub fn antidiagonal_profile(state: &State) -> AntidiagonalProfile {
    match state {
        State::Pure(p) => profile_of_pure(p),
        State::Density(d) => profile_of_density(d),
    }
}

pub fn profile_of_pure(psi: &PureState) -> AntidiagonalProfile {
    let n = psi.n_qubits();
    let dim = psi.dim();
    let a = psi.amplitudes();
    let values = (0..dim / 2)
        .map(|k| a[k] * a[(dim - 1) ^ k].conj())
        .collect();
    AntidiagonalProfile {
        n_qubits: n,
        values,
    }
}

pub fn profile_of_density(rho: &DensityMatrix) -> AntidiagonalProfile {
    let dim = rho.dim();
    let values = (0..dim / 2).map(|k| rho.get(k, (dim - 1) ^ k)).collect();
    AntidiagonalProfile {
        n_qubits: rho.n_qubits(),
        values,
    }
}

/// Measurement angles (radians), one per qubit.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct AngleSetting(Vec<f64>);

impl AngleSetting {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if let Some(i) = angles.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self(angles))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every angle reduced to [0, 2π).
    pub fn wrapped(&self) -> Self {
        Self(self.0.iter().map(|a| a.rem_euclid(2.0 * PI)).collect())
    }
}

impl From<[f64; 2]> for AngleSetting {
    fn from(a: [f64; 2]) -> Self {
        Self(a.to_vec())
    }
}

fn check_setting(n: usize, setting: &AngleSetting) -> Result<()> {
    if setting.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: setting.len(),
        });
    }
    Ok(())
}

/// E(α) from the antidiagonal closed form.
pub fn correlation_value(profile: &AntidiagonalProfile, setting: &AngleSetting) -> Result<f64> {
    let n = profile.n_qubits;
    check_setting(n, setting)?;
    let a = setting.angles();
    let mut e = 0.0;
    for (k, v) in profile.values.iter().enumerate() {
        let theta = a[0]
            + (1..n)
                .map(|j| if (k >> (n - 1 - j)) & 1 == 0 { a[j] } else { -a[j] })
                .sum::<f64>();
        e += theta.cos() * v.re - theta.sin() * v.im;
    }
    Ok(2.0 * e)
}

/// Fast evaluation of E from per-qubit phases e^{iα_j}. The phase of every
/// antidiagonal term is built by repeated doubling, so one evaluation costs
/// 2^N complex multiplications and no trigonometry.
#[derive(Debug, Clone)]
pub struct PhaseEvaluator<'a> {
    values: &'a [Complex64],
    scratch: Vec<Complex64>,
}

impl<'a> PhaseEvaluator<'a> {
    pub fn new(profile: &'a AntidiagonalProfile) -> Self {
        Self {
            values: &profile.values,
            scratch: vec![Complex64::new(0.0, 0.0); profile.values.len()],
        }
    }

    /// `phases[j]` must be e^{iα_j}.
    pub fn eval(&mut self, phases: &[Complex64]) -> f64 {
        let w = &mut self.scratch;
        w[0] = phases[0];
        let mut len = 1;
        for z in &phases[1..] {
            for i in (0..len).rev() {
                let base = w[i];
                w[2 * i + 1] = base * z.conj();
                w[2 * i] = base * z;
            }
            len *= 2;
        }
        2.0 * self
            .values
            .iter()
            .zip(w.iter())
            .map(|(r, w)| r.re * w.re - r.im * w.im)
            .sum::<f64>()
    }

    pub fn eval_angles(&mut self, angles: &[f64]) -> f64 {
        let phases: Vec<Complex64> = angles.iter().map(|&a| Complex64::from_polar(1.0, a)).collect();
        self.eval(&phases)
    }
}

/// 2×2 matrix cos α·σx + sin α·σy, assembled from the Pauli matrices.
fn planar_pauli(alpha: f64) -> [[Complex64; 2]; 2] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let sx = [[zero, one], [one, zero]];
    let sy = [[zero, -i], [i, zero]];
    let (s, c) = alpha.sin_cos();
    let mut m = [[zero; 2]; 2];
    for r in 0..2 {
        for col in 0..2 {
            m[r][col] = sx[r][col] * c + sy[r][col] * s;
        }
    }
    m
}

/// Applies a 2×2 operator to qubit `q` (1-based) of a vector of length 2^n.
fn apply_single(v: &mut [Complex64], op: &[[Complex64; 2]; 2], q: usize, n: usize) {
    let stride = 1usize << (n - q);
    for base in 0..v.len() {
        if base & stride != 0 {
            continue;
        }
        let (a0, a1) = (v[base], v[base | stride]);
        v[base] = op[0][0] * a0 + op[0][1] * a1;
        v[base | stride] = op[1][0] * a0 + op[1][1] * a1;
    }
}

/// E(α) = Tr[ρ σ(α₁) ⊗ … ⊗ σ(α_N)] by direct operator application. Reference
/// path for cross-checking [`correlation_value`]; limited to 13 qubits.
pub fn correlation_value_trace(state: &State, setting: &AngleSetting) -> Result<f64> {
    let n = state.n_qubits();
    check_setting(n, setting)?;
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits {
            what: "direct trace",
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    let ops: Vec<_> = setting.angles().iter().map(|&a| planar_pauli(a)).collect();
    match state {
        State::Pure(psi) => {
            let mut phi = psi.amplitudes().to_vec();
            for (q, op) in ops.iter().enumerate() {
                apply_single(&mut phi, op, q + 1, n);
            }
            let ev: Complex64 = psi
                .amplitudes()
                .iter()
                .zip(&phi)
                .map(|(a, b)| a.conj() * b)
                .sum();
            Ok(ev.re)
        }
        State::Density(rho) => {
            // Tr(ρO) = Σ_r (ρO)[r][r]; row r of ρO is Oᵀ applied to row r of ρ
            let dim = rho.dim();
            let transposed: Vec<[[Complex64; 2]; 2]> = ops
                .iter()
                .map(|m| [[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
                .collect();
            let mut total = Complex64::new(0.0, 0.0);
            let mut row = vec![Complex64::new(0.0, 0.0); dim];
            for (r, src) in rho.rows().enumerate() {
                row.copy_from_slice(src);
                for (q, op) in transposed.iter().enumerate() {
                    apply_single(&mut row, op, q + 1, n);
                }
                total += row[r];
            }
            Ok(total.re)
        }
    }
}

/// Corner values T_{i₁…i_N} = E at α_j ∈ {0 (x), π/2 (y)}, packed big-endian
/// with x = 0 and y = 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationTensor {
    n_qubits: usize,
    components: Vec<f64>,
}

impl CorrelationTensor {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Component for a label like `"xyy"`.
    pub fn get(&self, label: &str) -> Option<f64> {
        if label.len() != self.n_qubits {
            return None;
        }
        let mut idx = 0;
        for c in label.chars() {
            idx = (idx << 1)
                | match c {
                    'x' => 0,
                    'y' => 1,
                    _ => return None,
                };
        }
        Some(self.components[idx])
    }

    pub fn label(&self, index: usize) -> String {
        (1..=self.n_qubits)
            .map(|q| if qubit_bit(index, q, self.n_qubits) == 0 { 'x' } else { 'y' })
            .collect()
    }

    pub fn nonzero_count(&self, tol: f64) -> usize {
        self.components.iter().filter(|t| t.abs() > tol).count()
    }

    /// Rebuilds E(α) = Σ_i T_i Π_j f_{i_j}(α_j), f_x = cos, f_y = sin.
    pub fn expand(&self, setting: &AngleSetting) -> Result<f64> {
        check_setting(self.n_qubits, setting)?;
        let sc: Vec<(f64, f64)> = setting.angles().iter().map(|a| a.sin_cos()).collect();
        Ok(self
            .components
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t * (1..=self.n_qubits)
                    .map(|q| {
                        let (s, c) = sc[q - 1];
                        if qubit_bit(i, q, self.n_qubits) == 0 {
                            c
                        } else {
                            s
                        }
                    })
                    .product::<f64>()
            })
            .sum())
    }
}

pub fn correlation_tensor(profile: &AntidiagonalProfile) -> CorrelationTensor {
    let n = profile.n_qubits;
    let mut eval = PhaseEvaluator::new(profile);
    // exact phases e^{i0} = 1, e^{iπ/2} = i keep zero components exactly zero
    let x = Complex64::new(1.0, 0.0);
    let y = Complex64::new(0.0, 1.0);
    let mut phases = vec![x; n];
    let components = (0..1usize << n)
        .map(|i| {
            for q in 1..=n {
                phases[q - 1] = if qubit_bit(i, q, n) == 0 { x } else { y };
            }
            eval.eval(&phases)
        })
        .collect();
    CorrelationTensor {
        n_qubits: n,
        components,
    }
}

/// 2 Σ|ρ_k|. An upper bound on E over all planar settings; it is the exact
/// maximum whenever [`closed_form_attainable`] holds (always for N ≤ 2).
pub fn e_max(profile: &AntidiagonalProfile) -> f64 {
    2.0 * profile.values.iter().map(|v| v.norm()).sum::<f64>()
}

/// ‖E‖² = 2 (2π)^N Σ|ρ_k|².
pub fn norm_squared_antidiagonal(profile: &AntidiagonalProfile) -> f64 {
    2.0 * (2.0 * PI).powi(profile.n_qubits as i32)
        * profile.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
}

/// ‖E‖² = π^N Σ T².
pub fn norm_squared_tensor(tensor: &CorrelationTensor) -> f64 {
    PI.powi(tensor.n_qubits as i32) * tensor.components.iter().map(|t| t * t).sum::<f64>()
}

/// Two-qubit maximizer: α₁ = −(Φ₀ + Φ₁)/2, α₂ = −(Φ₀ − Φ₁)/2 where Φ₀, Φ₁ are
/// the arguments of ρ_{00;11} and ρ_{01;10} (a vanishing element counts as
/// argument 0). At this setting E equals [`e_max`].
pub fn optimal_angles_two_qubit(profile: &AntidiagonalProfile) -> Result<AngleSetting> {
    if profile.n_qubits != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            actual: profile.n_qubits,
        });
    }
    if profile.is_zero() {
        return Err(Error::DegenerateProfile);
    }
    let arg = |z: Complex64| if z.norm() == 0.0 { 0.0 } else { z.arg() };
    let (p0, p1) = (arg(profile.values[0]), arg(profile.values[1]));
    AngleSetting::new(vec![-(p0 + p1) / 2.0, -(p0 - p1) / 2.0])
}

/// Entries at or below this modulus are ignored by the attainability test;
/// together they move E by at most 2^N·2e−9.
const SUPPORT_EPS: f64 = 1e-9;
const PHASE_TOL: f64 = 1e-6;

/// Whether some planar setting reaches 2Σ|ρ_k|, i.e. whether the phases
/// θ_k(α) ≡ −arg ρ_k (mod 2π) can hold for every nonzero ρ_k at once.
///
/// Relative to a reference element r the conditions read
/// ⟨k⊕r, δ⟩ ≡ arg ρ_r − arg ρ_k with free real δ ∈ R^(N−1), which is solvable
/// iff every integer relation n with nᵀX = 0 among the rows X = {k⊕r}
/// satisfies Σ n_k (arg ρ_r − arg ρ_k) ≡ 0 (mod 2π). The relations come from
/// an exact unimodular column reduction of Xᵀ.
pub fn closed_form_attainable(profile: &AntidiagonalProfile) -> bool {
    let support: Vec<usize> = (0..profile.values.len())
        .filter(|&k| profile.values[k].norm() > SUPPORT_EPS)
        .collect();
    if support.len() <= 1 {
        return true;
    }
    let cols = profile.n_qubits - 1;
    let r = support[0];
    let rest = &support[1..];
    let targets: Vec<f64> = rest
        .iter()
        .map(|&k| profile.values[r].arg() - profile.values[k].arg())
        .collect();
    // Xᵀ: cols × m, entry (j, i) = bit j of rest[i] ⊕ r
    let m = rest.len();
    let mut a: Vec<Vec<i64>> = (0..cols)
        .map(|j| {
            rest.iter()
                .map(|&k| (((k ^ r) >> (cols - 1 - j)) & 1) as i64)
                .collect()
        })
        .collect();
    let mut u: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|c| i64::from(i == c)).collect())
        .collect();
    let mut pivot = 0;
    for row in 0..cols {
        loop {
            // column (≥ pivot) with smallest nonzero |entry| in this row
            let Some(best) = (pivot..m)
                .filter(|&c| a[row][c] != 0)
                .min_by_key(|&c| a[row][c].abs())
            else {
                break;
            };
            let mut done = true;
            for c in pivot..m {
                if c != best && a[row][c] != 0 {
                    let q = a[row][c] / a[row][best];
                    column_axpy(&mut a, &mut u, c, best, q);
                    if a[row][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                swap_columns(&mut a, &mut u, pivot, best);
                pivot += 1;
                break;
            }
        }
    }
    // columns pivot..m of U span the integer relations
    (pivot..m).all(|c| {
        let s: f64 = (0..m).map(|i| u[i][c] as f64 * targets[i]).sum();
        let wrapped = s - (s / (2.0 * PI)).round() * 2.0 * PI;
        wrapped.abs() <= PHASE_TOL
    })
}

fn column_axpy(a: &mut [Vec<i64>], u: &mut [Vec<i64>], dst: usize, src: usize, q: i64) {
    for row in a.iter_mut() {
        row[dst] -= q * row[src];
    }
    for row in u.iter_mut() {
        row[dst] -= q * row[src];
    }
}

fn swap_columns(a: &mut [Vec<i64>], u: &mut [Vec<i64>], x: usize, y: usize) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        row.swap(x, y);
    }
}
