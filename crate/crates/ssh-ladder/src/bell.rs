//! CHSH correlators, violation scans and the rotation-protocol fidelity
//! experiment, at zero and finite temperature.

use crate::entanglement::{fidelity, projected_density_matrix, EdgeSelection};
use crate::gaussian::{evolve, ladder_ground_state, thermal_correlations, CorrelationMatrix};
use crate::linalg::{kron, CMatrix};
use crate::model::{real_space_hamiltonian, LadderParams};
use crate::Result;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Measurement axis for a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

fn pauli(axis: PauliAxis) -> CMatrix {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match axis {
        PauliAxis::X => CMatrix::from_row_slice(2, 2, &[o, one, one, o]),
        PauliAxis::Y => CMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        PauliAxis::Z => CMatrix::from_row_slice(2, 2, &[one, o, o, -one]),
    }
}

/// Measurement direction in the x-z plane: `cosθ σ_z + sinθ σ_x`.
fn xz_observable(theta: f64) -> CMatrix {
    pauli(PauliAxis::Z) * Complex64::new(theta.cos(), 0.0)
        + pauli(PauliAxis::X) * Complex64::new(theta.sin(), 0.0)
}

/// The four CHSH measurement angles (x-z plane, radians).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshAngles {
    pub theta_a: f64,
    pub theta_a_prime: f64,
    pub theta_b: f64,
    pub theta_b_prime: f64,
}

impl ChshAngles {
    /// Single-parameter scan schedule: `θ_a = θ, θ_a' = 3θ, θ_b = 0,
    /// θ_b' = 2θ`.  On a maximally entangled pair this sweeps Σ up to the
    /// Tsirelson bound 2√2 at θ = π/4.
    pub fn scan_schedule(theta: f64) -> Self {
        Self { theta_a: theta, theta_a_prime: 3.0 * theta, theta_b: 0.0, theta_b_prime: 2.0 * theta }
    }
}

/// `tr(ρ σ_a ⊗ σ_b)` in the two-qubit edge basis.
pub fn pauli_correlator(rho: &CMatrix, axis_a: PauliAxis, axis_b: PauliAxis) -> f64 {
    assert_eq!(rho.nrows(), 4);
    (rho * kron(&pauli(axis_a), &pauli(axis_b))).trace().re
}

/// CHSH combination
/// `Σ = <a·σ b·σ> - <a'·σ b·σ> + <a·σ b'·σ> + <a'·σ b'·σ>`.
pub fn chsh_sigma(rho: &CMatrix, angles: &ChshAngles) -> f64 {
    assert_eq!(rho.nrows(), 4);
    let corr = |ta: f64, tb: f64| (rho * kron(&xz_observable(ta), &xz_observable(tb))).trace().re;
    corr(angles.theta_a, angles.theta_b) - corr(angles.theta_a_prime, angles.theta_b)
        + corr(angles.theta_a, angles.theta_b_prime)
        + corr(angles.theta_a_prime, angles.theta_b_prime)
}

/// Σ(θ) along [`ChshAngles::scan_schedule`] for the projected edge state of
/// `c`.  `None` marks an empty (1,1) sector.
pub fn chsh_scan(
    c: &CorrelationMatrix,
    sel: &EdgeSelection,
    thetas: &[f64],
) -> Vec<(f64, Option<f64>)> {
    match projected_density_matrix(c, sel) {
        Err(_) => thetas.iter().map(|&t| (t, None)).collect(),
        Ok(proj) => thetas
            .iter()
            .map(|&t| (t, Some(chsh_sigma(&proj.rho, &ChshAngles::scan_schedule(t)))))
            .collect(),
    }
}

/// CHSH scan on the grand-canonical (μ = 0) thermal state at inverse
/// temperature `beta`.
pub fn thermal_chsh(
    params: &LadderParams,
    sel: &EdgeSelection,
    beta: f64,
    thetas: &[f64],
) -> Vec<(f64, Option<f64>)> {
    let h = real_space_hamiltonian(params);
    let c = thermal_correlations(&h, beta);
    chsh_scan(&c, sel, thetas)
}

/// Fidelity traces of the rotation protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolResult {
    pub times: Vec<f64>,
    /// `F(ρ_AB^{1,1}, σ_AB^{1,1}(t))`.
    pub f1: Vec<f64>,
    /// `F((1⊗R) ρ_AB^{1,1} (1⊗R)†, σ_AB^{1,1}(t))`.
    pub f2: Vec<f64>,
}

/// π/2 rotation about y on one qubit: `R = exp(-i (π/4) σ_y)`.
fn quarter_rotation_y() -> CMatrix {
    let c = Complex64::new(std::f64::consts::FRAC_PI_4.cos(), 0.0);
    let s = Complex64::new(std::f64::consts::FRAC_PI_4.sin(), 0.0);
    CMatrix::from_row_slice(2, 2, &[c, -s, s, c])
}

/// Run the rotation protocol: evolve the full many-body ground state under
/// `H' = H + λ B1†B2 + λ* B2†B1` with `λ = -iκ`, re-project at every time and
/// compare with the static and rotated references through the fidelity.
pub fn rotation_protocol(
    params: &LadderParams,
    sel: &EdgeSelection,
    kappa: f64,
    times: &[f64],
) -> Result<ProtocolResult> {
    let h = real_space_hamiltonian(params);
    let c0 = ladder_ground_state(params);
    let rho_ref = projected_density_matrix(&c0, sel)?.rho;

    let lambda = Complex64::new(0.0, -kappa);
    let mut h_prime = h;
    h_prime[(sel.b1.0, sel.b2.0)] += lambda;
    h_prime[(sel.b2.0, sel.b1.0)] += lambda.conj();

    let id_r = kron(&CMatrix::identity(2, 2), &quarter_rotation_y());
    let rho_rot = &id_r * &rho_ref * id_r.adjoint();

    let points: Result<Vec<(f64, f64)>> = times
        .par_iter()
        .map(|&t| {
            let ct = evolve(&c0, &h_prime, t);
            let sigma = projected_density_matrix(&ct, sel)?.rho;
            Ok((fidelity(&rho_ref, &sigma)?, fidelity(&rho_rot, &sigma)?))
        })
        .collect();
    let points = points?;
    Ok(ProtocolResult {
        times: times.to_vec(),
        f1: points.iter().map(|p| p.0).collect(),
        f2: points.iter().map(|p| p.1).collect(),
    })
}

/// Evenly spaced time grid, `n` points on `[0, t_max]` inclusive.
pub fn time_grid(t_max: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect()
}

/// Evenly spaced θ grid, `n` points on `[min, max]` inclusive.
pub fn theta_grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![min];
    }
    (0..n).map(|i| min + (max - min) * i as f64 / (n - 1) as f64).collect()
}
