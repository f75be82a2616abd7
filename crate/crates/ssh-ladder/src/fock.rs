//! Brute-force many-body reference for tiny instances.
//!
//! States live in the full 2^N occupation basis (N ≤ 14) with the
//! Jordan-Wigner sign convention: modes are ordered by [`ModeIndex`] and an
//! operator acting on mode m picks up `(-1)^{#occupied modes below m}`.
//! Everything here is exact and used to validate the Gaussian pipeline.

use crate::entanglement::{log_negativity_general, EdgeSelection, NumberDistribution};
use crate::gaussian::{CorrelationMatrix, ModeIndex};
use crate::linalg::{eigh, CMatrix};
use crate::model::{real_space_hamiltonian, LadderParams};
use crate::{Error, Result};
use nalgebra::DVector;
use num_complex::Complex64;

/// Hard cap keeping oracle runs under seconds.
pub const MAX_MODES: usize = 14;

/// A creation or annihilation operator on one mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FockOp {
    Create(ModeIndex),
    Annihilate(ModeIndex),
}

/// Amplitude vector over the 2^N occupation basis; bit m of the basis index
/// is the occupation of mode m.
#[derive(Debug, Clone)]
pub struct FockState {
    pub n_modes: usize,
    pub amps: Vec<Complex64>,
}

impl FockState {
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes > MAX_MODES {
            return Err(Error::TooLarge(n_modes));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_modes];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_modes, amps })
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &FockState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Apply one operator in place (ket convention).
    pub fn apply(&mut self, op: FockOp) {
        let (mode, create) = match op {
            FockOp::Create(m) => (m.0, true),
            FockOp::Annihilate(m) => (m.0, false),
        };
        let bit = 1usize << mode;
        let below = bit - 1;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (idx, &amp) in self.amps.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let occupied = idx & bit != 0;
            if create == occupied {
                continue; // Pauli blocked / nothing to annihilate
            }
            let sign = if (idx & below).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            out[idx ^ bit] += sign * amp;
        }
        self.amps = out;
    }

    /// Apply an operator string written left-to-right (rightmost acts first).
    pub fn apply_string(&self, ops: &[FockOp]) -> FockState {
        let mut st = self.clone();
        for &op in ops.iter().rev() {
            st.apply(op);
        }
        st
    }

    /// Zero every component in which any of the given modes is occupied.
    fn project_empty(&mut self, modes: &[ModeIndex]) {
        let mask: usize = modes.iter().map(|m| 1usize << m.0).sum();
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            if idx & mask != 0 {
                *amp = Complex64::new(0.0, 0.0);
            }
        }
    }
}

/// Exact expectation `<ψ| ops |ψ>` of an operator string.
pub fn fock_expectation(state: &FockState, ops: &[FockOp]) -> Complex64 {
    state.inner(&state.apply_string(ops))
}

fn sector_masks(n_modes: usize, n_particles: usize) -> Vec<usize> {
    (0..1usize << n_modes).filter(|m| m.count_ones() as usize == n_particles).collect()
}

/// Second-quantized `Σ h_ij c†_i c_j` restricted to the fixed-particle-number
/// sector spanned by `masks`.
fn sector_hamiltonian(h: &CMatrix, n_modes: usize, masks: &[usize]) -> CMatrix {
    let index_of = |m: usize| masks.binary_search(&m).expect("sector closed under hopping");
    let dim = masks.len();
    let mut hs = CMatrix::zeros(dim, dim);
    for (col, &m) in masks.iter().enumerate() {
        for j in 0..n_modes {
            if m & (1 << j) == 0 {
                continue;
            }
            let sign_j = if (m & ((1 << j) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            let m2 = m ^ (1 << j);
            for i in 0..n_modes {
                let hij = h[(i, j)];
                if hij == Complex64::new(0.0, 0.0) || m2 & (1 << i) != 0 {
                    continue;
                }
                let sign_i = if (m2 & ((1 << i) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                let m3 = m2 | (1 << i);
                hs[(index_of(m3), col)] += hij * sign_j * sign_i;
            }
        }
    }
    hs
}

/// Ground state of the ladder in the `n_particles` sector, by full
/// diagonalization.  The global phase is fixed by making the first nonzero
/// amplitude real positive.
pub fn fock_ground_state(params: &LadderParams, n_particles: usize) -> Result<FockState> {
    let h = real_space_hamiltonian(params);
    fock_ground_state_of(&h, n_particles)
}

/// Ground state of an arbitrary quadratic Hamiltonian in a fixed sector.
pub fn fock_ground_state_of(h: &CMatrix, n_particles: usize) -> Result<FockState> {
    let n_modes = h.nrows();
    if n_modes > MAX_MODES {
        return Err(Error::TooLarge(n_modes));
    }
    let masks = sector_masks(n_modes, n_particles);
    let hs = sector_hamiltonian(h, n_modes, &masks);
    // real Hamiltonians take the much faster real symmetric eigensolver
    let ground = if hs.iter().all(|e| e.im == 0.0) {
        let re = hs.map(|e| e.re);
        let eig = re.symmetric_eigen();
        let lowest = (0..eig.eigenvalues.len())
            .min_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap())
            .expect("nonempty sector");
        eig.eigenvectors.column(lowest).map(|x| Complex64::new(x, 0.0))
    } else {
        let (_, vecs) = eigh(&hs);
        vecs.column(0).clone_owned()
    };
    let phase = ground
        .iter()
        .find(|a| a.norm() > 1e-12)
        .map(|a| a / a.norm())
        .unwrap_or(Complex64::new(1.0, 0.0));
    let mut state = FockState::vacuum(n_modes)?;
    state.amps = vec![Complex64::new(0.0, 0.0); 1 << n_modes];
    for (row, &m) in masks.iter().enumerate() {
        state.amps[m] = ground[row] / phase;
    }
    Ok(state)
}

/// Exact propagation `e^{-iH't}|ψ>` within the particle-number sector that
/// supports `state`.
pub fn fock_evolve(state: &FockState, h_prime: &CMatrix, t: f64) -> Result<FockState> {
    let n_modes = state.n_modes;
    let n_particles = state
        .amps
        .iter()
        .enumerate()
        .find(|(_, a)| a.norm() > 1e-12)
        .map(|(m, _)| m.count_ones() as usize)
        .unwrap_or(0);
    let masks = sector_masks(n_modes, n_particles);
    let hs = sector_hamiltonian(h_prime, n_modes, &masks);
    let (vals, vecs) = eigh(&hs);
    let coeffs = DVector::from_iterator(masks.len(), masks.iter().map(|&m| state.amps[m]));
    let mut modal = vecs.adjoint() * coeffs;
    for (i, c) in modal.iter_mut().enumerate() {
        *c *= Complex64::cis(-vals[i] * t);
    }
    let evolved = vecs * modal;
    let mut out = state.clone();
    out.amps = vec![Complex64::new(0.0, 0.0); 1 << n_modes];
    for (row, &m) in masks.iter().enumerate() {
        out.amps[m] = evolved[row];
    }
    Ok(out)
}

/// Two-point function `C_ij = <c†_i c_j>` evaluated exactly.
pub fn fock_correlation_matrix(state: &FockState) -> CorrelationMatrix {
    let n = state.n_modes;
    let mut c = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            c[(i, j)] =
                fock_expectation(state, &[FockOp::Create(ModeIndex(i)), FockOp::Annihilate(ModeIndex(j))]);
        }
    }
    CorrelationMatrix::from_matrix(c)
}

/// Exact joint number distribution of the four edge modes.
pub fn fock_number_distribution(state: &FockState, sel: &EdgeSelection) -> NumberDistribution {
    let a_mask = (1usize << sel.a1.0) | (1 << sel.a2.0);
    let b_mask = (1usize << sel.b1.0) | (1 << sel.b2.0);
    let mut p = [[0.0; 3]; 3];
    for (idx, amp) in state.amps.iter().enumerate() {
        let n_a = (idx & a_mask).count_ones() as usize;
        let n_b = (idx & b_mask).count_ones() as usize;
        p[n_a][n_b] += amp.norm_sqr();
    }
    NumberDistribution { p }
}

/// Occupation patterns of a two-mode side with `n` particles, in qubit order
/// (`{m1}` before `{m2}` for n = 1).
fn side_patterns(m1: ModeIndex, m2: ModeIndex, n: usize) -> Vec<Vec<ModeIndex>> {
    match n {
        0 => vec![vec![]],
        1 => vec![vec![m1], vec![m2]],
        2 => vec![vec![m1, m2]],
        _ => unreachable!(),
    }
}

/// Normalized projected density matrix of one `(n_A, n_B)` sector together
/// with its weight, by exact partial trace.  Row/column index is
/// `a_pattern * (#B patterns) + b_pattern`; for (1,1) this reproduces the
/// `{A1B1, A1B2, A2B1, A2B2}` two-qubit ordering.
pub fn fock_sector_density_matrix(
    state: &FockState,
    sel: &EdgeSelection,
    n_a: usize,
    n_b: usize,
) -> (CMatrix, f64) {
    let modes = [sel.a1, sel.a2, sel.b1, sel.b2];
    let pats_a = side_patterns(sel.a1, sel.a2, n_a);
    let pats_b = side_patterns(sel.b1, sel.b2, n_b);
    let dim = pats_a.len() * pats_b.len();

    // Γ_p annihilates pattern p; ascending mode order with the rightmost
    // operator acting first, matching Γ_p = (c†_{m1} c†_{m2} …)†.
    let annihilate = |pat_a: &[ModeIndex], pat_b: &[ModeIndex]| -> FockState {
        let mut pattern: Vec<ModeIndex> = pat_a.iter().chain(pat_b).copied().collect();
        pattern.sort_by_key(|m| m.0);
        let ops: Vec<FockOp> = pattern.iter().rev().map(|&m| FockOp::Annihilate(m)).collect();
        let mut st = state.apply_string(&ops);
        st.project_empty(&modes);
        st
    };

    let mut branches = Vec::with_capacity(dim);
    for pa in &pats_a {
        for pb in &pats_b {
            branches.push(annihilate(pa, pb));
        }
    }
    let mut rho = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            // <ψ| Γ_c† Π_vac Γ_r |ψ> = <Γ_c Π_vac ψ | Γ_r Π_vac ψ>
            rho[(r, c)] = branches[c].inner(&branches[r]);
        }
    }
    let weight = rho.trace().re;
    if weight > 1e-14 {
        rho /= Complex64::new(weight, 0.0);
    }
    (rho, weight)
}

/// Literal sector-resolved operational entanglement: project the reduced
/// four-mode state onto every `(n_A, n_B)` sector, apply the logarithmic
/// negativity and sum `p · E`.
pub fn fock_operational_entanglement(state: &FockState, sel: &EdgeSelection) -> Result<f64> {
    if state.n_modes > MAX_MODES {
        return Err(Error::TooLarge(state.n_modes));
    }
    let mut total = 0.0;
    for n_a in 0..=2usize {
        for n_b in 0..=2usize {
            let (rho, weight) = fock_sector_density_matrix(state, sel, n_a, n_b);
            if weight <= 1e-14 {
                continue;
            }
            let d_a = side_patterns(sel.a1, sel.a2, n_a).len();
            let d_b = side_patterns(sel.b1, sel.b2, n_b).len();
            total += weight * log_negativity_general(&rho, d_a, d_b);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::ground_state_correlations;
    use crate::model::LadderParams;

    #[test]
    fn too_large_rejected() {
        let p = LadderParams::uniform(2, 4, 0.5, 0.1).unwrap(); // 16 modes
        assert!(matches!(fock_ground_state(&p, 8), Err(Error::TooLarge(16))));
    }

    #[test]
    fn single_dimer_bonding_state() {
        let delta = 0.3;
        let p = LadderParams::uniform(1, 1, delta, 0.0).unwrap();
        let st = fock_ground_state(&p, 1).unwrap();
        let h = real_space_hamiltonian(&p);
        let masks = sector_masks(2, 1);
        let hs = sector_hamiltonian(&h, 2, &masks);
        let (vals, _) = eigh(&hs);
        assert!((vals[0] + (1.0 - delta)).abs() < 1e-12);
        // bonding combination with equal weight and opposite sign
        let (a01, a10) = (st.amps[0b01], st.amps[0b10]);
        assert!((a01.norm_sqr() - 0.5).abs() < 1e-12);
        assert!((a01 + a10).norm() < 1e-12 || (a01 - a10).norm() < 1e-12);
        assert!((st.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn free_fermion_ground_energy_is_orbital_sum() {
        let p = LadderParams::uniform(1, 2, 0.5, 0.0).unwrap();
        let h = real_space_hamiltonian(&p);
        let (sp, _) = eigh(&h);
        let st = fock_ground_state(&p, 2).unwrap();
        let masks = sector_masks(4, 2);
        let hs = sector_hamiltonian(&h, 4, &masks);
        let (vals, _) = eigh(&hs);
        assert!((vals[0] - (sp[0] + sp[1])).abs() < 1e-12);
        assert!((st.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn number_operator_and_anticommutator() {
        let p = LadderParams::uniform(1, 2, 0.4, 0.0).unwrap();
        let st = fock_ground_state(&p, 2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                // <{c_i, c†_j}> = δ_ij on any normalized state
                let x = fock_expectation(
                    &st,
                    &[FockOp::Annihilate(ModeIndex(i)), FockOp::Create(ModeIndex(j))],
                ) + fock_expectation(
                    &st,
                    &[FockOp::Create(ModeIndex(j)), FockOp::Annihilate(ModeIndex(i))],
                );
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((x - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
        // a filled mode has unit occupation: total number = 2
        let n_tot: Complex64 = (0..4)
            .map(|i| {
                fock_expectation(&st, &[FockOp::Create(ModeIndex(i)), FockOp::Annihilate(ModeIndex(i))])
            })
            .sum();
        assert!((n_tot - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn correlations_match_gaussian_pipeline() {
        let p = LadderParams::new(2, 2, vec![0.7, -0.4], 0.5).unwrap();
        let st = fock_ground_state(&p, 4).unwrap();
        let exact = fock_correlation_matrix(&st);
        let gauss = ground_state_correlations(&real_space_hamiltonian(&p), 4);
        assert!((exact.matrix() - gauss.matrix()).norm() < 1e-10);
    }

    #[test]
    fn bell_like_four_mode_state() {
        // (A1†B1† + A2†B2†)|0>/√2 on 4 modes: p(1,1) = 1 and E_op = ln 2.
        let sel = EdgeSelection::new(ModeIndex(0), ModeIndex(1), ModeIndex(2), ModeIndex(3)).unwrap();
        let mut st = FockState::vacuum(4).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        st.amps[0] = Complex64::new(0.0, 0.0);
        st.amps[0b0101] = Complex64::new(s, 0.0); // A1, B1
        st.amps[0b1010] = Complex64::new(s, 0.0); // A2, B2
        let d = fock_number_distribution(&st, &sel);
        assert!((d.p[1][1] - 1.0).abs() < 1e-12);
        let eop = fock_operational_entanglement(&st, &sel).unwrap();
        assert!((eop - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn product_state_has_no_operational_entanglement() {
        let sel = EdgeSelection::new(ModeIndex(0), ModeIndex(1), ModeIndex(2), ModeIndex(3)).unwrap();
        // A1† (B1†+B2†)/√2 |0>
        let mut st = FockState::vacuum(4).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        st.amps[0] = Complex64::new(0.0, 0.0);
        st.amps[0b0101] = Complex64::new(s, 0.0);
        st.amps[0b1001] = Complex64::new(s, 0.0);
        let eop = fock_operational_entanglement(&st, &sel).unwrap();
        assert!(eop.abs() < 1e-10);
    }

    #[test]
    fn evolve_preserves_norm_and_energy() {
        let p = LadderParams::new(2, 2, vec![0.7, -0.4], 0.5).unwrap();
        let h = real_space_hamiltonian(&p);
        let st = fock_ground_state(&p, 4).unwrap();
        let mut hp = h.clone();
        hp[(0, 5)] += Complex64::new(0.0, -0.8);
        hp[(5, 0)] += Complex64::new(0.0, 0.8);
        let evolved = fock_evolve(&st, &hp, 3.7).unwrap();
        assert!((evolved.norm() - 1.0).abs() < 1e-10);
    }
}
