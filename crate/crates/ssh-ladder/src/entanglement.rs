//! Number-resolved quantities on the 2+2-mode edge subsystem.
//!
//! Alice holds modes `A1, A2` and Bob `B1, B2`.  Projecting onto one
//! particle per side yields a two-qubit state `ρ_AB^{1,1}`; the encoding is
//! qubit `|0⟩ ↔` particle in `A1` (resp. `B1`) and `|1⟩ ↔ A2` (`B2`), so the
//! four-dimensional basis is ordered `{A1B1, A1B2, A2B1, A2B2}` and
//! `σ_z^A = A1†A1 - A2†A2`.  All entropies and negativities are in nats.

use crate::gaussian::{wick_expectation, CorrelationMatrix, ModeIndex};
use crate::linalg::{eigh, sqrtm_psd, CMatrix};
use crate::model::{LadderParams, SiteType};
use crate::{Error, Result};
use num_complex::Complex64;

/// Weights below this count as an empty (1,1) sector.
pub const SECTOR_TOL: f64 = 1e-12;

/// Roundoff clamp: values in (-1e-10, 0) are treated as 0; anything below
/// -1e-6 is a genuine bug, not roundoff.
fn clamp_nonneg(x: f64) -> f64 {
    assert!(x > -1e-6, "negative value {x} beyond roundoff tolerance");
    x.max(0.0)
}

/// The four edge modes controlled by Alice (`a1`, `a2`) and Bob (`b1`, `b2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSelection {
    pub a1: ModeIndex,
    pub a2: ModeIndex,
    pub b1: ModeIndex,
    pub b2: ModeIndex,
}

impl EdgeSelection {
    pub fn new(a1: ModeIndex, a2: ModeIndex, b1: ModeIndex, b2: ModeIndex) -> Result<Self> {
        let ids = [a1.0, a2.0, b1.0, b2.0];
        for i in 0..4 {
            for j in i + 1..4 {
                if ids[i] == ids[j] {
                    return Err(Error::InvalidParams("edge modes must be distinct".into()));
                }
            }
        }
        Ok(Self { a1, a2, b1, b2 })
    }

    /// The default edge-mode choice for strong dimerization:
    /// `A1 = a_1^1`, `A2 = a_1^3`, `B1 = b_L^1`, `B2 = b_L^3`.
    pub fn edge_default(params: &LadderParams) -> Result<Self> {
        if params.m < 3 {
            return Err(Error::InvalidParams(
                "default edge selection needs at least 3 legs".into(),
            ));
        }
        Self::new(
            ModeIndex::new(params, SiteType::A, 1, 1),
            ModeIndex::new(params, SiteType::A, 3, 1),
            ModeIndex::new(params, SiteType::B, 1, params.l),
            ModeIndex::new(params, SiteType::B, 3, params.l),
        )
    }

    fn modes(&self) -> [ModeIndex; 4] {
        [self.a1, self.a2, self.b1, self.b2]
    }
}

/// Joint probability table `p(n_A, n_B)` over local particle numbers 0..=2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberDistribution {
    /// `p[n_a][n_b]`.
    pub p: [[f64; 3]; 3],
}

impl NumberDistribution {
    pub fn total(&self) -> f64 {
        self.p.iter().flatten().sum()
    }
}

/// `p(n_A, n_B)` for the 2+2 edge modes, from principal-minor Wick
/// determinants via inclusion-exclusion over the occupation patterns.
pub fn joint_number_distribution(c: &CorrelationMatrix, sel: &EdgeSelection) -> NumberDistribution {
    let modes = sel.modes();
    let mut p = [[0.0; 3]; 3];
    for pattern in 0u32..16 {
        let occupied: Vec<usize> = (0..4).filter(|&b| pattern & (1 << b) != 0).collect();
        let empty: Vec<usize> = (0..4).filter(|&b| pattern & (1 << b) == 0).collect();
        // <Π_O n Π_E (1-n)> = Σ_{T ⊆ E} (-1)^|T| <Π_{O∪T} n>
        let mut prob = 0.0;
        for t in 0u32..(1 << empty.len()) {
            let mut set: Vec<ModeIndex> = occupied.iter().map(|&b| modes[b]).collect();
            let mut sign = 1.0;
            for (bit, &b) in empty.iter().enumerate() {
                if t & (1 << bit) != 0 {
                    set.push(modes[b]);
                    sign = -sign;
                }
            }
            prob += sign * wick_expectation(c, &set, &set).re;
        }
        let n_a = occupied.iter().filter(|&&b| b < 2).count();
        let n_b = occupied.len() - n_a;
        p[n_a][n_b] += clamp_nonneg(prob);
    }
    let dist = NumberDistribution { p };
    debug_assert!((dist.total() - 1.0).abs() < 1e-8, "probabilities sum to {}", dist.total());
    dist
}

/// Shannon entropy `-Σ p ln p` of the joint number distribution, in nats.
/// Bounded by ln 9 for 2+2 modes.
pub fn number_entropy(dist: &NumberDistribution) -> f64 {
    let mut e = 0.0;
    for row in &dist.p {
        for &p in row {
            let p = clamp_nonneg(p);
            if p > 0.0 {
                e -= p * p.ln();
            }
        }
    }
    e
}

/// Normalized two-qubit density matrix of the (1,1) sector together with the
/// sector weight `p(1,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedDensityMatrix {
    /// 4x4, basis `{A1B1, A1B2, A2B1, A2B2}`.
    pub rho: CMatrix,
    /// `p(1,1)`.
    pub weight: f64,
}

/// One projector-sandwiched bilinear, expanded into Wick monomials.
///
/// `P (c†_x c_y) P` with `P = n_1 + n_2 - 2 n_1 n_2` reduces to `c†_x c_y`
/// for `x ≠ y` and to `n_x - n_1 n_2` for `x = y`; each monomial is a list of
/// (creator, annihilator) pairs over distinct modes.
fn projected_bilinear(
    modes: (ModeIndex, ModeIndex),
    x: ModeIndex,
    y: ModeIndex,
) -> Vec<(f64, Vec<(ModeIndex, ModeIndex)>)> {
    if x == y {
        vec![(1.0, vec![(x, x)]), (-1.0, vec![(modes.0, modes.0), (modes.1, modes.1)])]
    } else {
        vec![(1.0, vec![(x, y)])]
    }
}

/// Build `ρ_AB^{1,1}` from Wick-evaluated correlators.
///
/// Element `(i i' | j j')` is `<A_j† B_j'† B_i' A_i>` in the projected state,
/// assembled by expanding `P^A P^B … P^B P^A` into determinant monomials and
/// dividing by `<P^A P^B> = p(1,1)`.
pub fn projected_density_matrix(
    c: &CorrelationMatrix,
    sel: &EdgeSelection,
) -> Result<ProjectedDensityMatrix> {
    let dist = joint_number_distribution(c, sel);
    let weight = dist.p[1][1];
    if weight <= SECTOR_TOL {
        return Err(Error::EmptySector(weight));
    }
    let a = (sel.a1, sel.a2);
    let b = (sel.b1, sel.b2);
    let a_mode = |q: usize| if q == 0 { sel.a1 } else { sel.a2 };
    let b_mode = |q: usize| if q == 0 { sel.b1 } else { sel.b2 };

    let mut rho = CMatrix::zeros(4, 4);
    for row in 0..4 {
        let (ra, rb) = (row / 2, row % 2);
        for col in 0..4 {
            let (ca, cb) = (col / 2, col % 2);
            // creator from the column (bra side of the operator), annihilator
            // from the row: ρ[r][c] = <c_A† c_B† applied per (ca, cb) … (ra, rb)>
            let terms_a = projected_bilinear(a, a_mode(ca), a_mode(ra));
            let terms_b = projected_bilinear(b, b_mode(cb), b_mode(rb));
            let mut elem = Complex64::new(0.0, 0.0);
            for (wa, pa) in &terms_a {
                for (wb, pb) in &terms_b {
                    let mut creators: Vec<ModeIndex> = pa.iter().map(|t| t.0).collect();
                    let mut annihilators: Vec<ModeIndex> = pa.iter().map(|t| t.1).collect();
                    creators.extend(pb.iter().map(|t| t.0));
                    annihilators.extend(pb.iter().map(|t| t.1));
                    elem += wa * wb * wick_expectation(c, &creators, &annihilators);
                }
            }
            rho[(row, col)] = elem / weight;
        }
    }
    debug_assert!((rho.trace().re - 1.0).abs() < 1e-8);
    debug_assert!(crate::linalg::is_hermitian(&rho, 1e-8));
    Ok(ProjectedDensityMatrix { rho, weight })
}

/// Partial transpose over subsystem A of a `dA*dB` square matrix.
pub(crate) fn partial_transpose_a(rho: &CMatrix, d_a: usize, d_b: usize) -> CMatrix {
    assert_eq!(rho.nrows(), d_a * d_b);
    CMatrix::from_fn(d_a * d_b, d_a * d_b, |r, c| {
        let (ra, rb) = (r / d_b, r % d_b);
        let (ca, cb) = (c / d_b, c % d_b);
        rho[(ca * d_b + rb, ra * d_b + cb)]
    })
}

pub(crate) fn log_negativity_general(rho: &CMatrix, d_a: usize, d_b: usize) -> f64 {
    let pt = partial_transpose_a(rho, d_a, d_b);
    let (vals, _) = eigh(&pt);
    let trace_norm: f64 = vals.iter().map(|e| e.abs()).sum();
    trace_norm.max(1.0).ln()
}

/// Logarithmic negativity `ln ‖ρ^{T_A}‖₁` of a two-qubit density matrix.
pub fn log_negativity(rho: &CMatrix) -> f64 {
    assert_eq!(rho.nrows(), 4);
    log_negativity_general(rho, 2, 2)
}

/// Wootters concurrence of a two-qubit density matrix:
/// `C = max{0, λ1 - λ2 - λ3 - λ4}` with `λ_i` the decreasing square roots of
/// the eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn concurrence(rho: &CMatrix) -> f64 {
    assert_eq!(rho.nrows(), 4);
    let i = Complex64::new(0.0, 1.0);
    let o = Complex64::new(0.0, 0.0);
    let sy = CMatrix::from_row_slice(2, 2, &[o, -i, i, o]);
    let syy = crate::linalg::kron(&sy, &sy);
    let rho_tilde = &syy * rho.map(|e| e.conj()) * &syy;
    // eigenvalues of ρρ̃ through the Hermitian form √ρ ρ̃ √ρ
    let sqrt_rho = sqrtm_psd(rho);
    let (vals, _) = eigh(&(&sqrt_rho * rho_tilde * &sqrt_rho));
    let mut lambdas: Vec<f64> = vals.iter().map(|&e| clamp_nonneg(e).sqrt()).collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Entanglement of formation of a two-qubit density matrix, in nats.
pub fn entanglement_of_formation(rho: &CMatrix) -> f64 {
    let c = concurrence(rho);
    let x = 0.5 + 0.5 * (1.0 - c * c).max(0.0).sqrt();
    binary_entropy(x)
}

fn binary_entropy(x: f64) -> f64 {
    let mut e = 0.0;
    for p in [x, 1.0 - x] {
        let p = clamp_nonneg(p);
        if p > 0.0 {
            e -= p * p.ln();
        }
    }
    e
}

/// Which mixed-state measure weights the (1,1) sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglementMeasure {
    Negativity,
    Formation,
}

/// Operational entanglement `E_op = p(1,1) · E[ρ_AB^{1,1}]`.
///
/// For two 2-mode subsystems every other occupation sector is locally fixed
/// and carries no entanglement after projection, so the (1,1) term is the
/// full sector sum; the Fock oracle asserts this reduction rather than
/// assuming it.  An empty sector contributes 0.
pub fn operational_entanglement(
    c: &CorrelationMatrix,
    sel: &EdgeSelection,
    measure: EntanglementMeasure,
) -> f64 {
    match projected_density_matrix(c, sel) {
        Err(Error::EmptySector(_)) => 0.0,
        Err(e) => panic!("unexpected error: {e}"),
        Ok(proj) => {
            let e = match measure {
                EntanglementMeasure::Negativity => log_negativity(&proj.rho),
                EntanglementMeasure::Formation => entanglement_of_formation(&proj.rho),
            };
            proj.weight * e
        }
    }
}

/// Uhlmann fidelity `F(ρ, σ) = [tr √(√σ ρ √σ)]²`, clamped to [0, 1].
pub fn fidelity(rho: &CMatrix, sigma: &CMatrix) -> Result<f64> {
    if rho.nrows() != sigma.nrows() || rho.ncols() != sigma.ncols() {
        return Err(Error::DimensionMismatch(rho.nrows(), sigma.nrows()));
    }
    let sqrt_sigma = sqrtm_psd(sigma);
    let inner = &sqrt_sigma * rho * &sqrt_sigma;
    let (vals, _) = eigh(&inner);
    let tr: f64 = vals.iter().map(|&e| clamp_nonneg(e).sqrt()).sum();
    Ok((tr * tr).clamp(0.0, 1.0))
}
