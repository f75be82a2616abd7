//! M-leg SSH ladder: parameters, basis ordering and Hamiltonians.
//!
//! Every matrix produced here is expressed in the *chiral ordering*, the
//! basis in which the chiral unitary is block diagonal `diag(1, -1)` and the
//! Bloch Hamiltonian is exactly off-block-diagonal.  See [`ChiralOrdering`]
//! for the documented index map.

use crate::linalg::CMatrix;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Boundary condition along the chain direction.  The transverse (interchain)
/// direction is always open: leg M is not coupled back to leg 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

/// Sublattice label inside a unit cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SiteType {
    A,
    B,
}

/// Full specification of an M-leg SSH ladder instance.
///
/// Intrachain hoppings alternate between `J(1 - δ_s)` and `J(1 + δ_s)` on
/// chain `s`; `z` couples same-type sites on adjacent legs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderParams {
    /// Number of legs (M ≥ 1).
    pub m: usize,
    /// Unit cells per chain (L ≥ 1).
    pub l: usize,
    /// Intrachain hopping scale; the phase diagrams all use J = 1.
    pub j: f64,
    /// One dimerization δ_s per leg.
    pub deltas: Vec<f64>,
    /// Interchain hopping.
    pub z: f64,
    pub boundary: Boundary,
}

impl LadderParams {
    /// Open-boundary ladder with J = 1.  `deltas` must have exactly `m`
    /// entries.  Values |δ_s| ≥ 1 are accepted (phase diagrams scan the open
    /// interval (-1, 1) but nothing breaks outside it).
    pub fn new(m: usize, l: usize, deltas: Vec<f64>, z: f64) -> Result<Self> {
        if m == 0 || l == 0 {
            return Err(Error::InvalidParams("M and L must be at least 1".into()));
        }
        if deltas.len() != m {
            return Err(Error::InvalidParams(format!(
                "expected {} dimerizations, got {}",
                m,
                deltas.len()
            )));
        }
        Ok(Self { m, l, j: 1.0, deltas, z, boundary: Boundary::Open })
    }

    /// Uniform dimerization on every leg.
    pub fn uniform(m: usize, l: usize, delta: f64, z: f64) -> Result<Self> {
        Self::new(m, l, vec![delta; m], z)
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_j(mut self, j: f64) -> Self {
        self.j = j;
        self
    }

    /// Total number of single-particle modes, 2ML.
    pub fn n_modes(&self) -> usize {
        2 * self.m * self.l
    }

    /// `x_s(k) = J[(1 - δ_s) + (1 + δ_s) e^{-ik}]` for leg `s` (1-based).
    pub fn x_of_k(&self, s: usize, k: f64) -> Complex64 {
        let d = self.deltas[s - 1];
        self.j * (Complex64::new(1.0 - d, 0.0) + (1.0 + d) * Complex64::cis(-k))
    }

    pub fn ordering(&self) -> ChiralOrdering {
        ChiralOrdering { m: self.m }
    }
}

/// Bijection between site labels `(type, chain s, cell j)` and basis indices.
///
/// Within a unit cell the 2M slots follow the appendix ordering that makes
/// the Bloch blocks off-diagonal:
///
/// - M odd:  `(a¹, b², a³, …, aᴹ | b¹, a², …, bᴹ)`
/// - M even: `(a¹, b², …, bᴹ | b¹, a², …, aᴹ)`
///
/// i.e. slot `s-1` holds the `a` site of leg `s` when `s` is odd and the `b`
/// site when `s` is even, and slot `M + s - 1` holds the other one.  The
/// real-space index is `(j - 1)·2M + slot` with cells `j = 1..=L`, so the
/// momentum-space and real-space orderings agree cell by cell.
#[derive(Debug, Clone, Copy)]
pub struct ChiralOrdering {
    m: usize,
}

impl ChiralOrdering {
    /// Slot of `(site, chain s)` within a unit cell; `s` is 1-based.
    pub fn cell_slot(&self, site: SiteType, s: usize) -> usize {
        assert!((1..=self.m).contains(&s), "chain index out of range");
        let first_block = match site {
            SiteType::A => s % 2 == 1,
            SiteType::B => s % 2 == 0,
        };
        if first_block {
            s - 1
        } else {
            self.m + s - 1
        }
    }

    /// Real-space index of `(site, chain s, cell j)`; `s` and `j` are 1-based.
    pub fn site_index(&self, site: SiteType, s: usize, j: usize) -> usize {
        (j - 1) * 2 * self.m + self.cell_slot(site, s)
    }

    /// Inverse of [`site_index`](Self::site_index): returns `(site, s, j)`.
    pub fn site_label(&self, index: usize) -> (SiteType, usize, usize) {
        let j = index / (2 * self.m) + 1;
        let slot = index % (2 * self.m);
        let (block, pos) = if slot < self.m { (0, slot) } else { (1, slot - self.m) };
        let s = pos + 1;
        let site = match (block, s % 2) {
            (0, 1) | (1, 0) => SiteType::A,
            _ => SiteType::B,
        };
        (site, s, j)
    }
}

/// Selects which chiral symmetry the invariant is computed against.
///
/// `S` exists for every parameter set.  `S2` needs M = 2 with δ₁ = δ₂ and
/// `S3` needs M = 3 with δ₁ = δ₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryKind {
    #[default]
    S,
    S2,
    S3,
}

impl SymmetryKind {
    pub fn validate(&self, params: &LadderParams) -> Result<()> {
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        match self {
            SymmetryKind::S => Ok(()),
            SymmetryKind::S2 => {
                if params.m == 2 && close(params.deltas[0], params.deltas[1]) {
                    Ok(())
                } else {
                    Err(Error::InvalidSymmetry("S2 requires M = 2 and δ1 = δ2".into()))
                }
            }
            SymmetryKind::S3 => {
                if params.m == 3 && close(params.deltas[0], params.deltas[2]) {
                    Ok(())
                } else {
                    Err(Error::InvalidSymmetry("S3 requires M = 3 and δ1 = δ3".into()))
                }
            }
        }
    }
}

/// Bloch Hamiltonian `H(k)` in the chiral ordering: `[[0, D(k)], [D†(k), 0]]`
/// with `D(k)` tridiagonal, diagonal `x_s(k)` for odd legs, `x_s*(k)` for even
/// legs, and off-diagonal `z`.
pub fn bloch_hamiltonian(params: &LadderParams, k: f64) -> CMatrix {
    let m = params.m;
    let mut d = CMatrix::zeros(m, m);
    for s in 1..=m {
        let x = params.x_of_k(s, k);
        d[(s - 1, s - 1)] = if s % 2 == 1 { x } else { x.conj() };
        if s < m {
            d[(s - 1, s)] = Complex64::new(params.z, 0.0);
            d[(s, s - 1)] = Complex64::new(params.z, 0.0);
        }
    }
    let mut h = CMatrix::zeros(2 * m, 2 * m);
    h.view_mut((0, m), (m, m)).copy_from(&d);
    h.view_mut((m, 0), (m, m)).copy_from(&d.adjoint());
    h
}

/// Real-space single-particle hopping matrix `h` with `H = Σ c† h c`, in the
/// chiral ordering of [`ChiralOrdering::site_index`].
///
/// Open boundaries omit the `(1 + δ_s)` bond from cell L back to cell 1; the
/// transverse direction is always open.
pub fn real_space_hamiltonian(params: &LadderParams) -> CMatrix {
    let ord = params.ordering();
    let n = params.n_modes();
    let mut h = CMatrix::zeros(n, n);
    let mut add = |i: usize, jx: usize, t: f64| {
        h[(i, jx)] += Complex64::new(t, 0.0);
        h[(jx, i)] += Complex64::new(t, 0.0);
    };
    for s in 1..=params.m {
        let d = params.deltas[s - 1];
        for j in 1..=params.l {
            // intrachain a_j - b_j
            add(
                ord.site_index(SiteType::A, s, j),
                ord.site_index(SiteType::B, s, j),
                params.j * (1.0 - d),
            );
            // intrachain b_j - a_{j+1}
            if j < params.l {
                add(
                    ord.site_index(SiteType::B, s, j),
                    ord.site_index(SiteType::A, s, j + 1),
                    params.j * (1.0 + d),
                );
            } else if params.boundary == Boundary::Periodic {
                add(
                    ord.site_index(SiteType::B, s, params.l),
                    ord.site_index(SiteType::A, s, 1),
                    params.j * (1.0 + d),
                );
            }
            // interchain couplings, open in the transverse direction
            if s < params.m {
                add(
                    ord.site_index(SiteType::A, s, j),
                    ord.site_index(SiteType::A, s + 1, j),
                    params.z,
                );
                add(
                    ord.site_index(SiteType::B, s, j),
                    ord.site_index(SiteType::B, s + 1, j),
                    params.z,
                );
            }
        }
    }
    h
}

/// Mode pairs swapped by the longitudinal reflection `a_j^s <-> b_{L+1-j}^s`.
///
/// The reflection commutes with [`real_space_hamiltonian`] for every
/// parameter set and either boundary, because both bond patterns are mirror
/// symmetric.  Each of the ML pairs appears once, `(lower index, partner)`;
/// there are no fixed points since the reflection always flips the sublattice.
pub fn reflection_pairs(params: &LadderParams) -> Vec<(usize, usize)> {
    let ord = params.ordering();
    let mut pairs = Vec::with_capacity(params.m * params.l);
    for s in 1..=params.m {
        for j in 1..=params.l {
            let i = ord.site_index(SiteType::A, s, j);
            let p = ord.site_index(SiteType::B, s, params.l + 1 - j);
            pairs.push((i.min(p), i.max(p)));
        }
    }
    pairs
}

/// The 2M x 2M chiral unitary in the chiral-ordering basis.
///
/// For `S` this is `diag(1_M, -1_M)`; `S2` and `S3` return the explicit
/// constant matrices valid under their parameter constraints.  Every returned
/// `U` is Hermitian, traceless, squares to the identity and anticommutes with
/// `H(k)` for all k.
pub fn chiral_unitary(params: &LadderParams, kind: SymmetryKind) -> Result<CMatrix> {
    kind.validate(params)?;
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match kind {
        SymmetryKind::S => {
            let m = params.m;
            let mut u = CMatrix::zeros(2 * m, 2 * m);
            for p in 0..m {
                u[(p, p)] = one;
                u[(m + p, m + p)] = -one;
            }
            Ok(u)
        }
        SymmetryKind::S2 => Ok(CMatrix::from_row_slice(
            4,
            4,
            &[
                o, o, o, i, //
                o, o, i, o, //
                o, -i, o, o, //
                -i, o, o, o,
            ],
        )),
        SymmetryKind::S3 => Ok(CMatrix::from_row_slice(
            6,
            6,
            &[
                o, o, one, o, o, o, //
                o, one, o, o, o, o, //
                one, o, o, o, o, o, //
                o, o, o, o, o, -one, //
                o, o, o, o, -one, o, //
                o, o, o, -one, o, o,
            ],
        )),
    }
}
