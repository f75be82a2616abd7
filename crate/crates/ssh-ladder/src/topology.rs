//! Winding-number invariants of the chiral-symmetric ladder.
//!
//! Two independent numerical routes are provided: the Green's-function trace
//! formula ([`winding_green`]) and the projector-block winding
//! ([`winding_projector`]), plus the closed-form result for uniform
//! dimerization ([`winding_analytic`]).  The sign convention is pinned so
//! that a single chain (M = 1) with δ > 0 has I = +1.
//!
//! No eigenvector gauge fixing is needed anywhere: the projector `P(k)` and
//! `det q(k)` are gauge invariant, so implementations must not add
//! phase-matching between neighbouring k points.

use crate::linalg::{eigh, CMatrix};
use crate::model::{bloch_hamiltonian, chiral_unitary, LadderParams, SymmetryKind};
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default Brillouin-zone grid size.
pub const DEFAULT_NK: usize = 256;
/// Integer-rounding tolerance on the raw accumulator.
pub const ROUNDING_TOL: f64 = 1e-3;
/// Spectra with a gap at or below this are treated as gapless.
pub const GAP_TOL: f64 = 1e-8;

/// Outcome of a numerical winding-number evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantResult {
    /// Integer invariant.
    pub value: i64,
    /// Real-valued accumulator before rounding.
    pub raw: f64,
    /// |raw - value|.
    pub residual: f64,
    /// Minimum |E(k)| over the grid.
    pub gap: f64,
}

fn momentum_grid(n_k: usize) -> Vec<f64> {
    (0..n_k).map(|n| 2.0 * PI * n as f64 / n_k as f64).collect()
}

/// Minimum |eigenvalue of H(k)| over the k grid.
pub fn band_gap(params: &LadderParams, n_k: usize) -> f64 {
    momentum_grid(n_k)
        .into_iter()
        .map(|k| {
            let (vals, _) = eigh(&bloch_hamiltonian(params, k));
            vals.iter().fold(f64::INFINITY, |acc, e| acc.min(e.abs()))
        })
        .fold(f64::INFINITY, f64::min)
}

/// Winding number from the Green's-function trace formula.
///
/// Discretizes `I = (1/4πi) tr ∮ dk U_S g⁻¹(k) ∂_k g(k)` on the uniform grid
/// `k_n = 2πn/n_k`, with `∂_k g` by symmetric finite differences on the same
/// grid.
pub fn winding_green(params: &LadderParams, kind: SymmetryKind, n_k: usize) -> Result<InvariantResult> {
    let u = chiral_unitary(params, kind)?;
    let ks = momentum_grid(n_k);
    let mut hs = Vec::with_capacity(n_k);
    let mut gap = f64::INFINITY;
    for &k in &ks {
        let h = bloch_hamiltonian(params, k);
        let (vals, _) = eigh(&h);
        gap = vals.iter().fold(gap, |acc, e| acc.min(e.abs()));
        hs.push(h);
    }
    if gap <= GAP_TOL {
        return Err(Error::GaplessSpectrum { gap, tol: GAP_TOL });
    }
    let gs: Vec<CMatrix> = hs.iter().map(|h| h.clone().try_inverse().expect("gapped H(k)")).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..n_k {
        let next = &gs[(n + 1) % n_k];
        let prev = &gs[(n + n_k - 1) % n_k];
        sum += (&u * &hs[n] * (next - prev)).trace();
    }
    // I = sum / (8 π i)
    let raw = sum.im / (8.0 * PI);
    let value = raw.round() as i64;
    Ok(InvariantResult { value, raw, residual: (raw - value as f64).abs(), gap })
}

/// Basis change that puts the chiral unitary into `diag(1_M, -1_M)` form.
/// Identity for `S`; for `S2`/`S3` the +1 eigenvectors fill the first block.
fn chiral_basis(u: &CMatrix, kind: SymmetryKind) -> CMatrix {
    match kind {
        SymmetryKind::S => CMatrix::identity(u.nrows(), u.ncols()),
        _ => {
            let (vals, vecs) = eigh(u);
            let n = u.nrows();
            let mut w = CMatrix::zeros(n, n);
            let mut dst = 0;
            // +1 eigenvectors first, then -1.
            for pass in [1.0f64, -1.0] {
                for i in 0..n {
                    if (vals[i] - pass).abs() < 0.5 {
                        w.set_column(dst, &vecs.column(i));
                        dst += 1;
                    }
                }
            }
            assert_eq!(dst, n);
            w
        }
    }
}

/// Winding number from the projector block `q(k)`.
///
/// At each k the negative-energy projector gives `Q(k) = 1 - 2P(k)`; in the
/// basis where `U_S = diag(1, -1)` its upper-right block `q(k)` is unitary and
/// the invariant is the winding of `det q(k)`, accumulated as principal-branch
/// phase increments between consecutive grid points divided by -2π.
pub fn winding_projector(
    params: &LadderParams,
    kind: SymmetryKind,
    n_k: usize,
) -> Result<InvariantResult> {
    let u = chiral_unitary(params, kind)?;
    let w = chiral_basis(&u, kind);
    let m = params.m;
    let ks = momentum_grid(n_k);
    let mut gap = f64::INFINITY;
    let mut dets = Vec::with_capacity(n_k);
    for &k in &ks {
        let h = bloch_hamiltonian(params, k);
        let (vals, vecs) = eigh(&h);
        gap = vals.iter().fold(gap, |acc, e| acc.min(e.abs()));
        let mut p = CMatrix::zeros(2 * m, 2 * m);
        for i in 0..2 * m {
            if vals[i] < 0.0 {
                let v = vecs.column(i);
                p += &v * v.adjoint();
            }
        }
        let q_full = w.adjoint() * (CMatrix::identity(2 * m, 2 * m) - p * Complex64::new(2.0, 0.0)) * &w;
        let q = q_full.view((0, m), (m, m)).clone_owned();
        dets.push(q.determinant());
    }
    if gap <= GAP_TOL {
        return Err(Error::GaplessSpectrum { gap, tol: GAP_TOL });
    }
    let mut total = 0.0;
    for n in 0..n_k {
        let ratio = dets[(n + 1) % n_k] / dets[n];
        total += ratio.arg();
    }
    let raw = -total / (2.0 * PI);
    let value = raw.round() as i64;
    Ok(InvariantResult { value, raw, residual: (raw - value as f64).abs(), gap })
}

/// Closed-form invariant for uniform dimerization.
///
/// Valid when all δ_s are equal and `|z| cos(π/(M+1)) < |δ|`; returns `None`
/// (not applicable) otherwise.  When valid: 0 for δ < 0, and for δ > 0 it is
/// 1 for M odd, 0 for M even.
pub fn winding_analytic(params: &LadderParams) -> Option<i64> {
    let delta = params.deltas[0];
    if params.deltas.iter().any(|d| (d - delta).abs() > 1e-12) {
        return None;
    }
    let bound = params.z.abs() * (PI / (params.m as f64 + 1.0)).cos();
    if bound >= delta.abs() {
        return None;
    }
    if delta < 0.0 {
        Some(0)
    } else if params.m % 2 == 1 {
        Some(1)
    } else {
        Some(0)
    }
}

/// Parameter selected by a sweep axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParam {
    /// Set the listed legs (1-based) to the axis value; several legs may be
    /// tied together, e.g. δ1 = δ3.
    Delta(Vec<usize>),
    /// Interchain hopping.
    Z,
}

impl SweepParam {
    /// Parse `"z"`, `"delta2"` or tied legs like `"delta1_3"`.
    pub fn parse(name: &str) -> std::result::Result<Self, String> {
        if name == "z" {
            return Ok(SweepParam::Z);
        }
        if let Some(rest) = name.strip_prefix("delta") {
            let legs: std::result::Result<Vec<usize>, _> =
                rest.split('_').map(|p| p.parse::<usize>()).collect();
            match legs {
                Ok(legs) if !legs.is_empty() && legs.iter().all(|&s| s >= 1) => {
                    return Ok(SweepParam::Delta(legs))
                }
                _ => {}
            }
        }
        Err(format!("unknown sweep parameter '{name}' (expected 'z', 'deltaN' or 'deltaN_M')"))
    }

    pub fn name(&self) -> String {
        match self {
            SweepParam::Z => "z".into(),
            SweepParam::Delta(legs) => format!(
                "delta{}",
                legs.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("_")
            ),
        }
    }

    pub fn apply(&self, params: &mut LadderParams, value: f64) -> Result<()> {
        match self {
            SweepParam::Z => params.z = value,
            SweepParam::Delta(legs) => {
                for &s in legs {
                    if s == 0 || s > params.m {
                        return Err(Error::InvalidParams(format!(
                            "axis leg {s} out of range for M = {}",
                            params.m
                        )));
                    }
                    params.deltas[s - 1] = value;
                }
            }
        }
        Ok(())
    }
}

/// One swept axis: `steps` evenly spaced values on `[min, max]` inclusive
/// (`steps == 1` evaluates at `min`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl AxisSpec {
    pub fn new(param: SweepParam, min: f64, max: f64, steps: usize) -> Self {
        assert!(steps >= 1);
        Self { param, min, max, steps }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        (0..self.steps)
            .map(|i| self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

/// Row-major 2-D sweep result over two axes; `None` marks per-point failures
/// (gapless spectrum or invalid symmetry), never interpolated.
#[derive(Debug, Clone)]
pub struct PhaseGrid<T> {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    /// `values[i1 * axis2.steps + i2]` belongs to `(axis1[i1], axis2[i2])`.
    pub values: Vec<Option<T>>,
}

impl<T> PhaseGrid<T> {
    pub fn get(&self, i1: usize, i2: usize) -> &Option<T> {
        &self.values[i1 * self.axis2.steps + i2]
    }
}

/// Evaluate a closure over the 2-D parameter grid, in parallel.  Point order
/// in the output is row-major and independent of the worker count.
pub fn sweep_grid<T: Send>(
    template: &LadderParams,
    axis1: &AxisSpec,
    axis2: &AxisSpec,
    f: impl Fn(&LadderParams) -> Option<T> + Sync,
) -> PhaseGrid<T> {
    let v1 = axis1.values();
    let v2 = axis2.values();
    let values: Vec<Option<T>> = (0..v1.len() * v2.len())
        .into_par_iter()
        .map(|idx| {
            let (i1, i2) = (idx / v2.len(), idx % v2.len());
            let mut p = template.clone();
            axis1.param.apply(&mut p, v1[i1]).ok()?;
            axis2.param.apply(&mut p, v2[i2]).ok()?;
            f(&p)
        })
        .collect();
    PhaseGrid { axis1: axis1.clone(), axis2: axis2.clone(), values }
}

/// Phase diagram of the winding number over two swept parameters.
pub fn phase_grid(
    template: &LadderParams,
    kind: SymmetryKind,
    axis1: &AxisSpec,
    axis2: &AxisSpec,
    n_k: usize,
) -> PhaseGrid<InvariantResult> {
    sweep_grid(template, axis1, axis2, |p| winding_green(p, kind, n_k).ok())
}
