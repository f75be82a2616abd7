//! Small dense linear-algebra helpers shared by the physics modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Hermitian eigendecomposition with columns sorted by ascending eigenvalue.
///
/// Ties keep the eigensolver's output order (stable sort), which is the
/// canonical tie-break used for degenerate Fermi levels.
pub fn eigh(m: &CMatrix) -> (DVector<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vecs = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Apply a real scalar function to a Hermitian matrix through its spectrum.
pub fn hermitian_fn(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (vals, vecs) = eigh(m);
    let d = CMatrix::from_diagonal(&DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&e| Complex64::new(f(e), 0.0)),
    ));
    &vecs * d * vecs.adjoint()
}

/// Apply a complex scalar function of the (real) eigenvalues, e.g. `e^{iEt}`.
pub fn hermitian_fn_c(m: &CMatrix, f: impl Fn(f64) -> Complex64) -> CMatrix {
    let (vals, vecs) = eigh(m);
    let d = CMatrix::from_diagonal(&DVector::from_iterator(vals.len(), vals.iter().map(|&e| f(e))));
    &vecs * d * vecs.adjoint()
}

/// Square root of a Hermitian PSD matrix; tiny negative eigenvalues are
/// clamped to zero.
pub fn sqrtm_psd(m: &CMatrix) -> CMatrix {
    hermitian_fn(m, |e| e.max(0.0).sqrt())
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    (m - m.adjoint()).norm() < tol
}

/// Exact dyadic decomposition `x = mantissa * 2^exp` of a finite f64.
fn dyadic(x: f64) -> (i64, i64) {
    assert!(x.is_finite());
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    if raw_exp == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac | (1 << 52)), raw_exp - 1075)
    }
}

/// Sign of `det(X + Y)` computed exactly over the integers.
///
/// Every f64 is a dyadic rational, so `X + Y` is scaled entrywise to a common
/// power of two and the determinant sign follows from fraction-free (Bareiss)
/// elimination.  Used to resolve eigenvalue splittings that are real but far
/// below f64 resolution.  Returns -1, 0 or +1.
pub fn exact_det_sign_sum(x: &nalgebra::DMatrix<f64>, y: &nalgebra::DMatrix<f64>) -> i32 {
    use num_bigint::BigInt;
    assert_eq!(x.nrows(), x.ncols());
    assert_eq!(x.shape(), y.shape());
    let n = x.nrows();
    if n == 0 {
        return 1;
    }
    let mut min_exp = 0i64;
    for &v in x.iter().chain(y.iter()) {
        let (m, e) = dyadic(v);
        if m != 0 {
            min_exp = min_exp.min(e);
        }
    }
    let to_int = |v: f64| -> BigInt {
        let (m, e) = dyadic(v);
        if m == 0 {
            BigInt::from(0)
        } else {
            BigInt::from(m) << (e - min_exp) as u64
        }
    };
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| to_int(x[(i, j)]) + to_int(y[(i, j)])).collect())
        .collect();
    let zero = BigInt::from(0);
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k] == zero {
            match (k + 1..n).find(|&r| a[r][k] != zero) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact by the Bareiss identity
            }
            a[i][k] = zero.clone();
        }
        prev = a[k][k].clone();
    }
    use num_bigint::Sign;
    match a[n - 1][n - 1].sign() {
        Sign::Minus => -sign,
        Sign::NoSign => 0,
        Sign::Plus => sign,
    }
}
