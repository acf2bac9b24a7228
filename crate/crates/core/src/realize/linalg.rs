//! Dense complex helpers. Matrices are vectorized column-major, matching
//! nalgebra's storage, so vec(X) is `X.as_slice()`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::genericity::{ClassSpec, EigenScalar};

pub type CMatrix = DMatrix<Complex64>;

/// Jordan matrix of a class: one block per part, eigenvalue on the diagonal
/// and ones on the superdiagonal.
pub fn jordan_matrix<S: EigenScalar>(spec: &ClassSpec<S>) -> CMatrix {
    let n = spec.size();
    let mut g = CMatrix::zeros(n, n);
    let mut at = 0;
    for (lambda, part) in spec.eigenvalues().iter().zip(spec.jnf().slots()) {
        let z = lambda.to_complex();
        for &b in part.parts() {
            for i in 0..b {
                g[(at + i, at + i)] = z;
                if i + 1 < b {
                    g[(at + i, at + i + 1)] = Complex64::new(1.0, 0.0);
                }
            }
            at += b;
        }
    }
    g
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for j in 0..ac {
        for i in 0..ar {
            let s = a[(i, j)];
            if s == Complex64::new(0.0, 0.0) {
                continue;
            }
            for l in 0..bc {
                for k in 0..br {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn vectorize(m: &CMatrix) -> DVector<Complex64> {
    DVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &[Complex64], n: usize) -> CMatrix {
    CMatrix::from_column_slice(n, n, v)
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rel_tol` times the largest.
pub fn numerical_rank(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > rel_tol * top).count(),
        _ => 0,
    }
}

/// Ratio of extreme singular values; infinite when singular.
pub fn condition_number(m: &CMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Right singular vectors spanning the numerical null space of `m`.
pub fn null_space(m: &CMatrix, rel_tol: f64) -> Vec<DVector<Complex64>> {
    let cols = m.ncols();
    // Pad to at least square so the SVD yields a full set of right vectors.
    let rows = m.nrows().max(cols);
    let mut padded = CMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), m.shape()).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right vectors");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    (0..cols)
        .filter(|&i| top == 0.0 || svd.singular_values[i] <= rel_tol * top)
        .map(|i| v_t.row(i).adjoint())
        .collect()
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Left-to-right product, identity for an empty list.
pub fn product(ms: &[CMatrix], n: usize) -> CMatrix {
    ms.iter().fold(identity(n), |acc, m| acc * m)
}
