//! Dense complex linear algebra used by every measure.

use nalgebra::linalg::SymmetricEigen;

use crate::{CMatrix, CVector, Error, Result, C64};

/// Eigenvalues in `[-CLIP_TOL, 0)` are treated as floating-point drift.
pub const CLIP_TOL: f64 = 1e-9;
/// Tolerance for the Hermitian check on inputs.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Largest elementwise deviation `|m_ij - conj(m_ji)|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && hermiticity_defect(m) <= tol
}

/// Average `m` with its adjoint so the eigensolver sees an exactly Hermitian matrix.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMatrix,
}

pub fn eigh(m: &CMatrix) -> HermitianEigen {
    let n = m.nrows();
    if n == 0 {
        return HermitianEigen { values: Vec::new(), vectors: CMatrix::zeros(0, 0) };
    }
    if n == 1 {
        return HermitianEigen { values: vec![m[(0, 0)].re], vectors: CMatrix::from_element(1, 1, C64::new(1.0, 0.0)) };
    }
    let eig = SymmetricEigen::new(hermitize(m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    HermitianEigen { values, vectors }
}

/// Eigenvalues only, descending.
pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    match m.nrows() {
        0 => Vec::new(),
        1 => vec![m[(0, 0)].re],
        2 => {
            // closed form keeps the hot paths of the optimizers cheap
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
            let mean = 0.5 * (a + d);
            let half = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
            vec![mean + half, mean - half]
        }
        _ => {
            let mut v: Vec<f64> = SymmetricEigen::new(hermitize(m)).eigenvalues.iter().copied().collect();
            v.sort_by(|a, b| b.total_cmp(a));
            v
        }
    }
}

/// Clip eigenvalues in `[-CLIP_TOL, 0)` to zero; anything lower is an error.
pub fn clip_spectrum(values: &mut [f64]) -> Result<()> {
    for v in values.iter_mut() {
        if *v < -CLIP_TOL {
            return Err(Error::Numerical(format!(
                "eigenvalue {v:e} below -{CLIP_TOL:e}: matrix is not positive semidefinite"
            )));
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(())
}

/// Principal square root of a Hermitian positive semidefinite matrix.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::dims("psd_sqrt needs a square matrix"));
    }
    let defect = hermiticity_defect(m);
    if defect > HERMITIAN_TOL {
        return Err(Error::arg(format!("psd_sqrt input is not Hermitian (defect {defect:e})")));
    }
    let mut eig = eigh(m);
    clip_spectrum(&mut eig.values)?;
    let roots: Vec<f64> = eig.values.iter().map(|v| v.sqrt()).collect();
    Ok(spectral_map(&eig.vectors, &roots))
}

/// `V diag(values) V†`.
pub fn spectral_map(vectors: &CMatrix, values: &[f64]) -> CMatrix {
    let mut scaled = vectors.clone();
    for (k, &w) in values.iter().enumerate() {
        scaled.column_mut(k).scale_mut(w);
    }
    scaled * vectors.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().sum()
}

/// `tr(A B)` without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// `tr(ρ²)` for Hermitian `ρ`, i.e. the squared Frobenius norm.
pub fn hermitian_square_trace(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Max elementwise `|a - b|`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest deviation of `m† m` from the identity.
pub fn isometry_defect(m: &CMatrix) -> f64 {
    let gram = m.adjoint() * m;
    let id = CMatrix::identity(gram.nrows(), gram.ncols());
    max_abs_diff(&gram, &id)
}

/// Orthonormalize the columns of a tall matrix (modified Gram-Schmidt, twice).
///
/// Returns `None` if the columns are numerically dependent.
pub fn orthonormalize_columns(m: &CMatrix) -> Option<CMatrix> {
    let mut q = m.clone();
    for _pass in 0..2 {
        for j in 0..q.ncols() {
            for k in 0..j {
                let proj = q.column(k).dotc(&q.column(j));
                let colk = q.column(k).into_owned();
                q.column_mut(j).axpy(-proj, &colk, C64::new(1.0, 0.0));
            }
            let norm = q.column(j).norm();
            if norm < 1e-12 {
                return None;
            }
            q.column_mut(j).unscale_mut(norm);
        }
    }
    Some(q)
}

/// Singular values, descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn psd_sqrt_scalar_matrix() {
        let m = CMatrix::identity(4, 4).scale(0.25);
        let r = psd_sqrt(&m).unwrap();
        assert!(max_abs_diff(&r, &CMatrix::identity(4, 4).scale(0.5)) < 1e-12);
    }

    #[test]
    fn psd_sqrt_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.64), c(0.36)]));
        let r = psd_sqrt(&m).unwrap();
        assert_abs_diff_eq!(r[(0, 0)].re, 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(r[(1, 1)].re, 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(r[(0, 1)].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn psd_sqrt_projector_is_fixed() {
        let v = CVector::from_vec(vec![c(0.6), C64::new(0.0, 0.8), c(0.0)]);
        let p = &v * v.adjoint();
        let r = psd_sqrt(&p).unwrap();
        assert!(max_abs_diff(&r, &p) < 1e-8);
    }

    #[test]
    fn psd_sqrt_rejects_non_hermitian() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = c(0.5);
        assert!(psd_sqrt(&m).is_err());
    }

    #[test]
    fn psd_sqrt_rejects_negative_spectrum() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0), c(-1e-3)]));
        assert!(psd_sqrt(&m).is_err());
    }

    #[test]
    fn eigvalsh_closed_form_matches_solver() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.3), C64::new(0.1, -0.2), C64::new(0.1, 0.2), c(0.7)]);
        let fast = eigvalsh(&m);
        let full = eigh(&m).values;
        for (a, b) in fast.iter().zip(full.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn gram_schmidt_gives_isometry() {
        let m = CMatrix::from_fn(5, 3, |i, j| C64::new((i * 3 + j) as f64 % 7.0, (i + 2 * j) as f64 % 3.0 - 1.0));
        let q = orthonormalize_columns(&m).unwrap();
        assert!(isometry_defect(&q) < 1e-12);
    }
}
