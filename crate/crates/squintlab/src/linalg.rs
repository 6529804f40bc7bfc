//! Small complex linear-algebra helpers shared by the design and
//! estimation modules. Everything is dense `nalgebra` over `Complex64`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvector `k` in column `k`.
pub fn hermitian_eigen(m: &DMatrix<Complex64>) -> (DVector<f64>, DMatrix<Complex64>) {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Top-`s` right singular vectors of `a`, as the columns of an `ncols x s`
/// matrix, ordered by decreasing singular value. Each column is rotated so
/// its first entry of significant magnitude is real and nonnegative, which
/// keeps averages of singular vectors across related matrices stable.
pub fn top_right_singular_vectors(a: &DMatrix<Complex64>, s: usize) -> Result<DMatrix<Complex64>> {
    if s == 0 || s > a.ncols().min(a.nrows()) {
        return Err(Error::invalid(
            "streams",
            format!("s={} not in 1..=min(dims)={}", s, a.ncols().min(a.nrows())),
        ));
    }
    let svd = a
        .clone()
        .try_svd(false, true, f64::EPSILON * 16.0, 10_000)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Numerical("SVD produced no right singular vectors".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let n = a.ncols();
    let mut out = DMatrix::zeros(n, s);
    for (k, &idx) in order.iter().take(s).enumerate() {
        let mut col = DVector::from_iterator(n, v_t.row(idx).iter().map(|z| z.conj()));
        fix_column_phase(&mut col);
        out.set_column(k, &col);
    }
    Ok(out)
}

/// Rotate a vector by a unit scalar so that its first entry whose magnitude
/// is within 1/2 of the maximum becomes real and nonnegative.
pub fn fix_column_phase(v: &mut DVector<Complex64>) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max <= 0.0 {
        return;
    }
    let anchor = v
        .iter()
        .find(|z| z.norm() >= 0.5 * max)
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    let rot = anchor.conj() / anchor.norm();
    for z in v.iter_mut() {
        *z *= rot;
    }
}

/// Least-squares solution of `a * x = b` through the normal equations.
///
/// Fails if `a` is rank deficient; there is no silent regularization.
pub fn lstsq(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "lstsq: a has {} rows, b has {}",
            a.nrows(),
            b.nrows()
        )));
    }
    let gram = a.adjoint() * a;
    let rhs = a.adjoint() * b;
    let (vals, vecs) = hermitian_eigen(&gram);
    let max = vals[0];
    if max <= 0.0 || vals[vals.len() - 1] <= max * 1e-12 {
        return Err(Error::Numerical(
            "rank-deficient matrix in least squares".into(),
        ));
    }
    // x = V diag(1/lambda) V^H rhs
    let mut proj = vecs.adjoint() * rhs;
    for i in 0..vals.len() {
        let inv = Complex64::new(1.0 / vals[i], 0.0);
        for j in 0..proj.ncols() {
            proj[(i, j)] *= inv;
        }
    }
    Ok(&vecs * proj)
}

/// Frobenius norm.
pub fn fro_norm(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Entrywise unit-modulus projection; zero entries map to 1.
pub fn phase_only(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    m.map(|z| {
        let r = z.norm();
        if r > 0.0 {
            z / r
        } else {
            Complex64::new(1.0, 0.0)
        }
    })
}

/// log2 det(I + scale * m * m^H) for a tall or wide factor `m`, computed on
/// the Gram side with the smaller dimension.
pub fn log2_det_i_plus_gram(m: &DMatrix<Complex64>, scale: f64) -> Result<f64> {
    let (r, c) = (m.nrows(), m.ncols());
    let gram = if r <= c {
        m * m.adjoint()
    } else {
        m.adjoint() * m
    };
    let dim = gram.nrows();
    let mut inner = gram * Complex64::new(scale, 0.0);
    for i in 0..dim {
        inner[(i, i)] += Complex64::new(1.0, 0.0);
    }
    // Hermitian PSD plus identity: eigenvalues are real and >= 1.
    let eig = inner.symmetric_eigen();
    let mut acc = 0.0;
    for &lambda in eig.eigenvalues.iter() {
        if lambda <= 0.0 {
            return Err(Error::Numerical(format!(
                "non-positive eigenvalue {lambda} in capacity determinant"
            )));
        }
        acc += lambda.log2();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_eigen_recovers_diagonal() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(3.0, 0.0), c(1.0, 0.0)]));
        let (vals, vecs) = hermitian_eigen(&m);
        assert_relative_eq!(vals[0], 3.0, epsilon = 1e-12);
        assert_relative_eq!(vals[1], 1.0, epsilon = 1e-12);
        assert_relative_eq!(vecs.column(0)[0].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn lstsq_solves_consistent_system() {
        let a = DMatrix::from_row_slice(3, 2, &[
            c(1.0, 0.0), c(0.0, 1.0),
            c(2.0, 0.0), c(1.0, 0.0),
            c(0.0, 0.0), c(3.0, -1.0),
        ]);
        let x_true = DMatrix::from_row_slice(2, 1, &[c(0.5, -0.25), c(1.0, 2.0)]);
        let b = &a * &x_true;
        let x = lstsq(&a, &b).unwrap();
        assert!(fro_norm(&(x - x_true)) < 1e-10);
    }

    #[test]
    fn lstsq_rejects_rank_deficient() {
        let a = DMatrix::from_row_slice(2, 2, &[
            c(1.0, 0.0), c(1.0, 0.0),
            c(1.0, 0.0), c(1.0, 0.0),
        ]);
        let b = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(lstsq(&a, &b).is_err());
    }

    #[test]
    fn log2_det_matches_scalar_case() {
        let m = DMatrix::from_row_slice(1, 3, &[c(1.0, 0.0), c(0.0, 2.0), c(2.0, 0.0)]);
        // I + s m m^H is scalar 1 + s * 9
        let got = log2_det_i_plus_gram(&m, 0.5).unwrap();
        assert_relative_eq!(got, (1.0 + 0.5 * 9.0_f64).log2(), epsilon = 1e-12);
    }

    #[test]
    fn top_right_singular_vector_of_rank_one() {
        let u = DVector::from_vec(vec![c(1.0, 0.0)]);
        let v = DVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]);
        let a = u * v.adjoint(); // 1x2, right singular vector proportional to v
        let vs = top_right_singular_vectors(&a, 1).unwrap();
        let col = vs.column(0);
        let overlap = (col[0].conj() * v[0] + col[1].conj() * v[1]).norm();
        assert_relative_eq!(overlap, 1.0, epsilon = 1e-10);
    }
}
