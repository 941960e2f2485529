use nalgebra::DMatrix;
use num_complex::Complex64;

fn is_hermitian(a: &DMatrix<Complex64>, tol: f64) -> bool {
    let n = a.nrows();
    (0..n).all(|i| (i..n).all(|j| (a[(i, j)] - a[(j, i)].conj()).norm() <= tol))
}

fn abs_eigen_sum(a: DMatrix<Complex64>) -> f64 {
    let herm = (&a + a.adjoint()).scale(0.5);
    herm.symmetric_eigenvalues().iter().map(|e| e.abs()).sum()
}

/// Trace norm `tr √(A†A)`, the sum of singular values.
///
/// Hermitian and anti-Hermitian inputs (commutators with a Hermitian
/// generator are the latter) go through the eigenvalue route; anything else
/// through a full SVD.
pub fn trace_norm(a: &DMatrix<Complex64>) -> f64 {
    assert!(a.is_square(), "trace norm needs a square matrix");
    if a.is_empty() {
        return 0.0;
    }
    let tol = 1e-12 * a.camax().max(1.0);
    if is_hermitian(a, tol) {
        return abs_eigen_sum(a.clone());
    }
    let rotated = a.map(|z| z * Complex64::i());
    if is_hermitian(&rotated, tol) {
        return abs_eigen_sum(rotated);
    }
    a.clone().singular_values().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn simple_norms() {
        assert!((trace_norm(&DMatrix::identity(5, 5)) - 5.0).abs() < 1e-12);
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![c(3.0, 0.0), c(-4.0, 0.0)]));
        assert!((trace_norm(&d) - 7.0).abs() < 1e-12);
        let u = DVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)]);
        let v = DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((trace_norm(&(&u * v.adjoint())) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn routes_agree() {
        let a = DMatrix::from_fn(6, 6, |i, j| {
            c((i * 3 + j) as f64 % 5.0 - 2.0, (i as f64 - j as f64) * 0.7)
        });
        let herm = (&a + a.adjoint()).scale(0.5);
        let anti = (&a - a.adjoint()).scale(0.5);
        for m in [herm, anti, a] {
            let svd: f64 = m.clone().singular_values().sum();
            assert!((trace_norm(&m) - svd).abs() < 1e-10);
        }
    }
}
