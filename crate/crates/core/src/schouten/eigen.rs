//! Cyclic Jacobi eigensolver for small symmetric matrices, and elementary
//! symmetric polynomials of the spectrum.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::structure::max_asymmetry;

const MAX_SWEEPS: usize = 50;
const OFF_TOL: f64 = 1e-14;
const ASYM_TOL: f64 = 1e-10;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors as
/// columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SymEigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl SymEigen {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.vectors * DMatrix::from_diagonal(&self.values) * self.vectors.transpose()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn off_norm(a: &DMatrix<f64>) -> f64 {
    let mut s = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

pub fn eigen_sym(a: &DMatrix<f64>) -> Result<SymEigen> {
    let m = a.nrows();
    if a.ncols() != m {
        return Err(Error::DimensionMismatch { expected: m, got: a.ncols() });
    }
    let asym = max_asymmetry(a);
    if asym > ASYM_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    let mut w = (a + a.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(m, m);
    let target = OFF_TOL * w.norm();
    let mut sweeps = 0;
    while off_norm(&w) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { iterations: sweeps, residual: off_norm(&w) / w.norm() });
        }
        sweeps += 1;
        for p in 0..m {
            for q in p + 1..m {
                let apq = w[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (w[(q, q)] - w[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (wkp, wkq) = (w[(k, p)], w[(k, q)]);
                    w[(k, p)] = c * wkp - s * wkq;
                    w[(k, q)] = s * wkp + c * wkq;
                }
                for k in 0..m {
                    let (wpk, wqk) = (w[(p, k)], w[(q, k)]);
                    w[(p, k)] = c * wpk - s * wqk;
                    w[(q, k)] = s * wpk + c * wqk;
                }
                for k in 0..m {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| w[(i, i)].total_cmp(&w[(j, j)]));
    let values = DVector::from_iterator(m, order.iter().map(|&i| w[(i, i)]));
    let vectors = DMatrix::from_fn(m, m, |r, c| v[(r, order[c])]);
    Ok(SymEigen { values, vectors })
}

/// Ascending spectrum only.
pub fn spectrum(a: &DMatrix<f64>) -> Result<DVector<f64>> {
    Ok(eigen_sym(a)?.values)
}

/// `e_k(lambda)`, the k-th elementary symmetric polynomial, by the
/// recursion `e_j <- e_j + lambda_i e_{j-1}`.
pub fn sigma_k(lambda: &[f64], k: usize) -> Result<f64> {
    if k == 0 || k > lambda.len() {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={}", lambda.len())));
    }
    Ok(all_sigmas(lambda)[k])
}

/// `[e_0, e_1, ..., e_m]` for a vector of length `m`.
pub fn all_sigmas(lambda: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; lambda.len() + 1];
    e[0] = 1.0;
    for (i, &l) in lambda.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += l * e[j - 1];
        }
    }
    e
}

/// `A >= 0` within `tol`: minimum eigenvalue at least `-tol (1 + |A|_max)`.
pub fn is_psd_within(a: &DMatrix<f64>, tol: f64) -> Result<bool> {
    Ok(eigen_sym(a)?.min() >= -tol * (1.0 + a.amax()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::sym_part;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_spectrum() {
        let e = eigen_sym(&DMatrix::identity(4, 4)).unwrap();
        assert!(e.values.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn diagonal_is_sorted() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, -1.0, 0.0, 0.0]));
        let e = eigen_sym(&a).unwrap();
        assert_eq!(e.values.as_slice(), &[-1.0, 0.0, 0.0, 3.0]);
    }

    #[test]
    fn random_reconstruction_and_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for m in [2, 4, 6, 8] {
            for _ in 0..50 {
                let a = sym_part(&DMatrix::from_fn(m, m, |_, _| rng.gen_range(-3.0..3.0)));
                let e = eigen_sym(&a).unwrap();
                assert!((e.reconstruct() - &a).amax() <= 1e-11 * a.amax());
                let gram = e.vectors.transpose() * &e.vectors - DMatrix::identity(m, m);
                assert!(gram.amax() < 1e-12);
                for i in 0..m {
                    let v = e.vectors.column(i);
                    assert!((&a * v - v * e.values[i]).norm() <= 1e-10 * a.norm());
                }
                assert!(e.values.as_slice().windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn degenerate_and_zero() {
        let e = eigen_sym(&DMatrix::zeros(4, 4)).unwrap();
        assert!(e.values.iter().all(|&v| v == 0.0));
        let mut a = DMatrix::from_element(4, 4, 1.0);
        a.fill_diagonal(2.0);
        let e = eigen_sym(&a).unwrap();
        for (got, want) in e.values.iter().zip([1.0, 1.0, 1.0, 5.0]) {
            assert!((got - want).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let mut a = DMatrix::identity(2, 2);
        a[(0, 1)] = 1.0;
        assert!(matches!(eigen_sym(&a), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn sigma_values() {
        let l = [1.0, -2.0, 3.0, 0.5];
        assert!((sigma_k(&l, 1).unwrap() - 2.5).abs() < 1e-15);
        assert!((sigma_k(&l, 4).unwrap() - -3.0).abs() < 1e-15);
        let ones = [1.0; 6];
        let binom = [6.0, 15.0, 20.0, 15.0, 6.0, 1.0];
        for k in 1..=6 {
            assert_eq!(sigma_k(&ones, k).unwrap(), binom[k - 1]);
        }
        assert!(sigma_k(&l, 0).is_err());
        assert!(sigma_k(&l, 5).is_err());
    }

    #[test]
    fn sigma_top_is_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let a = sym_part(&DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0)));
        let s = spectrum(&a).unwrap();
        assert!((sigma_k(s.as_slice(), 4).unwrap() - a.determinant()).abs() < 1e-13);
        assert!((sigma_k(s.as_slice(), 1).unwrap() - a.trace()).abs() < 1e-13);
    }
}
