//! Numerical ellipticity check for operators `T(s, v, U)`: the matrix
//! `[-dT/dU_ij]` must be positive definite.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::schouten::eigen::eigen_sym;
use crate::schouten::{canonical_matrix, sigma_k, spectrum};

const STEP: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq)]
pub struct EllipticityProbe {
    /// Symmetrized `[-dT/dU_ij]`.
    pub derivative: DMatrix<f64>,
    pub min_eigenvalue: f64,
}

impl EllipticityProbe {
    pub fn is_elliptic(&self) -> bool {
        self.min_eigenvalue > 0.0
    }
}

/// Central differences with step `1e-5` in each entry of `U`.
pub fn ellipticity_probe<T>(t: T, s: f64, v: &DVector<f64>, u: &DMatrix<f64>) -> Result<EllipticityProbe>
where
    T: Fn(f64, &DVector<f64>, &DMatrix<f64>) -> Result<f64>,
{
    let d = u.nrows();
    let mut der = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut up = u.clone();
            up[(i, j)] += STEP;
            let mut dn = u.clone();
            dn[(i, j)] -= STEP;
            let (a, b) = (t(s, v, &up)?, t(s, v, &dn)?);
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::OutOfRange(format!("operator is not finite near U entry ({i}, {j})")));
            }
            der[(i, j)] = -(a - b) / (2.0 * STEP);
        }
    }
    let derivative = (&der + der.transpose()) * 0.5;
    let min_eigenvalue = eigen_sym(&derivative)?.min();
    Ok(EllipticityProbe { derivative, min_eigenvalue })
}

/// `T(s, v, U) = sigma_k` of the spectrum of `A(s, v, U)`.
pub fn sigma_operator(k: usize) -> impl Fn(f64, &DVector<f64>, &DMatrix<f64>) -> Result<f64> {
    move |s, v, u| sigma_k(spectrum(&canonical_matrix(s, v, u)?)?.as_slice(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::homogeneous_dim;
    use crate::structure::{j_matrix, sym_part};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn minus_trace_is_elliptic() {
        let v = DVector::zeros(4);
        let u = DMatrix::zeros(4, 4);
        let p = ellipticity_probe(|_, _, u: &DMatrix<f64>| Ok(-u.trace()), 1.0, &v, &u).unwrap();
        assert!((p.derivative.clone() - DMatrix::identity(4, 4)).amax() < 1e-9);
        assert!((p.min_eigenvalue - 1.0).abs() < 1e-9);
        let p = ellipticity_probe(|_, _, u: &DMatrix<f64>| Ok(u.trace()), 1.0, &v, &u).unwrap();
        assert!((p.min_eigenvalue + 1.0).abs() < 1e-9);
        assert!(!p.is_elliptic());
    }

    #[test]
    fn sigma_one_of_canonical_args() {
        let mut rng = ChaCha8Rng::seed_from_u64(80);
        for n in [1, 2] {
            let q = homogeneous_dim(n) as f64;
            for _ in 0..10 {
                let s = rng.gen_range(0.5..2.0);
                let v = DVector::from_fn(2 * n, |_, _| rng.gen_range(-1.0..1.0));
                let u = sym_part(&DMatrix::from_fn(2 * n, 2 * n, |_, _| rng.gen_range(-1.0..1.0)))
                    + j_matrix(n) * rng.gen_range(-1.0..1.0);
                let p = ellipticity_probe(sigma_operator(1), s, &v, &u).unwrap();
                let want = 2.0 / (q - 2.0) * s.powf(-(q + 2.0) / (q - 2.0));
                assert!((p.min_eigenvalue - want).abs() < 1e-6, "{} vs {}", p.min_eigenvalue, want);
                assert!(p.is_elliptic());
            }
        }
    }

    #[test]
    fn non_finite_operator_is_reported() {
        let v = DVector::zeros(2);
        let u = DMatrix::zeros(2, 2);
        let r = ellipticity_probe(|_, _, _: &DMatrix<f64>| Ok(f64::NAN), 1.0, &v, &u);
        assert!(r.is_err());
    }
}
