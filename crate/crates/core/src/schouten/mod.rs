//! The CR-conformal second-order tensor `A^u`, its spectrum and the
//! fully nonlinear operators built from it.
//!
//! For a positive `u`, with `a = (Q+2)/(Q-2)` and `b = 2Q/(Q-2)`,
//!
//! ```text
//! A^u = -2/(Q-2) u^{-a} sym(hess_H u)
//!       + 2Q/(Q-2)^2 u^{-b} grad u (x) grad u
//!       - 4/(Q-2)^2  u^{-b} J grad u (x) J grad u
//!       - 2/(Q-2)^2  u^{-b} |grad u|^2 I
//! ```
//!
//! and with `phi = u^{-2/(Q-2)}` the same matrix reads
//! `phi sym(hess phi) - |grad phi|^2 I / 2 - J grad phi (x) J grad phi`.

pub mod cones;
pub mod eigen;
pub mod ellipticity;
pub mod invariance;
pub mod perturbation;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fields::{Field, FnField, SharedField};
use crate::group::{homogeneous_dim, Point};
use crate::jets::HorizontalJet;
use crate::structure::{apply_j, outer, sym_part};

pub use cones::{cone_predicates, ConeKind, ConePredicate, ConeSelfTest, Membership};
pub use eigen::{all_sigmas, eigen_sym, is_psd_within, sigma_k, spectrum, SymEigen};
pub use ellipticity::{ellipticity_probe, sigma_operator, EllipticityProbe};
pub use invariance::{admissible_points, f_invariance_conditions, invariance_suite, sigma_of_sym, FInvarianceReport, InvarianceReport};
pub use perturbation::{admissible_delta, eta_field, perturbation_inequality, PerturbationReport, SampleRegion};

/// A symmetric `2n x 2n` matrix together with its ascending spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct SchoutenMatrix {
    pub a: DMatrix<f64>,
    pub spectrum: DVector<f64>,
}

impl SchoutenMatrix {
    /// Symmetrizes `a` and diagonalizes it.
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        let a = sym_part(&a);
        let spectrum = spectrum(&a)?;
        Ok(Self { a, spectrum })
    }

    pub fn zeros(n: usize) -> Self {
        Self { a: DMatrix::zeros(2 * n, 2 * n), spectrum: DVector::zeros(2 * n) }
    }

    pub fn sigma(&self, k: usize) -> Result<f64> {
        sigma_k(self.spectrum.as_slice(), k)
    }

    pub fn trace(&self) -> f64 {
        self.a.trace()
    }
}

fn exponents(n: usize) -> (f64, f64, f64) {
    let q = homogeneous_dim(n) as f64;
    (q, (q + 2.0) / (q - 2.0), 2.0 * q / (q - 2.0))
}

/// `A^u` from the horizontal jet of `u` at a point.
pub fn schouten_from_jet(h: &HorizontalJet) -> Result<DMatrix<f64>> {
    if !(h.val > 0.0) {
        return Err(Error::NonPositiveField(h.val));
    }
    let n = h.dim();
    let (q, a, b) = exponents(n);
    let d = q - 2.0;
    let g = &h.hgrad;
    let jg = apply_j(g);
    let ua = h.val.powf(-a);
    let ub = h.val.powf(-b);
    let m = h.sym_hessian() * (-2.0 / d * ua) + outer(g, g) * (2.0 * q / (d * d) * ub)
        - outer(&jg, &jg) * (4.0 / (d * d) * ub)
        - DMatrix::identity(2 * n, 2 * n) * (2.0 / (d * d) * ub * g.norm_squared());
    Ok(sym_part(&m))
}

pub fn schouten_tensor(u: &dyn Field, p: &Point) -> Result<SchoutenMatrix> {
    SchoutenMatrix::new(schouten_from_jet(&u.horizontal_at(p)?)?)
}

/// `phi sym(hess phi) - |grad phi|^2 I / 2 - J grad phi (x) J grad phi` from
/// the horizontal jet of `phi`.
pub fn phi_form(h: &HorizontalJet) -> DMatrix<f64> {
    let n = h.dim();
    let jg = apply_j(&h.hgrad);
    let m = h.sym_hessian() * h.val
        - DMatrix::identity(2 * n, 2 * n) * (0.5 * h.hgrad.norm_squared())
        - outer(&jg, &jg);
    sym_part(&m)
}

/// The field `u^{-2/(Q-2)}`, composed on jets.
pub fn phi_of(u: SharedField) -> SharedField {
    let n = u.dim();
    let r = -2.0 / (homogeneous_dim(n) as f64 - 2.0);
    FnField::new(n, move |c| {
        let v = u.eval_jets(c)?;
        if !(v.val > 0.0) {
            return Err(Error::NonPositiveField(v.val));
        }
        v.try_powf(r)
    })
    .shared()
}

/// The field `phi^{-(Q-2)/2}`, inverse of [`phi_of`].
pub fn u_of(phi: SharedField) -> SharedField {
    let n = phi.dim();
    let r = -(homogeneous_dim(n) as f64 - 2.0) / 2.0;
    FnField::new(n, move |c| {
        let v = phi.eval_jets(c)?;
        if !(v.val > 0.0) {
            return Err(Error::NonPositiveField(v.val));
        }
        v.try_powf(r)
    })
    .shared()
}

/// `A^u` through `phi = u^{-2/(Q-2)}`; the power is taken on jets before
/// any derivative is read off.
pub fn schouten_from_phi(u: SharedField, p: &Point) -> Result<SchoutenMatrix> {
    let val = u.value_at(p)?;
    if !(val > 0.0) {
        return Err(Error::NonPositiveField(val));
    }
    SchoutenMatrix::new(phi_form(&phi_of(u).horizontal_at(p)?))
}

/// `A(s, v, U)`, the tensor expressed through the value, horizontal
/// gradient and horizontal Hessian of `u` at a point.
pub fn canonical_args(s: f64, v: &DVector<f64>, u: &DMatrix<f64>) -> Result<SchoutenMatrix> {
    SchoutenMatrix::new(canonical_matrix(s, v, u)?)
}

/// The matrix of [`canonical_args`] without diagonalization.
pub fn canonical_matrix(s: f64, v: &DVector<f64>, u: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !(s > 0.0) {
        return Err(Error::NonPositiveField(s));
    }
    let n = v.len() / 2;
    if u.nrows() != 2 * n || u.ncols() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, got: u.nrows() });
    }
    let q = homogeneous_dim(n) as f64;
    let d = q - 2.0;
    let sb = s.powf(-2.0 * q / d);
    let sa = s.powf(-(q + 2.0) / d);
    let jv = apply_j(v);
    Ok(outer(v, v) * (2.0 * q / (d * d) * sb)
        - outer(&jv, &jv) * (4.0 / (d * d) * sb)
        - DMatrix::identity(2 * n, 2 * n) * (2.0 / (d * d) * sb * v.norm_squared())
        - sym_part(u) * (2.0 / d * sa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{builtin_corpus, ExprField};
    use crate::jets::sublaplacian;
    use crate::structure::{j_matrix, rel_diff_mat};
    use crate::jets::HorizontalJet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_field_has_zero_tensor() {
        for n in [1, 2] {
            let u = ExprField::parse("2.5", n).unwrap().shared();
            let p = Point::from_z(vec![0.3; 2 * n], -0.4);
            assert_eq!(schouten_tensor(u.as_ref(), &p).unwrap().a.amax(), 0.0);
            assert_eq!(schouten_from_phi(u, &p).unwrap().a.amax(), 0.0);
        }
    }

    #[test]
    fn nonpositive_value_rejected() {
        let u = ExprField::parse("x1", 1).unwrap();
        let p = Point::new(&[-1.0], &[0.0], 0.0);
        assert!(matches!(schouten_tensor(&u, &p), Err(Error::NonPositiveField(_))));
        assert!(canonical_args(0.0, &DVector::zeros(2), &DMatrix::zeros(2, 2)).is_err());
    }

    fn term_scale(h: &HorizontalJet) -> f64 {
        let n = h.dim();
        let q = homogeneous_dim(n) as f64;
        let (a, b) = ((q + 2.0) / (q - 2.0), 2.0 * q / (q - 2.0));
        (h.val.powf(-a) * h.hhess.amax()).max(h.val.powf(-b) * h.hgrad.norm_squared())
    }

    fn tol_of(scale: f64) -> f64 {
        1e-11 * scale
    }

    #[test]
    fn trace_identity_and_cross_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for n in [1, 2] {
            let corpus = builtin_corpus(n, 3).unwrap();
            for e in &corpus.entries {
                let u = e.field.clone().shared();
                let q = homogeneous_dim(n) as f64;
                for _ in 0..20 {
                    let p = e.domain.sample(n, &mut rng);
                    let h = u.horizontal_at(&p).unwrap();
                    let a = schouten_tensor(u.as_ref(), &p).unwrap();
                    let tr = -2.0 / (q - 2.0) * h.val.powf(-(q + 2.0) / (q - 2.0)) * sublaplacian(&h);
                    // A^u vanishes identically for the fundamental solution, so
                    // errors are measured against the size of the separate terms.
                    let floor = term_scale(&h);
                    let close = |x: f64, y: f64| (x - y).abs() <= tol_of(x.abs().max(y.abs()).max(floor));
                    assert!(close(a.trace(), tr), "{}", e.name);
                    let b = schouten_from_phi(u.clone(), &p).unwrap();
                    let c = canonical_args(h.val, &h.hgrad, &h.hhess).unwrap();
                    let scale = a.a.amax().max(floor);
                    assert!((&a.a - &b.a).amax() <= 1e-10 * scale, "{}", e.name);
                    assert!((&a.a - &c.a).amax() <= 1e-11 * scale, "{}", e.name);
                }
            }
        }
    }

    #[test]
    fn phi_form_by_hand() {
        // phi = 1 + x1^2 at (x1, y1, t) = (0.5, 0.2, 0.3):
        // grad phi = (2 x1, 0) = (1, 0), sym hess = diag(2, 0), phi = 1.25.
        let phi = ExprField::parse("1 + x1^2", 1).unwrap();
        let p = Point::new(&[0.5], &[0.2], 0.3);
        let m = phi_form(&phi.horizontal_at(&p).unwrap());
        // J (1, 0) = (0, -1): J grad (x) J grad = diag(0, 1).
        let want = DMatrix::from_row_slice(2, 2, &[2.5 - 0.5, 0.0, 0.0, -0.5 - 1.0]);
        assert!((m - want).amax() < 1e-14);
    }

    #[test]
    fn canonical_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for n in [1, 2] {
            let q = homogeneous_dim(n) as f64;
            let zero = DVector::zeros(2 * n);
            assert_eq!(canonical_args(1.7, &zero, &DMatrix::zeros(2 * n, 2 * n)).unwrap().a.amax(), 0.0);
            for _ in 0..10 {
                let s: f64 = rng.gen_range(0.2..3.0);
                let u = DMatrix::from_fn(2 * n, 2 * n, |_, _| rng.gen_range(-1.0..1.0));
                let u = sym_part(&u) + j_matrix(n) * rng.gen_range(-1.0..1.0);
                let lhs = canonical_args(1.0, &zero, &(&u * s.powf(-(q + 2.0) / (q - 2.0)))).unwrap();
                let rhs = canonical_args(s, &zero, &u).unwrap();
                assert!(rel_diff_mat(&lhs.a, &rhs.a) < 1e-13);
            }
        }
    }

    #[test]
    fn stored_matrix_is_symmetric() {
        let u = ExprField::parse("exp(0.3*x1*y1 + 0.2*t*x1)", 1).unwrap();
        let a = schouten_tensor(&u, &Point::new(&[0.4], &[-0.7], 0.9)).unwrap();
        assert!((&a.a - a.a.transpose()).amax() <= 1e-13);
    }
}
