//! Open convex cones of symmetric matrices that are closed under positive
//! scaling and under adding positive definite matrices.
//!
//! The trace cone `{tr A > 0}` is the basic example. The Garding-type cones
//! `{sigma_1 > 0, ..., sigma_k > 0}` on the spectrum are shipped as
//! extensions and labelled as such.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::Result;
use crate::schouten::eigen::{all_sigmas, spectrum};
use crate::structure::sym_part;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Interior,
    /// In the closure but not in the interior.
    Closure,
    Complement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    Trace,
    /// `sigma_1, ..., sigma_k > 0` on the spectrum.
    Garding(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConePredicate {
    pub name: String,
    pub kind: ConeKind,
    /// Not one of the basic examples; shipped as an additional cone.
    pub extension: bool,
    pub positively_homogeneous: bool,
    pub monotone: bool,
}

/// Outcome of the random self-test of the two cone axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeSelfTest {
    pub samples: usize,
    pub scaling_failures: usize,
    pub monotonicity_failures: usize,
}

impl ConeSelfTest {
    pub fn passed(&self) -> bool {
        self.scaling_failures == 0 && self.monotonicity_failures == 0
    }
}

const TOL: f64 = 1e-10;

impl ConePredicate {
    fn new(kind: ConeKind, extension: bool) -> Self {
        let name = match kind {
            ConeKind::Trace => "trace".to_string(),
            ConeKind::Garding(k) => format!("gamma_{k}"),
        };
        Self { name, kind, extension, positively_homogeneous: true, monotone: true }
    }

    fn sigmas(&self, a: &DMatrix<f64>) -> Result<Vec<f64>> {
        Ok(match self.kind {
            ConeKind::Trace => vec![a.trace()],
            ConeKind::Garding(k) => all_sigmas(spectrum(&sym_part(a))?.as_slice())[1..=k].to_vec(),
        })
    }

    /// Classifies a symmetric matrix; values within `1e-10 (1 + |A|_max)^j`
    /// of zero count as boundary.
    pub fn classify(&self, a: &DMatrix<f64>) -> Result<Membership> {
        let scale = 1.0 + a.amax();
        let mut interior = true;
        for (j, s) in self.sigmas(a)?.into_iter().enumerate() {
            let tol = TOL * scale.powi(j as i32 + 1);
            if s < -tol {
                return Ok(Membership::Complement);
            }
            if s <= tol {
                interior = false;
            }
        }
        Ok(if interior { Membership::Interior } else { Membership::Closure })
    }

    pub fn in_closure(&self, a: &DMatrix<f64>) -> Result<bool> {
        Ok(self.classify(a)? != Membership::Complement)
    }

    /// Shifts `m` by the smallest multiple of the identity that lands in the
    /// closure, found by bisection.
    fn boundary_point(&self, m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let k = m.nrows();
        let id = DMatrix::<f64>::identity(k, k);
        let (mut lo, mut hi) = (-10.0 * (1.0 + m.amax()), 10.0 * (1.0 + m.amax()));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.sigmas(&(m + &id * mid))?.iter().all(|&s| s >= 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(m + id * hi)
    }

    /// Checks `cA` in the closure and `A + B` in the interior for random
    /// boundary points `A`, scales `c > 0` and positive definite `B`.
    pub fn self_test<R: Rng + ?Sized>(&self, dim: usize, samples: usize, rng: &mut R) -> Result<ConeSelfTest> {
        let mut out = ConeSelfTest { samples, scaling_failures: 0, monotonicity_failures: 0 };
        for _ in 0..samples {
            let m = sym_part(&DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-2.0..2.0)));
            let a = self.boundary_point(&m)?;
            let c = rng.gen_range(0.01..100.0);
            if !self.in_closure(&(&a * c))? {
                out.scaling_failures += 1;
            }
            let r = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
            let b = &r * r.transpose() + DMatrix::identity(dim, dim) * rng.gen_range(0.05..1.0);
            if self.classify(&(&a + b))? != Membership::Interior {
                out.monotonicity_failures += 1;
            }
        }
        Ok(out)
    }
}

/// The trace cone followed by the cones `gamma_k`, `k = 2..=2n`.
pub fn cone_predicates(n: usize) -> Vec<ConePredicate> {
    let mut v = vec![ConePredicate::new(ConeKind::Trace, false)];
    v.extend((2..=2 * n).map(|k| ConePredicate::new(ConeKind::Garding(k), true)));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_negative_identity() {
        for n in [1, 2] {
            let id = DMatrix::<f64>::identity(2 * n, 2 * n);
            for c in cone_predicates(n) {
                assert_eq!(c.classify(&id).unwrap(), Membership::Interior, "{}", c.name);
                assert_eq!(c.classify(&-&id).unwrap(), Membership::Complement, "{}", c.name);
            }
        }
    }

    #[test]
    fn trace_cone_boundary() {
        let c = &cone_predicates(1)[0];
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 3.0, 3.0, -1.0]);
        assert_eq!(c.classify(&a).unwrap(), Membership::Closure);
    }

    #[test]
    fn axioms_hold_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        for n in [1, 2] {
            for c in cone_predicates(n) {
                let r = c.self_test(2 * n, 200, &mut rng).unwrap();
                assert!(r.passed(), "{}: {:?}", c.name, r);
            }
        }
    }

    #[test]
    fn trace_arithmetic_directly() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let c = &cone_predicates(2)[0];
        for _ in 0..100 {
            let m = sym_part(&DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0)));
            let a = &m - DMatrix::identity(4, 4) * (m.trace() / 4.0);
            let r = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0));
            let b = &r * r.transpose() + DMatrix::identity(4, 4) * 0.01;
            assert!(b.trace() > 0.0);
            assert_eq!(c.classify(&(a + b)).unwrap(), Membership::Interior);
        }
    }
}
