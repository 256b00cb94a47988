//! Lower bound for the phi-form of the tensor under the perturbation
//! `phi -> phi + eps eta` with `eta = exp(delta |z|^2)`:
//!
//! ```text
//! A_{phi + eps eta} >= (1 + eps eta / phi) A_phi + eps delta eta phi I
//! ```
//!
//! for `0 < delta <= (sup |z|)^{-2} / 8`. The same inequality is checked a
//! second time through `u = phi^{-(Q-2)/2}` and the direct form of the
//! tensor.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::corpus::{BOX_T, BOX_Z};
use crate::fields::{FnField, SharedField};
use crate::group::Point;
use crate::schouten::eigen::eigen_sym;
use crate::schouten::{phi_form, schouten_from_jet, u_of};

/// The box `[-z_half, z_half]^{2n} x [-t_half, t_half]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleRegion {
    pub n: usize,
    pub z_half: f64,
    pub t_half: f64,
}

impl SampleRegion {
    /// The corpus test box.
    pub fn test_box(n: usize) -> Self {
        Self { n, z_half: BOX_Z, t_half: BOX_T }
    }

    pub fn sup_z(&self) -> f64 {
        self.z_half * ((2 * self.n) as f64).sqrt()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let z = (0..2 * self.n).map(|_| rng.gen_range(-self.z_half..=self.z_half)).collect();
        Point::from_z(z, rng.gen_range(-self.t_half..=self.t_half))
    }
}

/// Largest admissible `delta`: `(sup |z|)^{-2} / 8`.
pub fn admissible_delta(sup_z: f64) -> f64 {
    1.0 / (8.0 * sup_z * sup_z)
}

/// `exp(delta |z|^2)`.
pub fn eta_field(n: usize, delta: f64) -> SharedField {
    FnField::new(n, move |c| {
        let z2 = c[..2 * n].iter().fold(c[0].lift(0.0), |acc, j| acc + j * j);
        Ok((z2 * delta).exp())
    })
    .shared()
}

fn perturbed(phi: SharedField, eta: SharedField, eps: f64) -> SharedField {
    FnField::new(phi.dim(), move |c| Ok(phi.eval_jets(c)? + eta.eval_jets(c)? * eps)).shared()
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationPoint {
    pub point: Point,
    /// Smallest eigenvalue of `A_{phi+eps eta} - (1 + eps eta/phi) A_phi - eps delta eta phi I`.
    pub min_eigenvalue: f64,
    /// `1 + |A_phi|_max`.
    pub scale: f64,
    /// Smallest eigenvalue of `A_eta - (5/4) delta eta^2 I`.
    pub eta_margin: f64,
    /// The first quantity recomputed through `u = phi^{-(Q-2)/2}`.
    pub alt_form_min_eigenvalue: f64,
    /// `|D_phi - D_u|_max / scale` between the two computations.
    pub alt_form_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationReport {
    pub delta: f64,
    pub delta_bar: f64,
    /// `false` when `delta` lies outside `(0, delta_bar]`; the run still
    /// proceeds.
    pub delta_admissible: bool,
    pub epsilon: f64,
    pub points: Vec<PerturbationPoint>,
}

impl PerturbationReport {
    /// Worst value of `min_eigenvalue / scale`.
    pub fn worst_margin(&self) -> f64 {
        self.points.iter().map(|p| p.min_eigenvalue / p.scale).fold(f64::INFINITY, f64::min)
    }

    pub fn worst_eta_margin(&self) -> f64 {
        self.points.iter().map(|p| p.eta_margin).fold(f64::INFINITY, f64::min)
    }

    pub fn worst_alt_form_margin(&self) -> f64 {
        self.points.iter().map(|p| p.alt_form_min_eigenvalue / p.scale).fold(f64::INFINITY, f64::min)
    }

    pub fn max_alt_form_residual(&self) -> f64 {
        self.points.iter().map(|p| p.alt_form_residual).fold(0.0, f64::max)
    }

    /// Every point satisfies the inequality within `tol (1 + |A_phi|_max)`.
    pub fn holds(&self, tol: f64) -> bool {
        self.worst_margin() >= -tol && self.worst_alt_form_margin() >= -tol
    }
}

pub fn perturbation_inequality(
    phi: SharedField,
    delta: f64,
    eps: f64,
    region: &SampleRegion,
    points: &[Point],
) -> Result<PerturbationReport> {
    let n = phi.dim();
    if region.n != n {
        return Err(Error::DimensionMismatch { expected: n, got: region.n });
    }
    let delta_bar = admissible_delta(region.sup_z());
    let eta = eta_field(n, delta);
    let sum = perturbed(phi.clone(), eta.clone(), eps);
    let u = u_of(phi.clone());
    let w = u_of(sum.clone());
    let id = DMatrix::<f64>::identity(2 * n, 2 * n);
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let hp = phi.horizontal_at(p)?;
        if !(hp.val > 0.0) {
            return Err(Error::NonPositiveField(hp.val));
        }
        let he = eta.horizontal_at(p)?;
        let a_phi = phi_form(&hp);
        let a_sum = phi_form(&sum.horizontal_at(p)?);
        let (f, e) = (hp.val, he.val);
        let d_phi = &a_sum - &a_phi * (1.0 + eps * e / f) - &id * (eps * delta * e * f);
        let scale = 1.0 + a_phi.amax();
        let a_eta = phi_form(&he) - &id * (1.25 * delta * e * e);

        // u^{2/(Q-2)} = 1/phi and u^{-2/(Q-2)} = phi.
        let a_u = schouten_from_jet(&u.horizontal_at(p)?)?;
        let a_w = schouten_from_jet(&w.horizontal_at(p)?)?;
        let d_u = &a_w - &a_u * (1.0 + eps * e / f) - &id * (eps * delta * e * f);

        out.push(PerturbationPoint {
            point: p.clone(),
            min_eigenvalue: eigen_sym(&d_phi)?.min(),
            scale,
            eta_margin: eigen_sym(&a_eta)?.min(),
            alt_form_min_eigenvalue: eigen_sym(&d_u)?.min(),
            alt_form_residual: (&d_phi - &d_u).amax() / scale,
        });
    }
    Ok(PerturbationReport {
        delta,
        delta_bar,
        delta_admissible: delta > 0.0 && delta <= delta_bar,
        epsilon: eps,
        points: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{builtin_corpus, ExprField};
    use crate::jets::HorizontalJet;
    use crate::structure::{apply_j, outer};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn points(region: &SampleRegion, k: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..k).map(|_| region.sample(&mut rng)).collect()
    }

    #[test]
    fn eta_derivatives() {
        let (n, delta) = (2, 0.03);
        let p = Point::from_z(vec![0.4, -0.2, 0.9, 0.1], 0.7);
        let h = eta_field(n, delta).horizontal_at(&p).unwrap();
        let z = p.z_vector();
        assert!((&h.hgrad - &z * (2.0 * delta * h.val)).amax() < 1e-14);
        let want = DMatrix::identity(4, 4) * (2.0 * delta * h.val) + outer(&z, &z) * (4.0 * delta * delta * h.val);
        assert!((h.sym_hessian() - want).amax() < 1e-14);
    }

    #[test]
    fn constant_phi() {
        for n in [1, 2] {
            let region = SampleRegion::test_box(n);
            let delta = admissible_delta(region.sup_z());
            let one = ExprField::parse("1", n).unwrap().shared();
            for eps in [1e-3, 1e-1, 1.0] {
                let r = perturbation_inequality(one.clone(), delta, eps, &region, &points(&region, 50, 90)).unwrap();
                assert!(r.delta_admissible);
                assert!(r.holds(1e-10), "{}", r.worst_margin());
            }
        }
    }

    #[test]
    fn corpus_family_f() {
        for n in [1, 2] {
            let region = SampleRegion::test_box(n);
            assert!((region.sup_z().powi(2) - 4.5 * n as f64).abs() < 1e-12);
            let delta = admissible_delta(region.sup_z());
            let corpus = builtin_corpus(n, 4).unwrap();
            for e in corpus.family('f') {
                for eps in [1e-3, 1e-2, 1e-1] {
                    let r = perturbation_inequality(e.field.clone().shared(), delta, eps, &region, &points(&region, 100, 91))
                        .unwrap();
                    assert!(r.holds(1e-10), "{} eps={eps}: {}", e.name, r.worst_margin());
                    assert!(r.worst_eta_margin() >= -1e-12);
                    assert!(r.max_alt_form_residual() < 1e-8, "{}", r.max_alt_form_residual());
                }
            }
        }
    }

    #[test]
    fn inadmissible_delta_is_flagged() {
        let region = SampleRegion::test_box(1);
        let one = ExprField::parse("1", 1).unwrap().shared();
        let r = perturbation_inequality(one, 10.0, 0.1, &region, &points(&region, 3, 92)).unwrap();
        assert!(!r.delta_admissible);
    }

    /// Second-order expansion in `eps`: `A_phi + eps B + eps^2 A_eta`.
    #[test]
    fn first_variation_expansion() {
        let phi = ExprField::parse("2 + x1^2 - 0.3*y1*t + 0.2*x1*y1", 1).unwrap().shared();
        let eta = eta_field(1, 0.05);
        let p = Point::new(&[0.3], &[-0.6], 0.4);
        let eps = 0.37;
        let hp: HorizontalJet = phi.horizontal_at(&p).unwrap();
        let he = eta.horizontal_at(&p).unwrap();
        let (jp, je) = (apply_j(&hp.hgrad), apply_j(&he.hgrad));
        let b = hp.sym_hessian() * he.val + he.sym_hessian() * hp.val
            - DMatrix::identity(2, 2) * hp.hgrad.dot(&he.hgrad)
            - outer(&jp, &je)
            - outer(&je, &jp);
        let want = phi_form(&hp) + b * eps + phi_form(&he) * (eps * eps);
        let got = phi_form(&perturbed(phi, eta, eps).horizontal_at(&p).unwrap());
        assert!((got - want).amax() < 1e-13);
    }
}
