//! Closed-form horizontal gradients and Hessians of transformed fields,
//! one generator at a time.

use nalgebra::{DMatrix, DVector};

use crate::crtransform::appendix::{appendix_second_derivs, matrix_e};
use crate::crtransform::{transform_field, CRMap, Generator};
use crate::error::{Error, Result};
use crate::fields::{Field, SharedField};
use crate::group::{gauge_norm, homogeneous_dim, Point};
use crate::jets::{sublaplacian, HorizontalJet};
use crate::structure::{apply_g, apply_j, g_matrix, j_matrix, outer, rel_diff};

/// Two computations of the same quantity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub lhs: f64,
    pub rhs: f64,
}

impl Comparison {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn relative(&self) -> f64 {
        rel_diff(self.lhs, self.rhs)
    }
}

fn image_jet(g: &Generator, u: &dyn Field, p: &Point) -> Result<(Point, HorizontalJet)> {
    let q = g.apply(p)?;
    let h = u.horizontal_at(&q)?;
    Ok((q, h))
}

/// `|z|^2 z + t J z`.
fn radial(p: &Point) -> DVector<f64> {
    let z = p.z_vector();
    &z * p.z_norm2() + apply_j(&z) * p.t()
}

pub fn closed_form_first(g: &Generator, u: &dyn Field, p: &Point) -> Result<DVector<f64>> {
    let (_, h) = image_jet(g, u, p)?;
    let q = homogeneous_dim(p.dim()) as f64;
    Ok(match g {
        Generator::Translate(_) => h.hgrad,
        Generator::Dilate(l) => h.hgrad * l.powf(q / 2.0),
        Generator::Rotate(m) => m.real_form().transpose() * h.hgrad,
        Generator::Iota => apply_g(&h.hgrad),
        Generator::CheckInvert => {
            let norm = gauge_norm(p);
            let e = matrix_e(p)?.e;
            radial(p) * (-(q - 2.0) * norm.powf(-(q + 2.0)) * h.val) + e * h.hgrad * norm.powf(-q)
        }
    })
}

pub fn closed_form_second(g: &Generator, u: &dyn Field, p: &Point) -> Result<DMatrix<f64>> {
    let (_, h) = image_jet(g, u, p)?;
    let q = homogeneous_dim(p.dim()) as f64;
    Ok(match g {
        Generator::Translate(_) => h.hhess,
        Generator::Dilate(l) => h.hhess * l.powf((q + 2.0) / 2.0),
        Generator::Rotate(m) => {
            let mt = m.real_form();
            mt.transpose() * h.hhess * mt
        }
        Generator::Iota => {
            let gm = g_matrix(p.dim());
            &gm * h.hhess * &gm
        }
        Generator::CheckInvert => check_invert_second(p, &h, extra_term_expanded(p, &h.hgrad)?)?,
    })
}

/// The five leading terms of the inversion Hessian plus a supplied value of
/// the `sum_h hess(x'_h) X_h u + hess(y'_h) Y_h u` block.
fn check_invert_second(p: &Point, h: &HorizontalJet, extra: DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = p.dim();
    let q = homogeneous_dim(n) as f64;
    let norm = gauge_norm(p);
    let r = radial(p);
    let e = matrix_e(p)?.e;
    let eg = &e * &h.hgrad;
    let z = p.z_vector();
    let jz = apply_j(&z);
    let bracket = DMatrix::identity(2 * n, 2 * n) * p.z_norm2()
        + j_matrix(n) * p.t()
        + outer(&z, &z) * 2.0
        + outer(&jz, &jz) * 2.0;
    Ok(outer(&r, &r) * ((q * q - 4.0) * norm.powf(-(q + 6.0)) * h.val)
        - bracket * ((q - 2.0) * norm.powf(-(q + 2.0)) * h.val)
        - (outer(&r, &eg) + outer(&eg, &r)) * ((q - 2.0) * norm.powf(-(q + 4.0)))
        + &e * &h.hhess * e.transpose() * norm.powf(-(q + 2.0))
        + extra)
}

/// Expanded form of `|xi|^{-(Q-2)} sum_h hess(x'_h) X_h u + hess(y'_h) Y_h u`
/// given `grad_H u` at the image point.
pub fn extra_term_expanded(p: &Point, grad_u: &DVector<f64>) -> Result<DMatrix<f64>> {
    let n = p.dim();
    let q = homogeneous_dim(n) as f64;
    let norm = gauge_norm(p);
    let z = p.z_vector();
    let jz = apply_j(&z);
    let r2 = p.z_norm2();
    let t = p.t();
    let a = r2 * r2 - t * t;
    let w6 = norm.powf(-(q + 6.0));
    let w10 = norm.powf(-(q + 10.0));
    let gu = apply_g(grad_u);
    let gju = g_matrix(n) * j_matrix(n) * grad_u;
    let s_gz = apply_g(&z).dot(grad_u);
    let s_gjz = apply_g(&jz).dot(grad_u);

    let v1 = &jz * (-2.0 * a) + &z * (4.0 * t * r2);
    let v2 = &z * (2.0 * a) + &jz * (4.0 * t * r2);
    let c1 = &z * s_gjz - &jz * s_gz;
    let c2 = &z * s_gz + &jz * s_gjz;
    let rad = &z * r2 + &jz * t;

    let mut m = (outer(&gu, &v1) + outer(&v1, &gu) + outer(&gju, &v2) + outer(&v2, &gju)) * w6;
    m += outer(&c1, &(&z * r2 - &jz * t)) * (8.0 * w6);
    m += outer(&c2, &(&z * t + &jz * r2)) * (8.0 * w6);
    m -= outer(&c1, &rad) * (16.0 * a * w10);
    m -= outer(&c2, &rad) * (32.0 * t * r2 * w10);
    m += DMatrix::identity(2 * n, 2 * n) * ((2.0 * a * s_gjz + 4.0 * t * r2 * s_gz) * w6);
    m += j_matrix(n) * ((-2.0 * a * s_gz + 4.0 * t * r2 * s_gjz) * w6);
    Ok(m)
}

/// The same block assembled from the second-derivative tables.
pub fn extra_term_from_tables(p: &Point, grad_u: &DVector<f64>) -> Result<DMatrix<f64>> {
    let n = p.dim();
    let q = homogeneous_dim(n) as f64;
    let d = appendix_second_derivs(p)?;
    let sum = (0..n).fold(DMatrix::zeros(2 * n, 2 * n), |acc, h| {
        acc + &d.x[h] * grad_u[h] + &d.y[h] * grad_u[n + h]
    });
    Ok(sum * gauge_norm(p).powf(-(q - 2.0)))
}

/// Inversion Hessian with the extra block taken from the tables.
pub fn closed_form_second_from_tables(u: &dyn Field, p: &Point) -> Result<DMatrix<f64>> {
    let (_, h) = image_jet(&Generator::CheckInvert, u, p)?;
    let extra = extra_term_from_tables(p, &h.hgrad)?;
    check_invert_second(p, &h, extra)
}

/// `Delta_H u_inv(p)` against `|p|^{-(Q+2)} Delta_H u(inv(p))`.
pub fn sublaplacian_transform_check(u: SharedField, p: &Point) -> Result<Comparison> {
    let q = homogeneous_dim(p.dim()) as f64;
    let m = CRMap::single(Generator::CheckInvert);
    let lhs = sublaplacian(&transform_field(&m, u.clone()).horizontal_at(p)?);
    let img = Generator::CheckInvert.apply(p)?;
    let rhs = gauge_norm(p).powf(-(q + 2.0)) * sublaplacian(&u.horizontal_at(&img)?);
    Ok(Comparison { lhs, rhs })
}

/// `u_psi^{-(Q+2)/(Q-2)} Delta_H u_psi` at `p` against the same expression
/// for `u` at `psi(p)`.
pub fn scalar_invariance_check(m: &CRMap, u: SharedField, p: &Point) -> Result<Comparison> {
    let q = homogeneous_dim(p.dim()) as f64;
    let k = -(q + 2.0) / (q - 2.0);
    let op = |h: &HorizontalJet| -> Result<f64> {
        if !(h.val > 0.0) {
            return Err(Error::NonPositiveField(h.val));
        }
        Ok(h.val.powf(k) * sublaplacian(h))
    };
    let lhs = op(&transform_field(m, u.clone()).horizontal_at(p)?)?;
    let img = crate::crtransform::apply_map(m, p)?;
    let rhs = op(&u.horizontal_at(&img)?)?;
    Ok(Comparison { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{builtin_corpus, ExprField};
    use crate::group::{random_point, random_point_in_shell, UnitaryRotation};
    use crate::structure::{rel_diff_mat, rel_diff_vec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn generators(n: usize, rng: &mut ChaCha8Rng) -> Vec<Generator> {
        vec![
            Generator::Translate(random_point(n, 0.5, 0.5, rng)),
            Generator::Dilate(0.8),
            Generator::Rotate(UnitaryRotation::random(n, rng)),
            Generator::Iota,
            Generator::CheckInvert,
        ]
    }

    #[test]
    fn laws_match_direct_jets() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for n in [1, 2] {
            let corpus = builtin_corpus(n, 5).unwrap();
            for g in generators(n, &mut rng) {
                let tol = if matches!(g, Generator::CheckInvert) { 1e-8 } else { 1e-10 };
                for e in corpus.entries.iter().filter(|e| e.family != 'e') {
                    let u: SharedField = e.field.clone().shared();
                    let direct = transform_field(&CRMap::single(g.clone()), u.clone());
                    for _ in 0..10 {
                        let p = random_point_in_shell(n, 0.4, 1.2, &mut rng);
                        let h = direct.horizontal_at(&p).unwrap();
                        let first = closed_form_first(&g, u.as_ref(), &p).unwrap();
                        let second = closed_form_second(&g, u.as_ref(), &p).unwrap();
                        assert!(rel_diff_vec(&first, &h.hgrad) < tol, "{} {} first", g.name(), e.name);
                        assert!(rel_diff_mat(&second, &h.hhess) < tol, "{} {} second", g.name(), e.name);
                    }
                }
            }
        }
    }

    #[test]
    fn extra_block_two_ways() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [1, 2, 3] {
            for _ in 0..50 {
                let p = random_point_in_shell(n, 0.2, 5.0, &mut rng);
                let v = DVector::from_fn(2 * n, |_, _| rand::Rng::gen_range(&mut rng, -1.0..1.0));
                let a = extra_term_expanded(&p, &v).unwrap();
                let b = extra_term_from_tables(&p, &v).unwrap();
                assert!(rel_diff_mat(&a, &b) < 1e-9);
            }
        }
    }

    #[test]
    fn sublaplacian_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let one = ExprField::parse("1", 2).unwrap().shared();
        let profile = ExprField::parse("((1+znorm2)^2 + t^2)^(-0.25*QM2)", 2).unwrap().shared();
        for _ in 0..50 {
            let p = random_point_in_shell(2, 0.3, 3.0, &mut rng);
            let c = sublaplacian_transform_check(one.clone(), &p).unwrap();
            assert!(c.residual() < 1e-10 * (1.0 + c.lhs.abs()));
            let c = sublaplacian_transform_check(profile.clone(), &p).unwrap();
            assert!(c.relative() < 1e-9);
        }
    }

    #[test]
    fn scalar_invariance_per_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let u = ExprField::parse("exp(0.2*x1 - 0.3*y1*t + 0.1*znorm2)", 1).unwrap().shared();
        for g in generators(1, &mut rng) {
            for _ in 0..20 {
                let p = random_point_in_shell(1, 0.4, 1.5, &mut rng);
                let c = scalar_invariance_check(&CRMap::single(g.clone()), u.clone(), &p).unwrap();
                assert!(c.relative() < 1e-10, "{} {:?}", g.name(), c);
            }
        }
    }
}
