//! How `A^u` transforms under each generator, and the three invariance
//! conditions on a matrix functional `F`.
//!
//! ```text
//! Translate:   A^{u_psi}(xi) = A^u(psi xi)
//! Rotate(M):   A^{u_psi}(xi) = M^T A^u(psi xi) M      (real form of M)
//! Dilate:      A^{u_psi}(xi) = A^u(psi xi)
//! Iota:        A^{u_psi}(xi) = G A^u(psi xi) G
//! CheckInvert: A^{u_psi}(xi) = E(xi) A^u(psi xi) E(xi)^T
//! ```

use nalgebra::DMatrix;
use rand::Rng;

use crate::crtransform::{matrix_e, transform_field, CRMap, Generator};
use crate::error::Result;
use crate::fields::{Domain, SharedField};
use crate::group::{gauge_norm, Point, UnitaryRotation};
use crate::schouten::eigen::all_sigmas;
use crate::schouten::schouten_tensor;
use crate::structure::{g_matrix, j_matrix, rel_diff, sym_part};

/// Residuals at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointResidual {
    pub point: Point,
    /// `|lhs - rhs|_max / max(1, |rhs|_max)` for the matrix identity.
    pub matrix: f64,
    /// Largest absolute difference of the sorted spectra.
    pub spectrum: f64,
    /// Largest difference of `sigma_1..sigma_{2n}`, relative to `max(1, |sigma_k|)`.
    pub sigma: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub generator: &'static str,
    pub points: Vec<PointResidual>,
}

impl InvarianceReport {
    fn max_of(&self, f: impl Fn(&PointResidual) -> f64) -> f64 {
        self.points.iter().map(f).fold(0.0, f64::max)
    }

    pub fn max_matrix(&self) -> f64 {
        self.max_of(|r| r.matrix)
    }

    pub fn max_spectrum(&self) -> f64 {
        self.max_of(|r| r.spectrum)
    }

    pub fn max_sigma(&self) -> f64 {
        self.max_of(|r| r.sigma)
    }
}

fn expected(g: &Generator, p: &Point, a: DMatrix<f64>) -> Result<DMatrix<f64>> {
    Ok(match g {
        Generator::Translate(_) | Generator::Dilate(_) => a,
        Generator::Rotate(m) => {
            let mt = m.real_form();
            mt.transpose() * a * mt
        }
        Generator::Iota => {
            let gm = g_matrix(p.dim());
            &gm * a * &gm
        }
        Generator::CheckInvert => {
            let e = matrix_e(p)?.e;
            &e * a * e.transpose()
        }
    })
}

pub fn invariance_suite(u: SharedField, g: &Generator, points: &[Point]) -> Result<InvarianceReport> {
    let transformed = transform_field(&CRMap::single(g.clone()), u.clone());
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let lhs = schouten_tensor(transformed.as_ref(), p)?;
        let image = g.apply(p)?;
        let base = schouten_tensor(u.as_ref(), &image)?;
        let rhs = sym_part(&expected(g, p, base.a.clone())?);
        let matrix = (&lhs.a - &rhs).amax() / rhs.amax().max(1.0);
        let spectrum = (&lhs.spectrum - &base.spectrum).amax();
        let sl = all_sigmas(lhs.spectrum.as_slice());
        let sr = all_sigmas(base.spectrum.as_slice());
        let sigma = sl.iter().zip(&sr).skip(1).map(|(a, b)| (a - b).abs() / b.abs().max(1.0)).fold(0.0, f64::max);
        out.push(PointResidual { point: p.clone(), matrix, spectrum, sigma });
    }
    Ok(InvarianceReport { generator: g.name(), points: out })
}

/// Samples `count` points `xi` of `domain` whose image under `g` also lies
/// in `domain`, away from the singular set of `CheckInvert`.
pub fn admissible_points<R: Rng + ?Sized>(
    n: usize,
    domain: &Domain,
    g: &Generator,
    count: usize,
    rng: &mut R,
) -> Vec<Point> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = domain.sample(n, rng);
        if matches!(g, Generator::CheckInvert) && gauge_norm(&p) < 0.2 {
            continue;
        }
        if let Ok(q) = g.apply(&p) {
            if domain.contains(&q) {
                out.push(p);
            }
        }
    }
    out
}

/// `F(A) = sigma_k` of the spectrum of `sym(A)`.
pub fn sigma_of_sym(k: usize) -> impl Fn(&DMatrix<f64>) -> Result<f64> {
    move |a| crate::schouten::sigma_k(crate::schouten::spectrum(&sym_part(a))?.as_slice(), k)
}

/// Largest relative residual of each condition over the samples.
#[derive(Clone, Debug, PartialEq)]
pub struct FInvarianceReport {
    pub samples: usize,
    /// `F(A) = F(M^T A M)` for unitary `M`.
    pub unitary: f64,
    /// `F(A) = F(G A G)`.
    pub reflection: f64,
    /// `F(A) = F(A + alpha J)`.
    pub shift: f64,
}

impl FInvarianceReport {
    pub fn max(&self) -> f64 {
        self.unitary.max(self.reflection).max(self.shift)
    }
}

/// Tests the three conditions on random `A` in `S (+) J R`, random unitary
/// `M` and shifts `alpha` up to `alpha_max` in size.
pub fn f_invariance_conditions<F, R>(
    f: F,
    n: usize,
    samples: usize,
    alpha_max: f64,
    rng: &mut R,
) -> Result<FInvarianceReport>
where
    F: Fn(&DMatrix<f64>) -> Result<f64>,
    R: Rng + ?Sized,
{
    let d = 2 * n;
    let gm = g_matrix(n);
    let jm = j_matrix(n);
    let mut rep = FInvarianceReport { samples, unitary: 0.0, reflection: 0.0, shift: 0.0 };
    for _ in 0..samples {
        let a = sym_part(&DMatrix::from_fn(d, d, |_, _| rng.gen_range(-2.0..2.0))) + &jm * rng.gen_range(-1.0..1.0);
        let base = f(&a)?;
        let m = UnitaryRotation::random(n, rng).real_form();
        rep.unitary = rep.unitary.max(rel_diff(base, f(&(m.transpose() * &a * &m))?));
        rep.reflection = rep.reflection.max(rel_diff(base, f(&(&gm * &a * &gm))?));
        let alpha = rng.gen_range(-alpha_max..=alpha_max);
        rep.shift = rep.shift.max(rel_diff(base, f(&(&a + &jm * alpha))?));
    }
    Ok(rep)
}
