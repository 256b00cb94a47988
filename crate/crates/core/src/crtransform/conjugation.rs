//! Fields with a prescribed horizontal 2-jet, and the closed-form Hessians
//! obtained by conjugating such a field with the map
//! `psi = [Dilate(lambda^{-2}), CheckInvert]`.

use nalgebra::{DMatrix, DVector};

use crate::crtransform::{CRMap, Generator};
use crate::error::{Error, Result};
use crate::fields::{FnField, SharedField};
use crate::group::{homogeneous_dim, invert, Point};
use crate::jets::Jet2;
use crate::structure::{apply_j, g_matrix, j_matrix, max_asymmetry, outer};

/// A positive smooth field with `u(xi0) = s`, `grad_H u(xi0) = v` and
/// `hess_H u(xi0) = sym + c J`.
///
/// The profile is `w(zeta) = s exp(<a, zeta> + zeta^T B zeta / 2)` with
/// Euclidean data `grad w(0) = (v, c/2)` and `hess w(0) = diag(sym, 1)`,
/// pulled back along `xi -> xi o xi0^{-1}`. The exponential is positive
/// everywhere, so no cut-off is needed.
pub fn prescribe_jet(xi0: &Point, s: f64, v: &DVector<f64>, sym: &DMatrix<f64>, c: f64) -> Result<SharedField> {
    let n = xi0.dim();
    if !(s > 0.0) {
        return Err(Error::NonPositiveField(s));
    }
    if v.len() != 2 * n || sym.nrows() != 2 * n || sym.ncols() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, got: v.len() });
    }
    let asym = max_asymmetry(sym);
    if asym > 1e-10 {
        return Err(Error::NotSymmetric(asym));
    }
    let d = 2 * n + 1;
    let mut g = DVector::zeros(d);
    g.rows_mut(0, 2 * n).copy_from(v);
    g[2 * n] = c / 2.0;
    let mut h = DMatrix::zeros(d, d);
    h.view_mut((0, 0), (2 * n, 2 * n)).copy_from(sym);
    h[(2 * n, 2 * n)] = 1.0;
    let a = &g / s;
    let b = &h / s - &a * a.transpose();
    let shift = Generator::Translate(invert(xi0));
    Ok(FnField::new(n, move |coords: &[Jet2]| {
        let zeta = shift.apply_jets(coords)?;
        let mut q = coords[0].lift(0.0);
        for i in 0..d {
            q = q + &zeta[i] * a[i];
            for k in 0..d {
                if b[(i, k)] != 0.0 {
                    q = q + &zeta[i] * &zeta[k] * (0.5 * b[(i, k)]);
                }
            }
        }
        Ok(q.exp() * s)
    })
    .shared())
}

/// Splits `U` in `S + J R` into `(sym(U), c)` with `U = sym(U) + c J`.
pub fn split_u(u: &DMatrix<f64>) -> (DMatrix<f64>, f64) {
    let n = u.nrows() / 2;
    let anti = (u - u.transpose()) * 0.5;
    let c = (0..n).map(|i| anti[(i, n + i)]).sum::<f64>() / n as f64;
    ((u + u.transpose()) * 0.5, c)
}

/// `psi = [Dilate(lambda^{-2}), CheckInvert]`, an involution.
pub fn pole_map(lambda: f64) -> Result<CRMap> {
    Ok(CRMap::new(vec![Generator::dilate(lambda.powi(-2))?, Generator::CheckInvert]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleSign {
    /// `xi0 = (0, 0, lambda^2)`
    North,
    /// `xi0 = (0, 0, -lambda^2)`
    South,
}

impl PoleSign {
    pub fn point(self, n: usize, lambda: f64) -> Point {
        let t = lambda * lambda;
        Point::from_z(vec![0.0; 2 * n], if self == PoleSign::North { t } else { -t })
    }
}

/// Hessian of `phi_psi` at `psi^{-1}(xi0)` for `xi0` on the vertical axis,
/// given `phi(xi0) = 1`, `grad_H phi(xi0) = 0`, `hess_H phi(xi0) = U`:
/// `-+(Q-2) lambda^{-2} J + G U G`.
pub fn conjugate_jet(lambda: f64, sign: PoleSign, u: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositiveScale(lambda));
    }
    let n = u.nrows() / 2;
    let q = homogeneous_dim(n) as f64;
    let g = g_matrix(n);
    let s = if sign == PoleSign::North { -1.0 } else { 1.0 };
    Ok(j_matrix(n) * (s * (q - 2.0) / (lambda * lambda)) + &g * u * &g)
}

/// Base point `xi0 = -(Q-2) s |v|^{-2} v` (with `t = 0`) and the scale
/// `lambda = (Q-2) s / |v|` for the general conjugation.
pub fn pole_base_point(s: f64, v: &DVector<f64>) -> Result<(Point, f64)> {
    let n = v.len() / 2;
    let q = homogeneous_dim(n) as f64;
    let vn2 = v.norm_squared();
    if vn2 == 0.0 {
        return Err(Error::OutOfRange("gradient must be nonzero".into()));
    }
    let z = v * (-(q - 2.0) * s / vn2);
    Ok((Point::from_z(z.iter().copied().collect(), 0.0), (q - 2.0) * s / vn2.sqrt()))
}

/// `E` at `psi^{-1}(xi0)`: `G (2 |v|^{-2} (Jv v^T - v (Jv)^T) + J^T)`.
pub fn e_at_pole_point(v: &DVector<f64>) -> DMatrix<f64> {
    let n = v.len() / 2;
    let jv = apply_j(v);
    g_matrix(n) * ((outer(&jv, v) - outer(v, &jv)) * (2.0 / v.norm_squared()) + j_matrix(n).transpose())
}

/// Hessian of `phi_psi` at `psi^{-1}(xi0)` for a field with
/// `phi(xi0) = s`, `grad_H phi(xi0) = v`, `hess_H phi(xi0) = U`, where
/// `xi0`, `lambda` come from [`pole_base_point`].
pub fn conjugate_jet_general(s: f64, v: &DVector<f64>, u: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !(s > 0.0) {
        return Err(Error::NonPositiveField(s));
    }
    let n = v.len() / 2;
    let q = homogeneous_dim(n) as f64;
    let vn2 = v.norm_squared();
    if vn2 == 0.0 {
        return Err(Error::OutOfRange("gradient must be nonzero".into()));
    }
    let g = g_matrix(n);
    let j = j_matrix(n);
    let jt = j.transpose();
    let jv = apply_j(v);
    let ut = u.transpose();

    let mut inner = outer(&jv, &jv) * (-q / (q - 2.0) / s)
        + outer(v, v) * (2.0 / (q - 2.0) / s)
        + DMatrix::identity(2 * n, 2 * n) * (vn2 / (q - 2.0) / s)
        + &jt * u * &j;
    inner += (outer(&jv, &jv) * v.dot(&(u * v)) + outer(v, v) * jv.dot(&(u * &jv))
        - outer(v, &jv) * jv.dot(&(u * v))
        - outer(&jv, v) * v.dot(&(u * &jv)))
        * (4.0 / (vn2 * vn2));
    inner += (outer(&jv, &(&jt * &ut * v)) - outer(v, &(&jt * &ut * &jv)) + outer(&(&jt * u * v), &jv)
        - outer(&(&jt * u * &jv), v))
        * (2.0 / vn2);
    Ok(&g * inner * &g)
}
