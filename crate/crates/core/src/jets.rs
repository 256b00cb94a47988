//! Second-order forward-mode differentiation and horizontal derivative data.
//!
//! A [`Jet2`] carries the value, Euclidean gradient and Euclidean Hessian of a
//! scalar field with respect to the `2n + 1` coordinates `(x, y, t)`. Every
//! operation propagates exact first and second derivatives through the chain
//! and product rules; the Hessian is only ever updated by symmetric terms.
//!
//! [`horizontal_from_euclidean`] turns that data into the horizontal gradient
//! and the (non-symmetric) Heisenberg Hessian along the frame
//!
//! ```text
//! X_j = d/dx_j + 2 y_j d/dt,   Y_j = d/dy_j - 2 x_j d/dt,   T = d/dt.
//! ```
//!
//! Heisenberg Hessian layout: row `a`, column `b` holds `V_b V_a u` where
//! `V = (X_1..X_n, Y_1..Y_n)`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::group::Point;
use crate::structure::{apply_j, j_matrix, sym_part};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet2 {
    pub val: f64,
    pub grad: DVector<f64>,
    pub hess: DMatrix<f64>,
}

impl Jet2 {
    pub fn constant(c: f64, dim: usize) -> Self {
        Self { val: c, grad: DVector::zeros(dim), hess: DMatrix::zeros(dim, dim) }
    }

    /// The coordinate function `e_index` with value `value`.
    pub fn variable(value: f64, index: usize, dim: usize) -> Self {
        let mut j = Self::constant(value, dim);
        j.grad[index] = 1.0;
        j
    }

    /// Seeds the `2n + 1` coordinate jets at `p`.
    pub fn seed(p: &Point) -> Vec<Jet2> {
        let coords = p.coords();
        let dim = coords.len();
        coords.iter().enumerate().map(|(i, &v)| Self::variable(v, i, dim)).collect()
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    /// A constant with the same dimension as `self`.
    pub fn lift(&self, c: f64) -> Self {
        Self::constant(c, self.dim())
    }

    fn chain(&self, f: f64, df: f64, d2f: f64) -> Self {
        let hess = &self.hess * df + (&self.grad * self.grad.transpose()) * d2f;
        Self { val: f, grad: &self.grad * df, hess }
    }

    pub fn exp(&self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    pub fn try_ln(&self) -> Result<Self> {
        let a = self.val;
        if !(a > 0.0) {
            return Err(Error::JetDomain { op: "log", value: a });
        }
        Ok(self.chain(a.ln(), 1.0 / a, -1.0 / (a * a)))
    }

    pub fn try_sqrt(&self) -> Result<Self> {
        let a = self.val;
        if !(a > 0.0) {
            return Err(Error::JetDomain { op: "sqrt", value: a });
        }
        let s = a.sqrt();
        Ok(self.chain(s, 0.5 / s, -0.25 / (s * a)))
    }

    pub fn try_recip(&self) -> Result<Self> {
        let a = self.val;
        if a == 0.0 || !a.is_finite() {
            return Err(Error::JetDomain { op: "division", value: a });
        }
        let r = 1.0 / a;
        Ok(self.chain(r, -r * r, 2.0 * r * r * r))
    }

    pub fn try_div(&self, rhs: &Jet2) -> Result<Self> {
        Ok(self * &rhs.try_recip()?)
    }

    /// `self^r`. Integer exponents accept any base (nonzero when `r < 0`);
    /// other exponents require a positive base.
    pub fn try_powf(&self, r: f64) -> Result<Self> {
        let a = self.val;
        if r == 0.0 {
            return Ok(self.lift(1.0));
        }
        if r.fract() == 0.0 && r.abs() < 1e9 {
            let k = r as i32;
            if k < 0 && a == 0.0 {
                return Err(Error::JetDomain { op: "pow", value: a });
            }
            let d1 = r * a.powi(k - 1);
            let d2 = if k == 1 { 0.0 } else { r * (r - 1.0) * a.powi(k - 2) };
            return Ok(self.chain(a.powi(k), d1, d2));
        }
        if !(a > 0.0) {
            return Err(Error::JetDomain { op: "pow", value: a });
        }
        let v = a.powf(r);
        Ok(self.chain(v, r * v / a, r * (r - 1.0) * v / (a * a)))
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

impl Add<&Jet2> for &Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &Jet2) -> Jet2 {
        Jet2 { val: self.val + rhs.val, grad: &self.grad + &rhs.grad, hess: &self.hess + &rhs.hess }
    }
}

impl Sub<&Jet2> for &Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &Jet2) -> Jet2 {
        Jet2 { val: self.val - rhs.val, grad: &self.grad - &rhs.grad, hess: &self.hess - &rhs.hess }
    }
}

impl Mul<&Jet2> for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: &Jet2) -> Jet2 {
        let cross = &self.grad * rhs.grad.transpose();
        let hess = &rhs.hess * self.val + &self.hess * rhs.val + &cross + cross.transpose();
        Jet2 {
            val: self.val * rhs.val,
            grad: &rhs.grad * self.val + &self.grad * rhs.val,
            hess,
        }
    }
}

impl Neg for &Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 { val: -self.val, grad: -&self.grad, hess: -&self.hess }
    }
}

impl Add<f64> for &Jet2 {
    type Output = Jet2;
    fn add(self, rhs: f64) -> Jet2 {
        let mut j = self.clone();
        j.val += rhs;
        j
    }
}

impl Mul<f64> for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        Jet2 { val: self.val * rhs, grad: &self.grad * rhs, hess: &self.hess * rhs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Jet2> for Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: Jet2) -> Jet2 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet2> for Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: &Jet2) -> Jet2 {
                (&self).$m(rhs)
            }
        }
        impl $tr<Jet2> for &Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: Jet2) -> Jet2 {
                self.$m(&rhs)
            }
        }
        impl $tr<f64> for Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: f64) -> Jet2 {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Mul, mul);

impl Sub<Jet2> for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        &self - &rhs
    }
}

impl Sub<&Jet2> for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &Jet2) -> Jet2 {
        &self - rhs
    }
}

impl Sub<Jet2> for &Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self - &rhs
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        -&self
    }
}

/// Horizontal derivative data of a scalar field at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalJet {
    pub val: f64,
    /// `(X_1 u, .., X_n u, Y_1 u, .., Y_n u)`.
    pub hgrad: DVector<f64>,
    /// Heisenberg Hessian; row `a`, column `b` is `V_b V_a u`.
    pub hhess: DMatrix<f64>,
    /// `T u = du/dt`.
    pub tu: f64,
}

impl HorizontalJet {
    pub fn dim(&self) -> usize {
        self.hgrad.len() / 2
    }

    pub fn sym_hessian(&self) -> DMatrix<f64> {
        sym_part(&self.hhess)
    }
}

/// `grad_H u = grad_z u + 2 u_t J z`, and
/// `hess_H u = hess_z u + 2 d_t grad_z u (x) Jz + 2 Jz (x) d_t grad_z u + 4 u_tt Jz (x) Jz + 2 u_t J`.
pub fn horizontal_from_euclidean(j: &Jet2, p: &Point) -> HorizontalJet {
    let n = p.dim();
    let m = 2 * n;
    assert_eq!(j.dim(), m + 1, "jet dimension does not match the point");
    let jz = apply_j(&p.z_vector());
    let grad_z = j.grad.rows(0, m).into_owned();
    let u_t = j.grad[m];
    let u_tt = j.hess[(m, m)];
    let dt_grad_z = j.hess.view((0, m), (m, 1)).column(0).into_owned();

    let hgrad = &grad_z + &jz * (2.0 * u_t);
    let mixed = &dt_grad_z * jz.transpose() * 2.0;
    let hhess = j.hess.view((0, 0), (m, m)).into_owned()
        + &mixed
        + mixed.transpose()
        + &jz * jz.transpose() * (4.0 * u_tt)
        + j_matrix(n) * (2.0 * u_t);
    HorizontalJet { val: j.val, hgrad, hhess, tu: u_t }
}

pub fn sublaplacian(h: &HorizontalJet) -> f64 {
    h.hhess.trace()
}

/// `sum_j u_xx + u_yy + 4 y_j u_xt - 4 x_j u_yt + 4 (x_j^2 + y_j^2) u_tt`,
/// read directly off the Euclidean jet.
pub fn sublaplacian_coordinates(j: &Jet2, p: &Point) -> f64 {
    let n = p.dim();
    let m = 2 * n;
    let (x, y) = (p.x(), p.y());
    let h = &j.hess;
    (0..n)
        .map(|k| {
            h[(k, k)] + h[(n + k, n + k)] + 4.0 * y[k] * h[(k, m)] - 4.0 * x[k] * h[(n + k, m)]
                + 4.0 * (x[k] * x[k] + y[k] * y[k]) * h[(m, m)]
        })
        .sum()
}

/// `lap_z u + 4 |z|^2 u_tt + 4 d_t <Jz, grad_z u>`.
pub fn sublaplacian_expanded(j: &Jet2, p: &Point) -> f64 {
    let m = 2 * p.dim();
    let jz = apply_j(&p.z_vector());
    let lap_z: f64 = (0..m).map(|a| j.hess[(a, a)]).sum();
    let twist: f64 = (0..m).map(|a| jz[a] * j.hess[(a, m)]).sum();
    lap_z + 4.0 * p.z_norm2() * j.hess[(m, m)] + 4.0 * twist
}

/// Splits the Heisenberg Hessian into its symmetric part and the `T u`
/// recovered from the antisymmetric part `2 T u J`.
pub fn split_hessian(h: &HorizontalJet) -> (DMatrix<f64>, f64) {
    let n = h.dim();
    let anti = &h.hhess - h.hhess.transpose();
    let tu = (0..n).map(|i| anti[(i, n + i)]).sum::<f64>() / (4.0 * n as f64);
    (sym_part(&h.hhess), tu)
}

/// Residuals of `[X_i, Y_j] u = -4 T u delta_ij`, `[X_i, X_j] u = 0` and
/// `[Y_i, Y_j] u = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutatorResidual {
    pub xy: f64,
    pub xx: f64,
    pub yy: f64,
    /// Magnitude of the largest term entering the commutators.
    pub scale: f64,
}

impl CommutatorResidual {
    pub fn max_abs(&self) -> f64 {
        self.xy.abs().max(self.xx.abs()).max(self.yy.abs())
    }

    pub fn relative(&self) -> f64 {
        self.max_abs() / self.scale.max(1e-30)
    }
}

/// One horizontal field written as `d/dz_a + c(z) d/dt` with `c` linear in `z`.
#[derive(Clone, Copy)]
struct FrameField {
    axis: usize,
    /// `(coordinate index, slope)` of the linear `t`-coefficient.
    coeff: (usize, f64),
}

impl FrameField {
    fn of(a: usize, n: usize) -> Self {
        if a < n {
            Self { axis: a, coeff: (n + a, 2.0) }
        } else {
            Self { axis: a, coeff: (a - n, -2.0) }
        }
    }

    fn c(&self, p: &Point) -> f64 {
        self.coeff.1 * p.z()[self.coeff.0]
    }

    fn dc(&self, axis: usize) -> f64 {
        if axis == self.coeff.0 {
            self.coeff.1
        } else {
            0.0
        }
    }
}

/// `A (B u)` for frame fields `A`, `B`, expanded into Euclidean derivatives.
fn apply_pair(j: &Jet2, p: &Point, outer: FrameField, inner: FrameField) -> (f64, f64) {
    let m = 2 * p.dim();
    let (a, b) = (outer.axis, inner.axis);
    let (ca, cb) = (outer.c(p), inner.c(p));
    let h = &j.hess;
    let terms = [
        h[(a, b)],
        ca * h[(b, m)],
        inner.dc(a) * j.grad[m],
        cb * h[(m, a)],
        cb * ca * h[(m, m)],
    ];
    let sum = terms.iter().sum();
    let scale = terms.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    (sum, scale)
}

pub fn commutator_check(j: &Jet2, p: &Point, i: usize, k: usize) -> CommutatorResidual {
    let n = p.dim();
    assert!(i < n && k < n);
    let (xi, xk) = (FrameField::of(i, n), FrameField::of(k, n));
    let (yi, yk) = (FrameField::of(n + i, n), FrameField::of(n + k, n));
    let ut = j.grad[2 * n];
    let delta = if i == k { 1.0 } else { 0.0 };

    let (xiyk, s1) = apply_pair(j, p, xi, yk);
    let (ykxi, s2) = apply_pair(j, p, yk, xi);
    let (xixk, s3) = apply_pair(j, p, xi, xk);
    let (xkxi, s4) = apply_pair(j, p, xk, xi);
    let (yiyk, s5) = apply_pair(j, p, yi, yk);
    let (ykyi, s6) = apply_pair(j, p, yk, yi);

    let scale = [s1, s2, s3, s4, s5, s6, 4.0 * ut.abs()].into_iter().fold(0.0, f64::max);
    CommutatorResidual {
        xy: (xiyk - ykxi) + 4.0 * ut * delta,
        xx: xixk - xkxi,
        yy: yiyk - ykyi,
        scale,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(x: f64, y: f64, t: f64) -> Point {
        Point::new(&[x], &[y], t)
    }

    #[test]
    fn constant_jet_is_flat() {
        let c = Jet2::constant(3.5, 3);
        assert_eq!(c.grad, DVector::zeros(3));
        assert_eq!(c.hess, DMatrix::zeros(3, 3));
    }

    #[test]
    fn square_of_coordinate() {
        let x = Jet2::variable(0.5, 0, 3);
        let sq = &x * &x;
        assert_eq!(sq.val, 0.25);
        assert_eq!(sq.grad[0], 1.0);
        assert_eq!(sq.hess[(0, 0)], 2.0);
        assert_eq!(sq.hess.amax(), 2.0);
    }

    #[test]
    fn exp_of_t_at_zero() {
        let t = Jet2::variable(0.0, 2, 3);
        let e = t.exp();
        assert_eq!(e.val, 1.0);
        assert_eq!(e.grad, DVector::from_vec(vec![0.0, 0.0, 1.0]));
        assert_eq!(e.hess[(2, 2)], 1.0);
        assert_eq!(e.hess.sum(), 1.0);
    }

    #[test]
    fn domain_errors_name_the_operation() {
        let z = Jet2::constant(0.0, 3);
        assert_eq!(z.try_ln().unwrap_err(), Error::JetDomain { op: "log", value: 0.0 });
        assert!(matches!(z.try_sqrt(), Err(Error::JetDomain { op: "sqrt", .. })));
        assert!(matches!(z.try_recip(), Err(Error::JetDomain { op: "division", .. })));
        assert!(matches!(z.lift(-1.0).try_powf(0.5), Err(Error::JetDomain { op: "pow", .. })));
        assert!(z.lift(-2.0).try_powf(3.0).is_ok());
        assert!(z.try_powf(-1.0).is_err());
    }

    #[test]
    fn integer_powers_are_exact_on_polynomials() {
        let x = Jet2::variable(-1.5, 0, 1);
        let c = x.try_powf(3.0).unwrap();
        assert_eq!(c.val, -3.375);
        assert_eq!(c.grad[0], 3.0 * 2.25);
        assert_eq!(c.hess[(0, 0)], 6.0 * -1.5);
        let sq = Jet2::variable(0.0, 0, 1).try_powf(2.0).unwrap();
        assert_eq!(sq.hess[(0, 0)], 2.0);
    }

    #[test]
    fn horizontal_jet_of_constant() {
        let p = p1(0.3, -0.4, 0.8);
        let h = horizontal_from_euclidean(&Jet2::constant(1.0, 3), &p);
        assert_eq!(h.hgrad.amax(), 0.0);
        assert_eq!(h.hhess.amax(), 0.0);
        assert_eq!(h.tu, 0.0);
    }

    #[test]
    fn horizontal_jet_of_t() {
        let p = p1(0.3, -0.4, 0.0);
        let h = horizontal_from_euclidean(&Jet2::variable(0.0, 2, 3), &p);
        // 2 J z = (2y, -2x)
        assert_eq!(h.hgrad, DVector::from_vec(vec![-0.8, -0.6]));
        assert_eq!(h.hhess, j_matrix(1) * 2.0);
        assert_eq!(h.tu, 1.0);
        let (sym, tu) = split_hessian(&h);
        assert_eq!(sym.amax(), 0.0);
        assert_eq!(tu, 1.0);
    }

    #[test]
    fn horizontal_jet_of_znorm2() {
        let p = Point::new(&[0.3, 0.2], &[-0.4, 1.0], 0.9);
        let seeds = Jet2::seed(&p);
        let mut r2 = Jet2::constant(0.0, 5);
        for s in &seeds[..4] {
            r2 = r2 + s * s;
        }
        let h = horizontal_from_euclidean(&r2, &p);
        assert_eq!(h.hgrad, p.z_vector() * 2.0);
        assert_eq!(sublaplacian(&h), 8.0);
        let (sym, tu) = split_hessian(&h);
        assert_eq!(tu, 0.0);
        assert_eq!(sym, h.hhess);
    }

    #[test]
    fn hessian_at_origin_reduces_to_euclidean() {
        let p = Point::origin(1);
        let s = Jet2::seed(&p);
        let u = (&s[0] * &s[1] + &s[2] * 3.0 + &s[0] * &s[0]).exp();
        let h = horizontal_from_euclidean(&u, &p);
        assert_eq!(h.hgrad, u.grad.rows(0, 2).into_owned());
        let expected = u.hess.view((0, 0), (2, 2)).into_owned() + j_matrix(1) * (2.0 * u.grad[2]);
        assert_eq!(h.hhess, expected);
    }

    #[test]
    fn commutators_of_simple_fields() {
        let p = p1(0.7, -0.2, 0.4);
        let s = Jet2::seed(&p);
        let linear = &s[0] * 2.0 + &s[1] * -1.0 + &s[2] * 0.5;
        let r = commutator_check(&linear, &p, 0, 0);
        // the bracket itself is -4 T u; residual is against that value
        assert_eq!(r.max_abs(), 0.0);
        let xy = &s[0] * &s[1];
        assert_eq!(commutator_check(&xy, &p, 0, 0).max_abs(), 0.0);
        let tx = &s[2] * &s[0];
        let r = commutator_check(&tx, &p, 0, 0);
        assert!(r.max_abs() <= 1e-10 * r.scale);
    }
}
