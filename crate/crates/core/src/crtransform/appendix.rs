//! Closed-form horizontal derivatives of the coordinates of the involutive
//! inversion `(x, y, t) -> (x', y', t')`, and the orthogonal matrix `E` that
//! transports horizontal gradients through it.
//!
//! Shorthand used below: `r2 = |z|^2`, `r4 = |z|^4`, `g4 = |xi|^4 = r4 + t^2`,
//! `a = r4 - t^2`, `b = t r2`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::group::{gauge_norm, Point, SINGULAR_NORM};
use crate::structure::{apply_j, g_matrix, j_matrix, outer};

struct Scalars {
    r2: f64,
    t: f64,
    g4: f64,
    a: f64,
    b: f64,
}

fn scalars(p: &Point) -> Result<Scalars> {
    let norm = gauge_norm(p);
    if norm < SINGULAR_NORM {
        return Err(Error::Singular { op: "check_invert", norm });
    }
    let r2 = p.z_norm2();
    let t = p.t();
    let r4 = r2 * r2;
    Ok(Scalars { r2, t, g4: r4 + t * t, a: r4 - t * t, b: t * r2 })
}

fn kd(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// First horizontal and vertical derivatives of the inversion coordinates.
/// Matrices are indexed `(j, h)`: derivative direction `j`, component `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstDerivs {
    pub x_of_xh: DMatrix<f64>,
    pub x_of_yh: DMatrix<f64>,
    pub y_of_xh: DMatrix<f64>,
    pub y_of_yh: DMatrix<f64>,
    /// `X_j t'`
    pub x_of_t: DVector<f64>,
    /// `Y_j t'`
    pub y_of_t: DVector<f64>,
    /// `T x'_h`
    pub t_of_xh: DVector<f64>,
    /// `T y'_h`
    pub t_of_yh: DVector<f64>,
    /// `T t'`
    pub t_of_t: f64,
}

impl FirstDerivs {
    /// Horizontal gradient of `x'_h`.
    pub fn hgrad_x(&self, h: usize) -> DVector<f64> {
        let n = self.x_of_xh.nrows();
        DVector::from_fn(2 * n, |a, _| if a < n { self.x_of_xh[(a, h)] } else { self.y_of_xh[(a - n, h)] })
    }

    pub fn hgrad_y(&self, h: usize) -> DVector<f64> {
        let n = self.x_of_xh.nrows();
        DVector::from_fn(2 * n, |a, _| if a < n { self.x_of_yh[(a, h)] } else { self.y_of_yh[(a - n, h)] })
    }

    pub fn hgrad_t(&self) -> DVector<f64> {
        let n = self.x_of_t.len();
        DVector::from_fn(2 * n, |a, _| if a < n { self.x_of_t[a] } else { self.y_of_t[a - n] })
    }
}

pub fn appendix_first_derivs(p: &Point) -> Result<FirstDerivs> {
    let Scalars { r2, t, g4, a, b } = scalars(p)?;
    let n = p.dim();
    let (x, y) = (p.x(), p.y());
    let g8 = g4 * g4;

    let x_of_xh = DMatrix::from_fn(n, n, |j, h| {
        -t / g4 * kd(j, h) + (2.0 * a * (y[h] * x[j] - x[h] * y[j]) + 4.0 * b * (x[j] * x[h] + y[j] * y[h])) / g8
    });
    let x_of_yh = DMatrix::from_fn(n, n, |j, h| {
        -r2 / g4 * kd(j, h) + (2.0 * a * (x[j] * x[h] + y[h] * y[j]) + 4.0 * b * (y[j] * x[h] - x[j] * y[h])) / g8
    });
    Ok(FirstDerivs {
        y_of_yh: -&x_of_xh,
        y_of_xh: x_of_yh.clone(),
        x_of_xh,
        x_of_yh,
        x_of_t: DVector::from_fn(n, |j, _| (2.0 * a * y[j] - 4.0 * b * x[j]) / g8),
        y_of_t: DVector::from_fn(n, |j, _| (-2.0 * a * x[j] - 4.0 * b * y[j]) / g8),
        t_of_xh: DVector::from_fn(n, |h, _| (-a * x[h] + 2.0 * b * y[h]) / g8),
        t_of_yh: DVector::from_fn(n, |h, _| (a * y[h] + 2.0 * b * x[h]) / g8),
        t_of_t: a / g8,
    })
}

/// Heisenberg Hessians of the inversion coordinates, in the crate layout
/// (row `a`, column `b` holds `V_b V_a`).
#[derive(Clone, Debug, PartialEq)]
pub struct SecondDerivs {
    pub x: Vec<DMatrix<f64>>,
    pub y: Vec<DMatrix<f64>>,
    pub t: DMatrix<f64>,
}

pub fn appendix_second_derivs(p: &Point) -> Result<SecondDerivs> {
    let Scalars { r2, t, g4, a, b } = scalars(p)?;
    let n = p.dim();
    let (x, y) = (p.x(), p.y());
    let g8 = g4 * g4;
    let g12 = g8 * g4;
    let c = 4.0 * b; // 4 t |z|^2
    let ma = -a; // t^2 - |z|^4

    // X_j X_i x'_h
    let xx = |i: usize, h: usize, j: usize| {
        kd(i, h) / g8 * (2.0 * ma * y[j] + c * x[j])
            - 8.0 / g12
                * (r2 * x[j] + t * y[j])
                * (2.0 * a * (x[i] * y[h] - y[i] * x[h]) + c * (x[i] * x[h] + y[i] * y[h]))
            + (8.0 * (r2 * x[j] - t * y[j]) * (x[i] * y[h] - y[i] * x[h])
                + 8.0 * (t * x[j] + r2 * y[j]) * (x[i] * x[h] + y[i] * y[h])
                + kd(i, j) * (2.0 * a * y[h] + c * x[h])
                + kd(j, h) * (2.0 * ma * y[i] + c * x[i]))
                / g8
    };
    // X_j Y_i x'_h
    let xy = |i: usize, h: usize, j: usize| {
        kd(i, h) / g8 * (2.0 * a * x[j] + c * y[j])
            - 8.0 / g12
                * (r2 * x[j] + t * y[j])
                * (2.0 * a * (y[i] * y[h] + x[i] * x[h]) + c * (y[i] * x[h] - x[i] * y[h]))
            + (8.0 * (r2 * x[j] - t * y[j]) * (y[i] * y[h] + x[i] * x[h])
                + 8.0 * (t * x[j] + r2 * y[j]) * (y[i] * x[h] - x[i] * y[h])
                + kd(i, j) * (2.0 * a * x[h] - c * y[h])
                + kd(j, h) * (2.0 * a * x[i] + c * y[i]))
                / g8
    };
    // Y_j X_i x'_h
    let yx = |i: usize, h: usize, j: usize| {
        kd(i, h) / g8 * (2.0 * a * x[j] + c * y[j])
            + 8.0 / g12
                * (r2 * y[j] - t * x[j])
                * (2.0 * a * (x[h] * y[i] - x[i] * y[h]) - c * (y[i] * y[h] + x[i] * x[h]))
            - (8.0 * (r2 * y[j] + t * x[j]) * (y[i] * x[h] - x[i] * y[h])
                + 8.0 * (r2 * x[j] - t * y[j]) * (y[i] * y[h] + x[i] * x[h])
                + kd(i, j) * (2.0 * a * x[h] - c * y[h])
                + kd(j, h) * (2.0 * ma * x[i] - c * y[i]))
                / g8
    };
    // Y_j Y_i x'_h
    let yy = |i: usize, h: usize, j: usize| {
        kd(i, h) / g8 * (2.0 * a * y[j] - c * x[j])
            - 8.0 / g12
                * (r2 * y[j] - t * x[j])
                * (2.0 * a * (y[i] * y[h] + x[i] * x[h]) + c * (y[i] * x[h] - x[i] * y[h]))
            + (8.0 * (r2 * y[j] + t * x[j]) * (y[i] * y[h] + x[i] * x[h])
                + 8.0 * (r2 * x[j] - t * y[j]) * (x[i] * y[h] - y[i] * x[h])
                + kd(i, j) * (2.0 * a * y[h] + c * x[h])
                + kd(j, h) * (2.0 * a * y[i] - c * x[i]))
                / g8
    };

    let assemble = |f: &dyn Fn(usize, usize, usize, usize, usize) -> f64| {
        DMatrix::from_fn(2 * n, 2 * n, |row, col| f(row / n, row % n, col / n, col % n, 0))
    };

    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for h in 0..n {
        // (row block, i, column block, j): entry V_b(j) V_a(i)
        xs.push(assemble(&|rb, i, cb, j, _| match (rb, cb) {
            (0, 0) => xx(i, h, j),
            (0, _) => yx(i, h, j),
            (_, 0) => xy(i, h, j),
            _ => yy(i, h, j),
        }));
        ys.push(assemble(&|rb, i, cb, j, _| match (rb, cb) {
            (0, 0) => xy(i, h, j),
            (0, _) => yy(i, h, j),
            (_, 0) => -xx(i, h, j),
            _ => -yx(i, h, j),
        }));
    }

    let txx = |i: usize, j: usize| {
        -8.0 / g12 * (r2 * x[j] + t * y[j]) * (2.0 * a * y[i] - c * x[i])
            + (8.0 * (r2 * x[j] - t * y[j]) * y[i] - 8.0 * (t * x[j] + r2 * y[j]) * x[i] - c * kd(i, j)) / g8
    };
    let txy = |i: usize, j: usize| {
        -8.0 / g12 * (r2 * x[j] + t * y[j]) * (2.0 * ma * x[i] - c * y[i])
            + (8.0 * (t * y[j] - r2 * x[j]) * x[i] - 8.0 * (t * x[j] + r2 * y[j]) * y[i] + 2.0 * ma * kd(i, j))
                / g8
    };
    let tyy = |i: usize, j: usize| {
        -8.0 / g12 * (r2 * y[j] - t * x[j]) * (2.0 * ma * x[i] - c * y[i])
            + (8.0 * (r2 * x[j] - t * y[j]) * y[i] - 8.0 * (r2 * y[j] + t * x[j]) * x[i] - c * kd(i, j)) / g8
    };
    let t_of_t = a / g8;
    // Y_j X_i t' from the bracket [X_i, Y_j] = -4 T delta_ij.
    let tyx = |i: usize, j: usize| txy(j, i) + 4.0 * kd(i, j) * t_of_t;
    let tm = assemble(&|rb, i, cb, j, _| match (rb, cb) {
        (0, 0) => txx(i, j),
        (0, _) => tyx(i, j),
        (_, 0) => txy(i, j),
        _ => tyy(i, j),
    });

    Ok(SecondDerivs { x: xs, y: ys, t: tm })
}

/// The transport matrix `E` at a point, with its blocks `R`, `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransportE {
    pub e: DMatrix<f64>,
    pub r: DMatrix<f64>,
    pub s: DMatrix<f64>,
}

impl TransportE {
    /// `[[R, S], [S, -R]]`.
    pub fn block_form(&self) -> DMatrix<f64> {
        let n = self.r.nrows();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(&self.r);
        m.view_mut((0, n), (n, n)).copy_from(&self.s);
        m.view_mut((n, 0), (n, n)).copy_from(&self.s);
        m.view_mut((n, n), (n, n)).copy_from(&(-&self.r));
        m
    }

    /// `max |E E^T - I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let k = self.e.nrows();
        (&self.e * self.e.transpose() - DMatrix::identity(k, k)).amax()
    }

    /// `max |(R + iS)(R + iS)^* - I|` over real and imaginary parts.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.r.nrows();
        let re = &self.r * self.r.transpose() + &self.s * self.s.transpose() - DMatrix::identity(n, n);
        let im = &self.s * self.r.transpose() - &self.r * self.s.transpose();
        re.amax().max(im.amax())
    }
}

pub fn matrix_e(p: &Point) -> Result<TransportE> {
    let Scalars { r2, t, g4, a, b } = scalars(p)?;
    let n = p.dim();
    let g2 = g4.sqrt();
    let g6 = g4 * g2;
    let z = p.z_vector();
    let jz = apply_j(&z);
    let inner = DMatrix::identity(2 * n, 2 * n) * (-t / g2)
        + j_matrix(n) * (r2 / g2)
        + ((outer(&z, &jz) - outer(&jz, &z)) * (2.0 * a) + (outer(&z, &z) + outer(&jz, &jz)) * (4.0 * b)) / g6;
    let e = inner * g_matrix(n);

    let x = DVector::from_column_slice(p.x());
    let y = DVector::from_column_slice(p.y());
    let id = DMatrix::<f64>::identity(n, n);
    let r = &id * (-t / g2)
        + ((outer(&x, &y) - outer(&y, &x)) * (2.0 * a) + (outer(&x, &x) + outer(&y, &y)) * (4.0 * b)) / g6;
    let s = &id * (-r2 / g2)
        + ((outer(&x, &x) + outer(&y, &y)) * (2.0 * a) + (outer(&y, &x) - outer(&x, &y)) * (4.0 * b)) / g6;
    Ok(TransportE { e, r, s })
}
