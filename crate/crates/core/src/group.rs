//! The Heisenberg group `H^n = R^n x R^n x R` as a value type.
//!
//! Coordinates are stored as `z = (x_1..x_n, y_1..y_n)` plus the vertical
//! coordinate `t`. The group law is
//!
//! ```text
//! (x, y, t) o (x', y', t') = (x + x', y + y', t + t' + 2 sum_i (x_i y'_i - y_i x'_i))
//! ```
//!
//! The horizontal frame `X_j = d/dx_j + 2 y_j d/dt`, `Y_j = d/dy_j - 2 x_j d/dt`
//! (see [`crate::jets`]) commutes with right multiplication `p -> p o q` under
//! this law, not with `p -> q o p`. [`translate`] is therefore defined as
//! right multiplication; it is the translation every transformation law in
//! this crate refers to.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};

/// Inputs with a gauge norm below this are treated as the origin by maps that
/// are singular there.
pub const SINGULAR_NORM: f64 = 1e-12;

/// Homogeneous dimension `Q = 2n + 2`.
pub fn homogeneous_dim(n: usize) -> usize {
    2 * n + 2
}

#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    z: Vec<f64>,
    t: f64,
}

impl Point {
    pub fn new(x: &[f64], y: &[f64], t: f64) -> Self {
        assert_eq!(x.len(), y.len(), "x and y must have the same length");
        assert!(!x.is_empty(), "dimension must be at least 1");
        let mut z = Vec::with_capacity(2 * x.len());
        z.extend_from_slice(x);
        z.extend_from_slice(y);
        let p = Self { z, t };
        debug_assert!(p.is_finite());
        p
    }

    /// Builds a point from the horizontal vector `z = (x, y)` and `t`.
    pub fn from_z(z: Vec<f64>, t: f64) -> Self {
        assert!(z.len() >= 2 && z.len() % 2 == 0, "z must have even length >= 2");
        Self { z, t }
    }

    /// Builds a point from `2n + 1` coordinates `(x, y, t)`.
    pub fn from_coords(coords: &[f64]) -> Self {
        let m = coords.len();
        assert!(m >= 3 && m % 2 == 1, "expected 2n + 1 coordinates");
        Self::from_z(coords[..m - 1].to_vec(), coords[m - 1])
    }

    pub fn origin(n: usize) -> Self {
        Self { z: vec![0.0; 2 * n], t: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.z.len() / 2
    }

    pub fn x(&self) -> &[f64] {
        &self.z[..self.dim()]
    }

    pub fn y(&self) -> &[f64] {
        &self.z[self.dim()..]
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn z_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.z)
    }

    /// All `2n + 1` coordinates in `(x, y, t)` order.
    pub fn coords(&self) -> Vec<f64> {
        let mut c = self.z.clone();
        c.push(self.t);
        c
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.z.iter().all(|v| v.is_finite())
    }

    /// `|z|^2`.
    pub fn z_norm2(&self) -> f64 {
        self.z.iter().map(|v| v * v).sum()
    }

    pub fn max_abs_diff(&self, other: &Point) -> f64 {
        self.z
            .iter()
            .zip(&other.z)
            .map(|(a, b)| (a - b).abs())
            .fold((self.t - other.t).abs(), f64::max)
    }
}

fn check_dims(a: &Point, b: &Point) {
    assert_eq!(a.dim(), b.dim(), "points live in different H^n");
}

pub fn compose(a: &Point, b: &Point) -> Point {
    check_dims(a, b);
    let n = a.dim();
    let z: Vec<f64> = a.z.iter().zip(&b.z).map(|(p, q)| p + q).collect();
    let mut twist = 0.0;
    for i in 0..n {
        twist += a.z[i] * b.z[n + i] - a.z[n + i] * b.z[i];
    }
    Point { z, t: a.t + b.t + 2.0 * twist }
}

pub fn invert(a: &Point) -> Point {
    Point { z: a.z.iter().map(|v| -v).collect(), t: -a.t }
}

/// Korányi gauge `(|z|^4 + t^2)^{1/4}`.
pub fn gauge_norm(a: &Point) -> f64 {
    let r2 = a.z_norm2();
    (r2 * r2 + a.t * a.t).sqrt().sqrt()
}

/// `d(a, b) = |b^{-1} o a|`.
pub fn distance(a: &Point, b: &Point) -> f64 {
    gauge_norm(&compose(&invert(b), a))
}

/// Translation by `q` along which the horizontal frame is invariant: `p o q`.
pub fn translate(q: &Point, p: &Point) -> Point {
    compose(p, q)
}

pub fn dilate(lambda: f64, a: &Point) -> Result<Point> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositiveScale(lambda));
    }
    Ok(Point {
        z: a.z.iter().map(|v| lambda * v).collect(),
        t: lambda * lambda * a.t,
    })
}

pub fn rotate(m: &UnitaryRotation, a: &Point) -> Point {
    assert_eq!(m.dim(), a.dim());
    let z = m.real_form() * a.z_vector();
    Point { z: z.iter().copied().collect(), t: a.t }
}

/// `(x, y, t) -> (x, -y, -t)`.
pub fn iota(a: &Point) -> Point {
    let n = a.dim();
    let mut z = a.z.clone();
    for v in &mut z[n..] {
        *v = -*v;
    }
    Point { z, t: -a.t }
}

fn nonsingular(a: &Point, op: &'static str) -> Result<f64> {
    let norm = gauge_norm(a);
    if norm < SINGULAR_NORM {
        return Err(Error::Singular { op, norm });
    }
    Ok(norm)
}

/// The CR inversion
/// `(x, y, t) -> ((x t + y |z|^2), (y t - x |z|^2), -t) / |xi|^4`.
pub fn cr_invert(a: &Point) -> Result<Point> {
    let norm = nonsingular(a, "cr_invert")?;
    let n = a.dim();
    let r2 = a.z_norm2();
    let n4 = norm.powi(4);
    let (x, y, t) = (a.x(), a.y(), a.t);
    let mut z = vec![0.0; 2 * n];
    for i in 0..n {
        z[i] = (x[i] * t + y[i] * r2) / n4;
        z[n + i] = (y[i] * t - x[i] * r2) / n4;
    }
    Ok(Point { z, t: -t / n4 })
}

/// The involutive inversion `cr_invert o iota`:
/// `(-(x t + y |z|^2), (y t - x |z|^2), t) / |xi|^4`.
pub fn check_invert(a: &Point) -> Result<Point> {
    let norm = nonsingular(a, "check_invert")?;
    let n = a.dim();
    let r2 = a.z_norm2();
    let n4 = norm.powi(4);
    let (x, y, t) = (a.x(), a.y(), a.t);
    let mut z = vec![0.0; 2 * n];
    for i in 0..n {
        z[i] = -(x[i] * t + y[i] * r2) / n4;
        z[n + i] = (y[i] * t - x[i] * r2) / n4;
    }
    Ok(Point { z, t: t / n4 })
}

/// An element `M = B + iC` of `U(n)` acting on `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryRotation {
    b: DMatrix<f64>,
    c: DMatrix<f64>,
}

impl UnitaryRotation {
    /// Re-orthonormalizes the complex columns of `B + iC` with one
    /// Gram-Schmidt pass, so the real form is orthogonal to rounding.
    pub fn new(b: DMatrix<f64>, c: DMatrix<f64>) -> Result<Self> {
        let n = b.nrows();
        if b.ncols() != n || c.nrows() != n || c.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: c.nrows() });
        }
        let m = DMatrix::from_fn(n, n, |i, j| Complex::new(b[(i, j)], c[(i, j)]));
        let q = gram_schmidt(m)?;
        Ok(Self {
            b: q.map(|v| v.re),
            c: q.map(|v| v.im),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self { b: DMatrix::identity(n, n), c: DMatrix::zeros(n, n) }
    }

    /// Multiplication by `i`.
    pub fn imaginary_unit(n: usize) -> Self {
        Self { b: DMatrix::zeros(n, n), c: DMatrix::identity(n, n) }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let b = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            let c = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            if let Ok(m) = Self::new(b, c) {
                return m;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.b.nrows()
    }

    pub fn re(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn im(&self) -> &DMatrix<f64> {
        &self.c
    }

    /// `[[B, -C], [C, B]]`.
    pub fn real_form(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(&self.b);
        m.view_mut((0, n), (n, n)).copy_from(&(-&self.c));
        m.view_mut((n, 0), (n, n)).copy_from(&self.c);
        m.view_mut((n, n), (n, n)).copy_from(&self.b);
        m
    }
}

fn gram_schmidt(mut m: DMatrix<Complex<f64>>) -> Result<DMatrix<Complex<f64>>> {
    let n = m.ncols();
    for k in 0..n {
        for j in 0..k {
            let proj: Complex<f64> = (0..n).map(|i| m[(i, j)].conj() * m[(i, k)]).sum();
            for i in 0..n {
                let v = m[(i, j)];
                m[(i, k)] -= proj * v;
            }
        }
        let norm = (0..n).map(|i| m[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-10 {
            return Err(Error::OutOfRange("rotation columns are linearly dependent".into()));
        }
        for i in 0..n {
            m[(i, k)] /= norm;
        }
    }
    Ok(m)
}

/// Uniform sample from the box `[-zr, zr]^{2n} x [-tr, tr]`.
pub fn random_point<R: Rng + ?Sized>(n: usize, zr: f64, tr: f64, rng: &mut R) -> Point {
    let z = (0..2 * n).map(|_| rng.gen_range(-zr..zr)).collect();
    Point::from_z(z, rng.gen_range(-tr..tr))
}

/// Random point whose gauge norm lies in `[lo, hi)`, obtained by dilating a
/// random direction on the unit gauge sphere.
pub fn random_point_in_shell<R: Rng + ?Sized>(n: usize, lo: f64, hi: f64, rng: &mut R) -> Point {
    loop {
        let p = random_point(n, 1.0, 1.0, rng);
        let norm = gauge_norm(&p);
        if norm < 1e-3 {
            continue;
        }
        let target = rng.gen_range(lo..hi);
        return dilate(target / norm, &p).expect("positive scale");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p1(x: f64, y: f64, t: f64) -> Point {
        Point::new(&[x], &[y], t)
    }

    #[test]
    fn compose_hand_example() {
        let r = compose(&p1(1.0, 0.0, 0.0), &p1(0.0, 1.0, 0.0));
        assert_eq!(r, p1(1.0, 1.0, 2.0));
    }

    #[test]
    fn identity_and_inverse() {
        let p = p1(0.3, -1.2, 2.5);
        assert_eq!(compose(&Point::origin(1), &p), p);
        assert_eq!(compose(&p, &invert(&p)), Point::origin(1));
        assert_eq!(invert(&p1(1.0, 2.0, 3.0)), p1(-1.0, -2.0, -3.0));
        assert_eq!(invert(&invert(&p)), p);
    }

    #[test]
    fn gauge_norm_examples() {
        assert_eq!(gauge_norm(&p1(1.0, 0.0, 0.0)), 1.0);
        assert_eq!(gauge_norm(&p1(0.0, 0.0, 1.0)), 1.0);
        let p = p1(0.4, 0.1, -0.7);
        assert_eq!(distance(&p, &p), 0.0);
        assert_eq!(distance(&p, &Point::origin(1)), gauge_norm(&p));
    }

    #[test]
    fn dilation_examples() {
        assert_eq!(dilate(2.0, &p1(1.0, 1.0, 1.0)).unwrap(), p1(2.0, 2.0, 4.0));
        let p = p1(0.2, 0.5, 0.9);
        assert_eq!(dilate(1.0, &p).unwrap(), p);
        assert!(matches!(dilate(0.0, &p), Err(Error::NonPositiveScale(_))));
        assert!(dilate(-1.0, &p).is_err());
    }

    #[test]
    fn rotation_by_i() {
        let m = UnitaryRotation::imaginary_unit(1);
        assert_eq!(rotate(&m, &p1(0.5, 2.0, 3.0)), p1(-2.0, 0.5, 3.0));
        let p = p1(0.5, 2.0, 3.0);
        assert_eq!(rotate(&UnitaryRotation::identity(1), &p), p);
    }

    #[test]
    fn unitary_construction_reorthonormalizes() {
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 0.001, 0.0, 1.0]);
        let c = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.002, 0.0]);
        let m = UnitaryRotation::new(b, c).unwrap();
        let r = m.real_form();
        let err = (&r * r.transpose() - DMatrix::identity(4, 4)).amax();
        assert!(err < 1e-12, "{err}");
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(iota(&Point::origin(1)), Point::origin(1));
        assert_eq!(iota(&p1(1.0, 2.0, 3.0)), p1(1.0, -2.0, -3.0));
        assert_eq!(cr_invert(&p1(0.0, 0.0, 1.0)).unwrap(), p1(0.0, 0.0, -1.0));
        let lam: f64 = 1.7;
        let q = check_invert(&p1(0.0, 0.0, lam * lam)).unwrap();
        assert!((q.t() - lam.powi(-2)).abs() < 1e-15);
        assert!(matches!(cr_invert(&Point::origin(1)), Err(Error::Singular { .. })));
        assert!(check_invert(&Point::origin(2)).is_err());
    }

    #[test]
    fn inversions_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=2 {
            for _ in 0..200 {
                let p = random_point_in_shell(n, 0.1, 10.0, &mut rng);
                let g = gauge_norm(&p);
                let phi = cr_invert(&p).unwrap();
                assert!((gauge_norm(&phi) * g - 1.0).abs() < 1e-12);
                let phi2 = cr_invert(&phi).unwrap();
                let expected = Point::from_z(p.z().iter().map(|v| -v).collect(), p.t());
                assert!(phi2.max_abs_diff(&expected) < 1e-10 * g.max(1.0).powi(2));
                let chk = check_invert(&p).unwrap();
                assert!((gauge_norm(&chk) * g - 1.0).abs() < 1e-12);
                assert!(check_invert(&chk).unwrap().max_abs_diff(&p) < 1e-10 * g.max(1.0).powi(2));
                assert!(chk.max_abs_diff(&cr_invert(&iota(&p)).unwrap()) < 1e-14);
            }
        }
    }

    #[test]
    fn rotation_preserves_gauge() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = UnitaryRotation::random(2, &mut rng);
        for _ in 0..100 {
            let p = random_point(2, 2.0, 2.0, &mut rng);
            let q = rotate(&m, &p);
            assert!((gauge_norm(&q) - gauge_norm(&p)).abs() < 1e-13 * gauge_norm(&p).max(1.0));
        }
    }
}
