//! CR maps as words over five generators, and the fields they transform.
//!
//! A [`CRMap`] applies its generators left to right:
//! `apply_map([g1, g2], p) = g2(g1(p))`. The transformed field is
//!
//! ```text
//! u_psi(xi) = |J_psi(xi)|^{(Q-2)/(2Q)} u(psi(xi))
//! ```
//!
//! and is itself a [`Field`], evaluated on jets by pushing the coordinate
//! jets through every generator. That direct evaluation is the oracle every
//! closed-form law in [`laws`] is compared against.

pub mod appendix;
pub mod laws;
pub mod conjugation;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::{Field, SharedField};
use crate::group::{self, gauge_norm, homogeneous_dim, Point, UnitaryRotation, SINGULAR_NORM};
use crate::jets::Jet2;

pub use appendix::{appendix_first_derivs, appendix_second_derivs, matrix_e, FirstDerivs, SecondDerivs, TransportE};
pub use laws::{closed_form_first, closed_form_second, scalar_invariance_check, sublaplacian_transform_check, Comparison};
pub use conjugation::{conjugate_jet, conjugate_jet_general, pole_base_point, pole_map, prescribe_jet, PoleSign};

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// `p -> p o q`.
    Translate(Point),
    Dilate(f64),
    Rotate(UnitaryRotation),
    Iota,
    CheckInvert,
}

impl Generator {
    pub fn dilate(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::NonPositiveScale(lambda));
        }
        Ok(Generator::Dilate(lambda))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Translate(_) => "translate",
            Generator::Dilate(_) => "dilate",
            Generator::Rotate(_) => "rotate",
            Generator::Iota => "iota",
            Generator::CheckInvert => "check_invert",
        }
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        match self {
            Generator::Translate(q) => Ok(group::translate(q, p)),
            Generator::Dilate(l) => group::dilate(*l, p),
            Generator::Rotate(m) => Ok(group::rotate(m, p)),
            Generator::Iota => Ok(group::iota(p)),
            Generator::CheckInvert => group::check_invert(p),
        }
    }

    /// Jacobian determinant at `p`: `1`, `lambda^Q`, `1`, `1`, `|p|^{-2Q}`.
    pub fn jacobian_det(&self, p: &Point) -> Result<f64> {
        let q = homogeneous_dim(p.dim()) as i32;
        match self {
            Generator::Dilate(l) => Ok(l.powi(q)),
            Generator::CheckInvert => Ok(nonsingular(p)?.powi(-2 * q)),
            _ => Ok(1.0),
        }
    }

    /// The factor `|J|^{(Q-2)/(2Q)}` in closed form.
    pub fn weight(&self, p: &Point) -> Result<f64> {
        let q = homogeneous_dim(p.dim()) as f64;
        match self {
            Generator::Dilate(l) => Ok(l.powf((q - 2.0) / 2.0)),
            Generator::CheckInvert => Ok(nonsingular(p)?.powf(-(q - 2.0))),
            _ => Ok(1.0),
        }
    }

    fn weight_jet(&self, c: &[Jet2]) -> Result<Jet2> {
        let n = (c.len() - 1) / 2;
        let q = homogeneous_dim(n) as f64;
        let one = c[0].lift(1.0);
        match self {
            Generator::Dilate(l) => Ok(one * l.powf((q - 2.0) / 2.0)),
            Generator::CheckInvert => gnorm4_jet(c).try_powf(-(q - 2.0) / 4.0),
            _ => Ok(one),
        }
    }

    /// The generator applied to coordinate jets.
    pub(crate) fn apply_jets(&self, c: &[Jet2]) -> Result<Vec<Jet2>> {
        let n = (c.len() - 1) / 2;
        match self {
            Generator::Translate(q) => {
                let (qx, qy) = (q.x(), q.y());
                let mut out: Vec<Jet2> = c.iter().zip(q.coords()).map(|(j, v)| j + v).collect();
                let mut t = &c[2 * n] + q.t();
                for i in 0..n {
                    t = t + &c[i] * (2.0 * qy[i]) + &c[n + i] * (-2.0 * qx[i]);
                }
                out[2 * n] = t;
                Ok(out)
            }
            Generator::Dilate(l) => {
                let mut out: Vec<Jet2> = c[..2 * n].iter().map(|j| j * *l).collect();
                out.push(&c[2 * n] * (l * l));
                Ok(out)
            }
            Generator::Rotate(m) => {
                let mt = m.real_form();
                let mut out: Vec<Jet2> = (0..2 * n)
                    .map(|a| {
                        (0..2 * n).fold(c[0].lift(0.0), |acc, b| acc + &c[b] * mt[(a, b)])
                    })
                    .collect();
                out.push(c[2 * n].clone());
                Ok(out)
            }
            Generator::Iota => {
                let mut out = c.to_vec();
                for j in &mut out[n..] {
                    *j = -&*j;
                }
                Ok(out)
            }
            Generator::CheckInvert => check_invert_jets(c),
        }
    }
}

fn nonsingular(p: &Point) -> Result<f64> {
    let norm = gauge_norm(p);
    if norm < SINGULAR_NORM {
        return Err(Error::Singular { op: "check_invert", norm });
    }
    Ok(norm)
}

fn znorm2_jet(c: &[Jet2]) -> Jet2 {
    let n = (c.len() - 1) / 2;
    c[..2 * n].iter().fold(c[0].lift(0.0), |acc, j| acc + j * j)
}

fn gnorm4_jet(c: &[Jet2]) -> Jet2 {
    let r2 = znorm2_jet(c);
    let t = &c[c.len() - 1];
    &r2 * &r2 + t * t
}

/// `(-(x t + y |z|^2), y t - x |z|^2, t) / (|z|^4 + t^2)` on jets.
pub(crate) fn check_invert_jets(c: &[Jet2]) -> Result<Vec<Jet2>> {
    let n = (c.len() - 1) / 2;
    let r2 = znorm2_jet(c);
    let t = &c[2 * n];
    let inv = gnorm4_jet(c).try_recip()?;
    let mut out = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        out.push(-((&c[i] * t + &c[n + i] * &r2) * &inv));
    }
    for i in 0..n {
        out.push((&c[n + i] * t - &c[i] * &r2) * &inv);
    }
    out.push(t * &inv);
    Ok(out)
}

/// A word of generators, applied left to right.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CRMap {
    pub word: Vec<Generator>,
}

impl CRMap {
    pub fn new(word: Vec<Generator>) -> Self {
        Self { word }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(g: Generator) -> Self {
        Self { word: vec![g] }
    }

    pub fn then(mut self, g: Generator) -> Self {
        self.word.push(g);
        self
    }

    /// Walks the word, returning the image and the product of the
    /// generator `weight`s at the intermediate points.
    fn walk(&self, p: &Point) -> Result<(Point, f64, f64)> {
        let mut cur = p.clone();
        let mut det = 1.0;
        let mut weight = 1.0;
        for (position, g) in self.word.iter().enumerate() {
            if matches!(g, Generator::CheckInvert) {
                let norm = gauge_norm(&cur);
                if norm < SINGULAR_NORM {
                    return Err(Error::SingularInWord { position, norm });
                }
            }
            det *= g.jacobian_det(&cur)?;
            weight *= g.weight(&cur)?;
            cur = g.apply(&cur)?;
        }
        Ok((cur, det, weight))
    }
}

pub fn apply_map(m: &CRMap, p: &Point) -> Result<Point> {
    Ok(m.walk(p)?.0)
}

pub fn jacobian_det(m: &CRMap, p: &Point) -> Result<f64> {
    Ok(m.walk(p)?.1)
}

/// `|J_psi(p)|^{(Q-2)/(2Q)}` as the product of per-generator weights.
pub fn transform_weight(m: &CRMap, p: &Point) -> Result<f64> {
    Ok(m.walk(p)?.2)
}

/// `u_psi` for the word `m`.
pub struct TransformedField {
    map: CRMap,
    inner: SharedField,
}

impl TransformedField {
    pub fn map(&self) -> &CRMap {
        &self.map
    }
}

impl Field for TransformedField {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eval_jets(&self, coords: &[Jet2]) -> Result<Jet2> {
        let mut cur = coords.to_vec();
        let mut weight = coords[0].lift(1.0);
        for (position, g) in self.map.word.iter().enumerate() {
            if matches!(g, Generator::CheckInvert) {
                let p = Point::from_coords(&cur.iter().map(|j| j.val).collect::<Vec<_>>());
                let norm = gauge_norm(&p);
                if norm < SINGULAR_NORM {
                    return Err(Error::SingularInWord { position, norm });
                }
            }
            weight = weight * g.weight_jet(&cur)?;
            cur = g.apply_jets(&cur)?;
        }
        Ok(weight * self.inner.eval_jets(&cur)?)
    }
}

pub fn transform_field(m: &CRMap, u: SharedField) -> SharedField {
    Arc::new(TransformedField { map: m.clone(), inner: u })
}

struct ScaledTranslate {
    w: SharedField,
    xi: Point,
    lambda: f64,
}

impl Field for ScaledTranslate {
    fn dim(&self) -> usize {
        self.w.dim()
    }

    fn eval_jets(&self, c: &[Jet2]) -> Result<Jet2> {
        let n = self.dim();
        let l = self.lambda;
        let (x, y, t) = (self.xi.x(), self.xi.y(), self.xi.t());
        let mut moved: Vec<Jet2> = (0..2 * n).map(|a| &c[a] * l + self.xi.z()[a]).collect();
        let mut tt = &c[2 * n] * (l * l) + t;
        for i in 0..n {
            tt = tt + &c[i] * (2.0 * l * y[i]) + &c[n + i] * (-2.0 * l * x[i]);
        }
        moved.push(tt);
        let q = homogeneous_dim(n) as f64;
        Ok(self.w.eval_jets(&moved)? * l.powf((q - 2.0) / 2.0))
    }
}

/// `w^{xi, lambda}(eta) = lambda^{(Q-2)/2} w(delta_lambda(eta) o xi)`, the
/// rescaled translate written out directly. Agrees with
/// `transform_field([Dilate(lambda), Translate(xi)], w)`.
pub fn scaled_translate(w: SharedField, xi: &Point, lambda: f64) -> Result<SharedField> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositiveScale(lambda));
    }
    Ok(Arc::new(ScaledTranslate { w, xi: xi.clone(), lambda }))
}
