//! Finite differences for the sublaplacian on `H^1`,
//!
//! ```text
//! Delta_H u = u_xx + u_yy + 4 y u_xt - 4 x u_yt + 4 (x^2 + y^2) u_tt,
//! ```
//!
//! on a node grid over `[-1.2, 1.2]^2 x [-1.4, 1.4]`, together with the
//! barrier Dirichlet problem on `D_1(0)` minus a small gauge ball.

pub mod experiment;
pub mod solver;

use std::io::Write;

use crate::error::{Error, Result};
use crate::group::{distance, gauge_norm, Point};

pub use experiment::{
    barrier_formula, barrier_value, dirichlet_solve, fundamental_convergence, min_principle_check, ConvergenceReport,
    MinPrincipleReport, SolveReport, C0,
};

pub const BOX_Z: f64 = 1.2;
pub const BOX_T: f64 = 1.4;

/// Number of entries in the sublaplacian stencil.
pub const STENCIL_LEN: usize = 15;

/// Node counts and spacings; node `(i, j, k)` sits at
/// `(-1.2 + i h_z, -1.2 + j h_z, -1.4 + k h_t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub nt: usize,
    pub hz: f64,
    pub ht: f64,
}

impl GridSpec {
    /// `n` nodes per axis; `n` must be odd so the origin is a node.
    pub fn cubic(n: usize) -> Result<Self> {
        if n < 5 || n % 2 == 0 {
            return Err(Error::OutOfRange(format!("grid size must be odd and at least 5, got {n}")));
        }
        let m = (n - 1) as f64;
        Ok(Self { nx: n, ny: n, nt: n, hz: 2.0 * BOX_Z / m, ht: 2.0 * BOX_T / m })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny * self.nt
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Linear index with `t` fastest.
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.ny + j) * self.nt + k
    }

    pub fn ijk(&self, idx: usize) -> (usize, usize, usize) {
        (idx / (self.ny * self.nt), (idx / self.nt) % self.ny, idx % self.nt)
    }

    pub fn coords(&self, idx: usize) -> (f64, f64, f64) {
        let (i, j, k) = self.ijk(idx);
        (-BOX_Z + i as f64 * self.hz, -BOX_Z + j as f64 * self.hz, -BOX_T + k as f64 * self.ht)
    }

    pub fn point(&self, idx: usize) -> Point {
        let (x, y, t) = self.coords(idx);
        Point::new(&[x], &[y], t)
    }

    /// Index of the node at the origin.
    pub fn origin(&self) -> usize {
        self.index(self.nx / 2, self.ny / 2, self.nt / 2)
    }

    pub fn on_edge(&self, idx: usize) -> bool {
        let (i, j, k) = self.ijk(idx);
        i == 0 || j == 0 || k == 0 || i + 1 == self.nx || j + 1 == self.ny || k + 1 == self.nt
    }

    /// Stencil entries `(node, weight)` at a node off the grid edge.
    pub fn stencil(&self, idx: usize) -> [(usize, f64); STENCIL_LEN] {
        let (x, y, _) = self.coords(idx);
        let (i, j, k) = self.ijk(idx);
        let w = stencil_weights(x, y, self.hz, self.ht);
        let at = |a: usize, b: usize, c: usize| self.index(a, b, c);
        [
            (idx, w.center),
            (at(i + 1, j, k), w.zz),
            (at(i - 1, j, k), w.zz),
            (at(i, j + 1, k), w.zz),
            (at(i, j - 1, k), w.zz),
            (at(i, j, k + 1), w.tt),
            (at(i, j, k - 1), w.tt),
            (at(i + 1, j, k + 1), w.xt),
            (at(i - 1, j, k - 1), w.xt),
            (at(i + 1, j, k - 1), -w.xt),
            (at(i - 1, j, k + 1), -w.xt),
            (at(i, j + 1, k + 1), w.yt),
            (at(i, j - 1, k - 1), w.yt),
            (at(i, j + 1, k - 1), -w.yt),
            (at(i, j - 1, k + 1), -w.yt),
        ]
    }
}

struct Weights {
    center: f64,
    zz: f64,
    tt: f64,
    xt: f64,
    yt: f64,
}

fn stencil_weights(x: f64, y: f64, hz: f64, ht: f64) -> Weights {
    let tt = 4.0 * (x * x + y * y) / (ht * ht);
    Weights {
        center: -4.0 / (hz * hz) - 2.0 * tt,
        zz: 1.0 / (hz * hz),
        tt,
        xt: 4.0 * y / (4.0 * hz * ht),
        yt: -4.0 * x / (4.0 * hz * ht),
    }
}

/// The stencil applied to a function at an arbitrary point and spacing.
pub fn stencil_at<F: Fn(f64, f64, f64) -> f64>(f: F, x: f64, y: f64, t: f64, hz: f64, ht: f64) -> f64 {
    let w = stencil_weights(x, y, hz, ht);
    w.center * f(x, y, t)
        + w.zz * (f(x + hz, y, t) + f(x - hz, y, t) + f(x, y + hz, t) + f(x, y - hz, t))
        + w.tt * (f(x, y, t + ht) + f(x, y, t - ht))
        + w.xt * (f(x + hz, y, t + ht) + f(x - hz, y, t - ht) - f(x + hz, y, t - ht) - f(x - hz, y, t + ht))
        + w.yt * (f(x, y + hz, t + ht) + f(x, y - hz, t - ht) - f(x, y + hz, t - ht) - f(x, y - hz, t + ht))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeClass {
    Interior,
    BoundaryOuter,
    BoundaryInner,
    Exterior,
}

impl NodeClass {
    /// Code written to the `mask` CSV column.
    pub fn code(self) -> u8 {
        match self {
            NodeClass::Interior => 0,
            NodeClass::BoundaryOuter => 1,
            NodeClass::BoundaryInner => 2,
            NodeClass::Exterior => 3,
        }
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, NodeClass::BoundaryOuter | NodeClass::BoundaryInner)
    }
}

/// `D_R(0)` minus the closed gauge ball `D_r(c)`, classified node by node.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainMask {
    pub spec: GridSpec,
    pub outer_radius: f64,
    pub hole_center: Point,
    pub hole_radius: f64,
    pub classes: Vec<NodeClass>,
}

impl DomainMask {
    /// Nodes within gauge distance `h_z` of a sphere are boundary nodes;
    /// interior nodes whose stencil reaches outside are relabelled as
    /// boundary until every interior stencil stays in the closure.
    pub fn new(spec: GridSpec, outer_radius: f64, hole_center: Point, hole_radius: f64) -> Self {
        let band = spec.hz;
        let classify = |idx: usize| {
            let p = spec.point(idx);
            let d_out = gauge_norm(&p);
            let d_in = distance(&p, &hole_center);
            if (d_in - hole_radius).abs() < band {
                NodeClass::BoundaryInner
            } else if (d_out - outer_radius).abs() < band {
                NodeClass::BoundaryOuter
            } else if d_out < outer_radius && d_in > hole_radius {
                NodeClass::Interior
            } else {
                NodeClass::Exterior
            }
        };
        let mut classes: Vec<NodeClass> = (0..spec.len()).map(classify).collect();
        loop {
            let mut changed = false;
            for idx in 0..spec.len() {
                if classes[idx] != NodeClass::Interior {
                    continue;
                }
                let leaks = spec.on_edge(idx)
                    || spec.stencil(idx).iter().any(|&(nb, _)| classes[nb] == NodeClass::Exterior);
                if leaks {
                    let p = spec.point(idx);
                    let near_hole = (distance(&p, &hole_center) - hole_radius).abs()
                        < (gauge_norm(&p) - outer_radius).abs();
                    classes[idx] = if near_hole { NodeClass::BoundaryInner } else { NodeClass::BoundaryOuter };
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self { spec, outer_radius, hole_center, hole_radius, classes }
    }

    /// `D_1(0)` minus `D_{1/4}(((1/2, 0), 0))`.
    pub fn barrier_domain(spec: GridSpec) -> Self {
        Self::new(spec, 1.0, Point::new(&[0.5], &[0.0], 0.0), 0.25)
    }

    /// The annulus `D_R(0)` minus `D_r(0)`.
    pub fn annulus(spec: GridSpec, inner: f64, outer: f64) -> Self {
        Self::new(spec, outer, Point::origin(1), inner)
    }

    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(|&i| self.classes[i] == NodeClass::Interior)
    }

    pub fn boundary(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(|&i| self.classes[i].is_boundary())
    }

    pub fn count(&self, c: NodeClass) -> usize {
        self.classes.iter().filter(|&&k| k == c).count()
    }
}

/// One value per node of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl GridField {
    pub fn sample<F: Fn(f64, f64, f64) -> f64>(spec: GridSpec, f: F) -> Self {
        let values = (0..spec.len())
            .map(|idx| {
                let (x, y, t) = spec.coords(idx);
                f(x, y, t)
            })
            .collect();
        Self { spec, values }
    }

    /// The stencil at any node off the grid edge.
    pub fn stencil_unchecked(&self, idx: usize) -> f64 {
        self.spec.stencil(idx).iter().map(|&(nb, w)| w * self.values[nb]).sum()
    }

    /// Writes `x,y,t,value,mask` rows, `t` fastest.
    pub fn write_csv<W: Write>(&self, mask: &DomainMask, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,t,value,mask")?;
        for idx in 0..self.spec.len() {
            let (x, y, t) = self.spec.coords(idx);
            writeln!(out, "{x:.6},{y:.6},{t:.6},{:.12e},{}", self.values[idx], mask.classes[idx].code())?;
        }
        Ok(())
    }
}

/// The discrete sublaplacian at an interior node of `mask`.
pub fn stencil_apply(g: &GridField, mask: &DomainMask, idx: usize) -> Result<f64> {
    match mask.classes.get(idx) {
        Some(NodeClass::Interior) => Ok(g.stencil_unchecked(idx)),
        Some(c) => Err(Error::OutOfRange(format!("stencil requested at non-interior node {idx} ({c:?})"))),
        None => Err(Error::OutOfRange(format!("node {idx} outside the grid"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> (GridSpec, DomainMask) {
        let spec = GridSpec::cubic(25).unwrap();
        (spec, DomainMask::barrier_domain(spec))
    }

    #[test]
    fn spec_layout() {
        let spec = GridSpec::cubic(49).unwrap();
        assert_eq!(spec.coords(spec.origin()), (0.0, 0.0, 0.0));
        let idx = spec.index(3, 7, 11);
        assert_eq!(spec.ijk(idx), (3, 7, 11));
        assert_eq!(spec.index(0, 0, 1), 1);
        assert!(GridSpec::cubic(48).is_err());
        assert!((spec.hz - 0.05).abs() < 1e-15);
    }

    #[test]
    fn quadratic_x_is_exact() {
        let (spec, mask) = small();
        let g = GridField::sample(spec, |x, _, _| x * x);
        for idx in mask.interior() {
            assert!((stencil_apply(&g, &mask, idx).unwrap() - 2.0).abs() < 1e-11);
        }
    }

    #[test]
    fn tx_gives_4y() {
        let (spec, mask) = small();
        let g = GridField::sample(spec, |x, _, t| t * x);
        for idx in mask.interior() {
            let (_, y, _) = spec.coords(idx);
            assert!((stencil_apply(&g, &mask, idx).unwrap() - 4.0 * y).abs() < 1e-12);
        }
    }

    #[test]
    fn mask_is_closed_under_stencil() {
        let (spec, mask) = small();
        assert!(mask.count(NodeClass::Interior) > 0);
        assert!(mask.count(NodeClass::BoundaryInner) > 0);
        assert!(mask.count(NodeClass::BoundaryOuter) > 0);
        assert_eq!(mask.classes[spec.origin()], NodeClass::Interior);
        for idx in mask.interior() {
            assert!(spec.stencil(idx).iter().all(|&(nb, _)| mask.classes[nb] != NodeClass::Exterior));
        }
    }

    #[test]
    fn non_interior_nodes_rejected() {
        let (spec, mask) = small();
        let g = GridField::sample(spec, |_, _, _| 1.0);
        assert!(stencil_apply(&g, &mask, 0).is_err());
        assert!(stencil_apply(&g, &mask, spec.len()).is_err());
    }

    #[test]
    fn csv_layout() {
        let spec = GridSpec::cubic(5).unwrap();
        let mask = DomainMask::barrier_domain(spec);
        let g = GridField::sample(spec, |x, y, t| x + y + t);
        let mut buf = Vec::new();
        g.write_csv(&mask, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,y,t,value,mask");
        assert_eq!(lines.len(), 126);
        assert!(lines[1].starts_with("-1.200000,-1.200000,-1.400000,"));
        assert!(lines[2].starts_with("-1.200000,-1.200000,-0.700000,"));
    }
}
