//! The barrier Dirichlet problem
//!
//! ```text
//! Delta_H sigma = 0 on D_1(0) \ D_{1/4}(xi0),
//! sigma = -2 eps on the outer sphere, sigma = c0 / 2 on the inner sphere,
//! ```
//!
//! with `xi0 = ((1/2, 0), 0)` and `c0 = 1/8`, plus the barrier function and
//! discrete minimum-principle checks built on it.

use crate::error::{Error, Result};
use crate::grid::solver::{gmres, Csr, GmresOptions};
use crate::grid::{DomainMask, GridField, GridSpec, NodeClass};
use crate::group::{gauge_norm, homogeneous_dim, Point};

pub const C0: f64 = 0.125;

/// Slack allowed on the bound `-2 eps <= sigma <= c0 / 2` before a node is
/// flagged.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    /// Solution on interior and boundary nodes, `NaN` outside.
    pub field: GridField,
    pub iterations: usize,
    pub relative_residual: f64,
    pub origin_value: f64,
    pub interior_min: f64,
    pub interior_max: f64,
    /// Interior nodes outside `[lower, upper]` by more than `1e-9`.
    pub flagged: Vec<usize>,
    pub interior_nodes: usize,
    pub lower: f64,
    pub upper: f64,
}

impl SolveReport {
    pub fn flagged_fraction(&self) -> f64 {
        self.flagged.len() as f64 / self.interior_nodes.max(1) as f64
    }
}

/// Solves with constant Dirichlet data on each sphere, flagging nodes
/// outside the range of the data.
pub fn solve_dirichlet(mask: &DomainMask, outer: f64, inner: f64) -> Result<SolveReport> {
    let spec = mask.spec;
    let mut row_of = vec![usize::MAX; spec.len()];
    let interior: Vec<usize> = mask.interior().collect();
    for (r, &idx) in interior.iter().enumerate() {
        row_of[idx] = r;
    }
    let data = |idx: usize| match mask.classes[idx] {
        NodeClass::BoundaryOuter => outer,
        NodeClass::BoundaryInner => inner,
        _ => f64::NAN,
    };
    let mut a = Csr::with_rows(interior.len());
    let mut b = vec![0.0; interior.len()];
    for (r, &idx) in interior.iter().enumerate() {
        let mut row = Vec::with_capacity(15);
        for (nb, w) in spec.stencil(idx) {
            if row_of[nb] != usize::MAX {
                row.push((row_of[nb], w));
            } else {
                b[r] -= w * data(nb);
            }
        }
        a.push_row(row);
    }
    let x0 = vec![0.5 * (outer + inner); interior.len()];
    let sol = gmres(&a, &b, x0, GmresOptions::default())?;

    let mut values: Vec<f64> = (0..spec.len()).map(data).collect();
    for (r, &idx) in interior.iter().enumerate() {
        values[idx] = sol.x[r];
    }
    let (lower, upper) = (outer.min(inner), outer.max(inner));
    let flagged: Vec<usize> = interior
        .iter()
        .copied()
        .filter(|&idx| values[idx] < lower - BOUND_SLACK || values[idx] > upper + BOUND_SLACK)
        .collect();
    let interior_min = interior.iter().map(|&i| values[i]).fold(f64::INFINITY, f64::min);
    let interior_max = interior.iter().map(|&i| values[i]).fold(f64::NEG_INFINITY, f64::max);
    Ok(SolveReport {
        origin_value: values[spec.origin()],
        field: GridField { spec, values },
        iterations: sol.iterations,
        relative_residual: sol.relative_residual,
        interior_min,
        interior_max,
        flagged,
        interior_nodes: interior.len(),
        lower,
        upper,
    })
}

/// `sigma^(eps)`: data `-2 eps` outside, `c0 / 2` on the inner sphere.
pub fn dirichlet_solve(mask: &DomainMask, eps: f64, c0: f64) -> Result<SolveReport> {
    if !(eps >= 0.0) || !(c0 > 0.0) {
        return Err(Error::OutOfRange(format!("need eps >= 0 and c0 > 0, got eps = {eps}, c0 = {c0}")));
    }
    solve_dirichlet(mask, -2.0 * eps, 0.5 * c0)
}

/// `Theta = u + A r^{Q-2} (|xi|^{-(Q-2)} - 1) - sigma` at `p`.
pub fn barrier_formula(u: f64, a: f64, r: f64, sigma: f64, p: &Point) -> f64 {
    let d = homogeneous_dim(p.dim()) as f64 - 2.0;
    u + a * r.powf(d) * (gauge_norm(p).powf(-d) - 1.0) - sigma
}

/// The barrier at a node of the annular region `D_1(0)` minus `D_r(0)` and
/// the hole of `mask`.
pub fn barrier_value(
    u: &GridField,
    a: f64,
    r: f64,
    sigma: &GridField,
    mask: &DomainMask,
    idx: usize,
) -> Result<f64> {
    let class = *mask.classes.get(idx).ok_or_else(|| Error::OutOfRange(format!("node {idx} outside the grid")))?;
    let p = mask.spec.point(idx);
    if class == NodeClass::Exterior || gauge_norm(&p) < r {
        return Err(Error::OutOfRange(format!("node {idx} is not in the barrier region")));
    }
    Ok(barrier_formula(u.values[idx], a, r, sigma.values[idx], &p))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinPrincipleReport {
    pub interior_min: f64,
    pub boundary_min: f64,
    /// Interior node attaining the minimum.
    pub worst_node: Option<usize>,
    /// Largest stencil value over interior nodes.
    pub max_stencil: f64,
    pub passed: bool,
}

/// Interior minimum must not undercut the boundary minimum by more than
/// `1e-9`.
pub fn min_principle_check(g: &GridField, mask: &DomainMask) -> MinPrincipleReport {
    let mut worst = None;
    let mut interior_min = f64::INFINITY;
    let mut max_stencil = f64::NEG_INFINITY;
    for idx in mask.interior() {
        if g.values[idx] < interior_min {
            interior_min = g.values[idx];
            worst = Some(idx);
        }
        max_stencil = max_stencil.max(g.stencil_unchecked(idx));
    }
    let boundary_min = mask.boundary().map(|i| g.values[i]).fold(f64::INFINITY, f64::min);
    MinPrincipleReport {
        interior_min,
        boundary_min,
        worst_node: worst,
        max_stencil,
        passed: interior_min >= boundary_min - 1e-9,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub hz: Vec<f64>,
    /// Max stencil residual of `|xi|^{-2}` over the probe nodes at each spacing.
    pub residuals: Vec<f64>,
    /// `log2` of successive residual ratios.
    pub orders: Vec<f64>,
    pub nodes: usize,
}

impl ConvergenceReport {
    pub fn min_order(&self) -> f64 {
        self.orders.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Least-squares slope of `log2 residual` against `log2 hz`.
    pub fn fitted_order(&self) -> f64 {
        let xs: Vec<f64> = self.hz.iter().map(|h| h.log2()).collect();
        let ys: Vec<f64> = self.residuals.iter().map(|r| r.log2()).collect();
        let m = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        sxy / sxx
    }
}

/// Stencil residual of the fundamental solution `|xi|^{-2}` at the nodes of
/// the `coarse` grid with `0.3 < |xi| < 1`, using that grid's spacing
/// halved `levels - 1` times.
pub fn fundamental_convergence(coarse: usize, levels: usize) -> Result<ConvergenceReport> {
    let spec = GridSpec::cubic(coarse)?;
    let f = |x: f64, y: f64, t: f64| {
        let r2 = x * x + y * y;
        1.0 / (r2 * r2 + t * t).sqrt()
    };
    let nodes: Vec<(f64, f64, f64)> = (0..spec.len())
        .filter(|&i| {
            // nodes sitting on |xi| = 0.3 pick up roundoff from the coordinates
            let g = gauge_norm(&spec.point(i));
            g > 0.3 + 1e-12 && g < 1.0
        })
        .map(|i| spec.coords(i))
        .collect();
    let mut hz = Vec::new();
    let mut residuals = Vec::new();
    for level in 0..levels {
        let s = 0.5f64.powi(level as i32);
        let (h, k) = (spec.hz * s, spec.ht * s);
        let worst = nodes
            .iter()
            .map(|&(x, y, t)| super::stencil_at(f, x, y, t, h, k).abs())
            .fold(0.0, f64::max);
        hz.push(h);
        residuals.push(worst);
    }
    let orders = residuals.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    Ok(ConvergenceReport { hz, residuals, orders, nodes: nodes.len() })
}
