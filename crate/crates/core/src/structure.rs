//! The structure matrices `G = diag(I, -I)` and `J = [[0, I], [-I, 0]]`, and
//! the small dense helpers shared by the rest of the crate.

use nalgebra::{DMatrix, DVector};

pub fn g_matrix(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| match (i == j, i < n) {
        (true, true) => 1.0,
        (true, false) => -1.0,
        _ => 0.0,
    })
}

pub fn j_matrix(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j == i + n {
            1.0
        } else if i >= n && j + n == i {
            -1.0
        } else {
            0.0
        }
    })
}

/// `J v` for `v = (a, b)`: `(b, -a)`.
pub fn apply_j(v: &DVector<f64>) -> DVector<f64> {
    let n = v.len() / 2;
    DVector::from_fn(2 * n, |i, _| if i < n { v[i + n] } else { -v[i - n] })
}

/// `G v` for `v = (a, b)`: `(a, -b)`.
pub fn apply_g(v: &DVector<f64>) -> DVector<f64> {
    let n = v.len() / 2;
    DVector::from_fn(2 * n, |i, _| if i < n { v[i] } else { -v[i] })
}

/// `v (x) w = [v_i w_j]`.
pub fn outer(v: &DVector<f64>, w: &DVector<f64>) -> DMatrix<f64> {
    v * w.transpose()
}

pub fn sym_part(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

pub fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    (m - m.transpose()).amax()
}

/// Entrywise relative difference `|a - b| / max(|a|, |b|, 1e-30)`.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 {
        return 0.0;
    }
    d / a.abs().max(b.abs()).max(1e-30)
}

/// Relative difference of matrices measured in the max-entry norm.
pub fn rel_diff_mat(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let d = (a - b).amax();
    if d == 0.0 {
        return 0.0;
    }
    d / a.amax().max(b.amax()).max(1e-30)
}

pub fn rel_diff_vec(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let d = (a - b).amax();
    if d == 0.0 {
        return 0.0;
    }
    d / a.amax().max(b.amax()).max(1e-30)
}
