// Closed-form derivatives of the inversion coordinates and the transport
// matrix `E`.

use heisenberg_cr::crtransform::{appendix_first_derivs, appendix_second_derivs, matrix_e};
use heisenberg_cr::group::gauge_norm;
use heisenberg_cr::Point;

pub fn run_example() {
    let p = Point::new(&[0.7, -0.2], &[0.1, 0.4], 0.9);
    let d1 = appendix_first_derivs(&p).unwrap();
    println!("|xi| = {:.6}", gauge_norm(&p));
    println!("grad_H x'_1 = {:?}", d1.hgrad_x(0).as_slice());
    println!("|grad_H x'_1| |xi|^2 = {:.12}", d1.hgrad_x(0).norm() * gauge_norm(&p).powi(2));

    let d2 = appendix_second_derivs(&p).unwrap();
    println!("sublaplacian of t' = {:.6e}", d2.t.trace());

    let e = matrix_e(&p).unwrap();
    println!("E = {}", e.e);
    println!("orthogonality {:.1e}, unitarity {:.1e}", e.orthogonality_residual(), e.unitarity_residual());
}

fn main() {
    run_example();
}
