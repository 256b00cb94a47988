// Build a field with a chosen horizontal 2-jet, conjugate it with
// `[Dilate(lambda^-2), CheckInvert]` and compare with the closed forms.

use heisenberg_cr::crtransform::conjugation::split_u;
use heisenberg_cr::crtransform::{
    apply_map, conjugate_jet, conjugate_jet_general, pole_base_point, pole_map, prescribe_jet, transform_field, PoleSign,
};
use heisenberg_cr::structure::{j_matrix, rel_diff_mat};
use nalgebra::{DMatrix, DVector};

pub fn run_example() {
    let u = DMatrix::from_row_slice(2, 2, &[0.5, 0.2, 0.2, -0.3]) + j_matrix(1) * 0.4;
    let (sym, c) = split_u(&u);

    let lambda = 1.3;
    let xi0 = PoleSign::North.point(1, lambda);
    let phi = prescribe_jet(&xi0, 1.0, &DVector::zeros(2), &sym, c).unwrap();
    let psi = pole_map(lambda).unwrap();
    let at = apply_map(&psi, &xi0).unwrap();
    let h = transform_field(&psi, phi).horizontal_at(&at).unwrap();
    let want = conjugate_jet(lambda, PoleSign::North, &u).unwrap();
    println!("pole: relative difference {:.1e}", rel_diff_mat(&h.hhess, &want));

    let (s, v) = (0.8, DVector::from_vec(vec![0.3, -0.5]));
    let (xi0, lambda) = pole_base_point(s, &v).unwrap();
    let phi = prescribe_jet(&xi0, s, &v, &sym, c).unwrap();
    let psi = pole_map(lambda).unwrap();
    let at = apply_map(&psi, &xi0).unwrap();
    let h = transform_field(&psi, phi).horizontal_at(&at).unwrap();
    let want = conjugate_jet_general(s, &v, &u).unwrap();
    println!("general point: lambda = {lambda:.4}, relative difference {:.1e}", rel_diff_mat(&h.hhess, &want));
}

fn main() {
    run_example();
}
