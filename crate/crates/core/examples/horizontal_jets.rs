// Exact second-order jets of a parsed field and its horizontal derivatives.

use heisenberg_cr::fields::{ExprField, Field};
use heisenberg_cr::jets::{commutator_check, sublaplacian};
use heisenberg_cr::Point;

pub fn run_example() {
    let u = ExprField::parse("exp(0.3*x1*t - y1^2) + znorm2", 1).unwrap();
    let p = Point::new(&[0.4], &[-0.2], 0.7);

    let j = u.jet_at(&p).unwrap();
    println!("u = {:.6}, Euclidean gradient = {:?}", j.val, j.grad.as_slice());

    let h = u.horizontal_at(&p).unwrap();
    println!("horizontal gradient = {:?}", h.hgrad.as_slice());
    println!("Heisenberg Hessian = {}", h.hhess);
    println!("T u = {:.6}, sublaplacian = {:.6}", h.tu, sublaplacian(&h));

    // antisymmetric part of the Hessian is 2 T u J
    let c = commutator_check(&j, &p, 0, 0);
    println!("commutator residual = {:.2e}", c.max_abs());
}

fn main() {
    run_example();
}
