// Group law, gauge norm and the involutive inversion on `H^1`.

use heisenberg_cr::group::{check_invert, compose, dilate, distance, gauge_norm, invert, Point};

pub fn run_example() {
    let a = Point::new(&[1.0], &[0.5], 0.25);
    let b = Point::new(&[-0.3], &[2.0], -1.0);
    let ab = compose(&a, &b);
    println!("a o b = {:?}", ab.coords());
    println!("a o a^-1 = {:?}", compose(&a, &invert(&a)).coords());

    let d = dilate(2.0, &a).unwrap();
    println!("|a| = {:.6}, |2.a| = {:.6}", gauge_norm(&a), gauge_norm(&d));
    println!("d(a, b) = {:.6}", distance(&a, &b));

    let inv = check_invert(&a).unwrap();
    let back = check_invert(&inv).unwrap();
    assert!(back.max_abs_diff(&a) < 1e-12);
    println!("inversion of a = {:?}", inv.coords());
}

fn main() {
    run_example();
}
