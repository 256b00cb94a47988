// `A^u`, its spectrum and `sigma_k`, computed three ways, and its behaviour
// under the inversion.

use heisenberg_cr::crtransform::Generator;
use heisenberg_cr::fields::{Domain, ExprField, Field};
use heisenberg_cr::schouten::{admissible_points, canonical_args, invariance_suite, schouten_from_phi, schouten_tensor};
use heisenberg_cr::Point;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() {
    let u = ExprField::parse("exp(0.2*x1*y1 - 0.1*t + 0.05*znorm2)", 1).unwrap();
    let p = Point::new(&[0.3], &[-0.8], 0.4);
    let a = schouten_tensor(&u, &p).unwrap();
    println!("A^u = {}", a.a);
    println!("spectrum {:?}, sigma_1 {:.6}, sigma_2 {:.6}", a.spectrum.as_slice(), a.sigma(1).unwrap(), a.sigma(2).unwrap());

    let via_phi = schouten_from_phi(u.clone().shared(), &p).unwrap();
    let h = u.horizontal_at(&p).unwrap();
    let canon = canonical_args(h.val, &h.hgrad, &h.hhess).unwrap();
    println!("through phi: {:.1e}, from (s, v, U): {:.1e}", (&a.a - via_phi.a).amax(), (&a.a - canon.a).amax());

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pts = admissible_points(1, &Domain::TestBox, &Generator::CheckInvert, 20, &mut rng);
    let r = invariance_suite(u.shared(), &Generator::CheckInvert, &pts).unwrap();
    println!("inversion: matrix law {:.1e}, spectrum {:.1e}", r.max_matrix(), r.max_spectrum());
}

fn main() {
    run_example();
}
