// Lower bound for `A_{phi + eps eta}` with `eta = exp(delta |z|^2)` on the
// test box.

use heisenberg_cr::fields::ExprField;
use heisenberg_cr::schouten::{admissible_delta, perturbation_inequality, SampleRegion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() {
    let region = SampleRegion::test_box(1);
    let delta = admissible_delta(region.sup_z());
    let phi = ExprField::parse("2 + x1^2 - 0.3*y1*t + 0.2*x1*y1", 1).unwrap().shared();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts: Vec<_> = (0..100).map(|_| region.sample(&mut rng)).collect();
    println!("delta = {delta:.6}");
    for eps in [1e-3, 1e-2, 1e-1] {
        let r = perturbation_inequality(phi.clone(), delta, eps, &region, &pts).unwrap();
        println!("eps = {eps:<6} worst margin {:+.3e}  eta margin {:+.3e}", r.worst_margin(), r.worst_eta_margin());
    }
}

fn main() {
    run_example();
}
