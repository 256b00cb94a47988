// Membership tests for the trace cone and the `gamma_k` cones.

use heisenberg_cr::schouten::cone_predicates;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() {
    let a = DMatrix::from_row_slice(4, 4, &[
        2.0, 0.1, 0.0, 0.0, //
        0.1, 1.0, 0.0, 0.0, //
        0.0, 0.0, -0.5, 0.0, //
        0.0, 0.0, 0.0, 0.3,
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for c in cone_predicates(2) {
        let t = c.self_test(4, 50, &mut rng).unwrap();
        println!("{:<8} extension={:<5} A: {:?}  self-test passed: {}", c.name, c.extension, c.classify(&a).unwrap(), t.passed());
    }
}

fn main() {
    run_example();
}
