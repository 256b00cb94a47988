// Transforming a field by a word of CR generators and checking the
// closed-form gradient and Hessian laws one generator at a time.

use heisenberg_cr::crtransform::{
    closed_form_first, closed_form_second, scalar_invariance_check, transform_field, CRMap, Generator,
};
use heisenberg_cr::fields::ExprField;
use heisenberg_cr::group::UnitaryRotation;
use heisenberg_cr::structure::{rel_diff_mat, rel_diff_vec};
use heisenberg_cr::Point;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let u = ExprField::parse("exp(0.2*x1 - 0.3*y1*t + 0.1*znorm2)", 1).unwrap().shared();
    let p = Point::new(&[0.6], &[-0.4], 0.3);
    let gens = [
        Generator::Translate(Point::new(&[0.2], &[0.1], -0.3)),
        Generator::dilate(1.5).unwrap(),
        Generator::Rotate(UnitaryRotation::random(1, &mut rng)),
        Generator::Iota,
        Generator::CheckInvert,
    ];
    for g in &gens {
        let h = transform_field(&CRMap::single(g.clone()), u.clone()).horizontal_at(&p).unwrap();
        let first = rel_diff_vec(&closed_form_first(g, u.as_ref(), &p).unwrap(), &h.hgrad);
        let second = rel_diff_mat(&closed_form_second(g, u.as_ref(), &p).unwrap(), &h.hhess);
        println!("{:<12} gradient {:.1e}  Hessian {:.1e}", g.name(), first, second);
    }

    let word = CRMap::new(gens.to_vec());
    let c = scalar_invariance_check(&word, u, &p).unwrap();
    println!("u^(-(Q+2)/(Q-2)) sublaplacian u through the whole word: {:.12} vs {:.12}", c.lhs, c.rhs);
}

fn main() {
    run_example();
}
