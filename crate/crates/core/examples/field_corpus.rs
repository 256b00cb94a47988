// The built-in corpus of positive test fields.

use heisenberg_cr::fields::{builtin_corpus, Field};
use heisenberg_cr::Point;

pub fn run_example() {
    let corpus = builtin_corpus(1, 9).unwrap();
    let p = Point::new(&[0.5], &[0.5], 0.5);
    for e in &corpus.entries {
        let v = e.field.value_at(&p).unwrap();
        println!("{:<22} ({}) u(p) = {:<12.6} {}", e.name, e.family, v, e.text);
    }
}

fn main() {
    run_example();
}
