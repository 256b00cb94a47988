//! A reproducible set of strictly positive test fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fields::{ExprField, Field};
use crate::group::{gauge_norm, Point};

/// Half-widths of the test box `[-1.5, 1.5]^{2n} x [-2, 2]`.
pub const BOX_Z: f64 = 1.5;
pub const BOX_T: f64 = 2.0;

/// Total probe-lattice budget; the per-axis count is the largest `k` with
/// `k^{2n+1}` within it (17 per axis for `n = 1`).
const PROBE_BUDGET: usize = 4913;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// The whole test box.
    TestBox,
    /// Test-box points with gauge norm at least the given radius.
    GaugeAtLeast(f64),
}

impl Domain {
    pub fn contains(&self, p: &Point) -> bool {
        let in_box = p.z().iter().all(|v| v.abs() <= BOX_Z) && p.t().abs() <= BOX_T;
        match self {
            Domain::TestBox => in_box,
            Domain::GaugeAtLeast(r) => in_box && gauge_norm(p) >= *r,
        }
    }

    /// Uniform sample from the domain.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Point {
        loop {
            let z = (0..2 * n).map(|_| rng.gen_range(-BOX_Z..=BOX_Z)).collect();
            let p = Point::from_z(z, rng.gen_range(-BOX_T..=BOX_T));
            if self.contains(&p) {
                return p;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    /// Family letter `a`..`f`.
    pub family: char,
    pub text: String,
    pub field: ExprField,
    pub domain: Domain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldCorpus {
    pub n: usize,
    pub seed: u64,
    pub entries: Vec<CorpusEntry>,
}

impl FieldCorpus {
    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn family(&self, f: char) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter().filter(move |e| e.family == f)
    }
}

/// Lattice over the test box used to certify positivity and to scale the
/// random families.
pub fn probe_lattice(n: usize) -> Vec<Point> {
    let d = 2 * n + 1;
    let mut k = 2usize;
    while (k + 1).checked_pow(d as u32).is_some_and(|v| v <= PROBE_BUDGET) {
        k += 1;
    }
    let axis = |half: f64, i: usize| -half + 2.0 * half * i as f64 / (k - 1) as f64;
    let total = k.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = vec![0.0; d];
            for (a, slot) in c.iter_mut().enumerate().rev() {
                let half = if a == d - 1 { BOX_T } else { BOX_Z };
                *slot = axis(half, idx % k);
                idx /= k;
            }
            Point::from_coords(&c)
        })
        .collect()
}

fn coord_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")))
        .chain(std::iter::once("t".to_string()))
        .collect()
}

fn lit(c: f64) -> String {
    if c < 0.0 {
        format!("({c:?})")
    } else {
        format!("{c:?}")
    }
}

/// Coefficients of `sum_i b_i w_i + sum_{i <= j} a_ij w_i w_j` in `w = (x, y, t)`.
struct Quadratic {
    linear: Vec<f64>,
    quad: Vec<(usize, usize, f64)>,
}

impl Quadratic {
    fn random<R: Rng>(d: usize, with_linear: bool, rng: &mut R) -> Self {
        let linear = (0..d).map(|_| if with_linear { rng.gen_range(-1.0..1.0) } else { 0.0 }).collect();
        let mut quad = Vec::new();
        for i in 0..d {
            for j in i..d {
                quad.push((i, j, rng.gen_range(-1.0..1.0)));
            }
        }
        Self { linear, quad }
    }

    fn eval(&self, w: &[f64]) -> f64 {
        let l: f64 = self.linear.iter().zip(w).map(|(b, v)| b * v).sum();
        l + self.quad.iter().map(|&(i, j, a)| a * w[i] * w[j]).sum::<f64>()
    }

    fn scale(&mut self, s: f64) {
        self.linear.iter_mut().for_each(|b| *b *= s);
        self.quad.iter_mut().for_each(|q| q.2 *= s);
    }

    fn text(&self, names: &[String]) -> String {
        let mut terms: Vec<String> = self
            .linear
            .iter()
            .enumerate()
            .filter(|(_, b)| **b != 0.0)
            .map(|(i, b)| format!("{}*{}", lit(*b), names[i]))
            .collect();
        terms.extend(self.quad.iter().map(|&(i, j, a)| format!("{}*{}*{}", lit(a), names[i], names[j])));
        terms.join(" + ")
    }

    /// Upper bound of `|sum a_ij w_i w_j|` over the test box.
    fn quad_bound(&self, d: usize) -> f64 {
        let m = |i: usize| if i == d - 1 { BOX_T } else { BOX_Z };
        self.quad.iter().map(|&(i, j, a)| a.abs() * m(i) * m(j)).sum()
    }
}

fn positive_on_lattice(f: &ExprField, domain: Domain, lattice: &[Point]) -> bool {
    lattice
        .iter()
        .filter(|p| domain.contains(p))
        .all(|p| f.value_at(p).is_ok_and(|v| v > 0.0 && v.is_finite()))
}

/// The built-in corpus: two constants, three exponentials of random
/// quadratics, the bump `exp(0.1 |z|^2)`, the Yamabe-type profile, the
/// fundamental-solution power and two shifted quadratics.
pub fn builtin_corpus(n: usize, seed: u64) -> Result<FieldCorpus> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lattice = probe_lattice(n);
    let d = 2 * n + 1;
    let names = coord_names(n);
    let mut entries = Vec::new();

    let mut push = |name: String, family: char, text: String, domain: Domain| -> Result<bool> {
        let field = ExprField::parse(&text, n)?;
        if !positive_on_lattice(&field, domain, &lattice) {
            return Ok(false);
        }
        entries.push(CorpusEntry { name, family, text, field, domain });
        Ok(true)
    };

    push("const_1".into(), 'a', "1".into(), Domain::TestBox)?;
    push("const_2.5".into(), 'a', "2.5".into(), Domain::TestBox)?;

    for k in 0..3 {
        loop {
            let mut q = Quadratic::random(d, true, &mut rng);
            let peak = lattice.iter().map(|p| q.eval(&p.coords()).abs()).fold(0.0, f64::max);
            if peak > 5.0 {
                q.scale(5.0 / peak);
            }
            if push(format!("exp_quadratic_{k}"), 'b', format!("exp({})", q.text(&names)), Domain::TestBox)? {
                break;
            }
        }
    }

    push("bump".into(), 'c', "exp(0.1*znorm2)".into(), Domain::TestBox)?;
    push("yamabe_profile".into(), 'd', "((1+znorm2)^2 + t^2)^(-0.25*QM2)".into(), Domain::TestBox)?;
    push("fundamental".into(), 'e', "gnorm4^(-0.25*QM2)".into(), Domain::GaugeAtLeast(0.1))?;

    for k in 0..2 {
        loop {
            let q = Quadratic::random(d, false, &mut rng);
            let c0 = 0.5 + q.quad_bound(d);
            let text = format!("{} + {}", lit(c0), q.text(&names));
            if push(format!("shifted_quadratic_{k}"), 'f', text, Domain::TestBox)? {
                break;
            }
        }
    }

    Ok(FieldCorpus { n, seed, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::sublaplacian;

    #[test]
    fn lattice_sizes() {
        assert_eq!(probe_lattice(1).len(), 4913);
        assert_eq!(probe_lattice(2).len(), 3125);
        let l = probe_lattice(1);
        assert_eq!(l[0].coords(), vec![-1.5, -1.5, -2.0]);
        assert_eq!(l[1].coords()[2], -2.0 + 4.0 / 16.0);
    }

    #[test]
    fn corpus_is_reproducible() {
        for n in [1, 2] {
            let a = builtin_corpus(n, 11).unwrap();
            let b = builtin_corpus(n, 11).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.entries.len(), 10);
            let texts: Vec<_> = a.entries.iter().map(|e| e.text.clone()).collect();
            let c = builtin_corpus(n, 12).unwrap();
            assert_ne!(texts, c.entries.iter().map(|e| e.text.clone()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn corpus_fields_are_positive_on_samples() {
        let corpus = builtin_corpus(1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for e in &corpus.entries {
            for _ in 0..1000 {
                let p = e.domain.sample(1, &mut rng);
                let v = e.field.value_at(&p).unwrap();
                assert!(v > 0.0, "{} at {:?}", e.name, p);
                if e.family == 'b' {
                    assert!((1e-3..=1e3).contains(&v));
                }
            }
        }
    }

    #[test]
    fn fundamental_family_is_harmonic() {
        let corpus = builtin_corpus(2, 3).unwrap();
        let e = corpus.get("fundamental").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = e.domain.sample(2, &mut rng);
            let lap = sublaplacian(&e.field.horizontal_at(&p).unwrap());
            let g = gauge_norm(&p);
            assert!(lap.abs() <= 1e-9 * g.powi(-6), "{lap} at gauge {g}");
        }
    }
}
