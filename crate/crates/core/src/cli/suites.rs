//! The verification suites behind `hcr verify`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cli::CheckRecord;
use crate::crtransform::conjugation::{e_at_pole_point, split_u};
use crate::crtransform::{
    appendix_first_derivs, appendix_second_derivs, apply_map, closed_form_first, closed_form_second,
    conjugate_jet, conjugate_jet_general, pole_base_point, pole_map, matrix_e, prescribe_jet,
    scalar_invariance_check, sublaplacian_transform_check, transform_field, CRMap, Generator, PoleSign,
};
use crate::error::Result;
use crate::fields::{builtin_corpus, ExprField, Field, FieldCorpus, SharedField};
use crate::grid::{
    dirichlet_solve, fundamental_convergence, min_principle_check, DomainMask, GridField, GridSpec, C0,
};
use crate::group::{
    check_invert, compose, dilate, distance, gauge_norm, homogeneous_dim, invert, random_point,
    random_point_in_shell, Point, UnitaryRotation,
};
use crate::jets::{commutator_check, horizontal_from_euclidean, sublaplacian, sublaplacian_coordinates, sublaplacian_expanded, Jet2};
use crate::schouten::{
    admissible_delta, admissible_points, canonical_args, cone_predicates, f_invariance_conditions,
    invariance_suite, perturbation_inequality, schouten_from_phi, schouten_tensor, sigma_of_sym, SampleRegion,
};
use crate::structure::{g_matrix, j_matrix, rel_diff, rel_diff_mat, rel_diff_vec, sym_part};

/// Seed of the built-in corpus used by every suite.
pub const CORPUS_SEED: u64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Group,
    Jets,
    Transform,
    Schouten,
    Perturbation,
    GridLite,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Group, Suite::Jets, Suite::Transform, Suite::Schouten, Suite::Perturbation, Suite::GridLite];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Group => "group",
            Suite::Jets => "jets",
            Suite::Transform => "transform",
            Suite::Schouten => "schouten",
            Suite::Perturbation => "perturbation",
            Suite::GridLite => "grid-lite",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Each suite draws from its own stream so that running it alone or
    /// inside `all` gives the same records.
    fn rng(self, seed: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(self as u64 + 1);
        r
    }
}

/// Largest residual, with `NaN` propagated.
fn worst(rs: impl IntoIterator<Item = f64>) -> (usize, f64) {
    rs.into_iter().fold((0, 0.0), |(k, m), r| (k + 1, if r.is_nan() || m.is_nan() { f64::NAN } else { m.max(r) }))
}

fn record(id: &str, anchor: &str, tol: f64, rs: impl IntoIterator<Item = f64>) -> CheckRecord {
    let (points, max_residual) = worst(rs);
    CheckRecord::new(id, anchor, points, max_residual, tol)
}

/// Like [`record`] when each residual already covers `points` samples.
fn record_n(id: &str, anchor: &str, tol: f64, points: usize, rs: impl IntoIterator<Item = f64>) -> CheckRecord {
    CheckRecord::new(id, anchor, points, worst(rs).1, tol)
}

/// Failed evaluations count as an infinite residual.
fn res(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

/// `|a - b|_max / max(1, |b|_max)` on coordinates.
fn point_residual(a: &Point, b: &Point) -> f64 {
    let scale = b.coords().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    a.max_abs_diff(b) / scale
}

pub fn run_suite(suite: Suite, n: usize, seed: u64, tol_scale: f64) -> Result<Vec<CheckRecord>> {
    let mut rng = suite.rng(seed);
    let mut out = match suite {
        Suite::Group => group_suite(n, &mut rng),
        Suite::Jets => jets_suite(n, &mut rng)?,
        Suite::Transform => transform_suite(n, &mut rng)?,
        Suite::Schouten => schouten_suite(n, &mut rng)?,
        Suite::Perturbation => perturbation_suite(n, &mut rng)?,
        Suite::GridLite => grid_lite_suite()?,
    };
    for r in &mut out {
        r.rescale(tol_scale);
    }
    Ok(out)
}

const GROUP_SAMPLES: usize = 10_000;

fn group_suite(n: usize, rng: &mut ChaCha8Rng) -> Vec<CheckRecord> {
    let samples = |rng: &mut ChaCha8Rng| random_point(n, 2.0, 2.0, rng);
    let origin = Point::origin(n);
    let mut assoc = Vec::new();
    let mut ident = Vec::new();
    let mut inv = Vec::new();
    let mut homog = Vec::new();
    let mut left = Vec::new();
    let mut invol = Vec::new();
    for _ in 0..GROUP_SAMPLES {
        let (a, b, c) = (samples(rng), samples(rng), samples(rng));
        assoc.push(point_residual(&compose(&compose(&a, &b), &c), &compose(&a, &compose(&b, &c))));
        ident.push(point_residual(&compose(&a, &origin), &a).max(point_residual(&compose(&origin, &a), &a)));
        inv.push(point_residual(&compose(&a, &invert(&a)), &origin).max(point_residual(&compose(&invert(&a), &a), &origin)));
        let l = rng.gen_range(0.1..10.0);
        homog.push(res(dilate(l, &a).map(|d| rel_diff(gauge_norm(&d), l * gauge_norm(&a)))));
        left.push(rel_diff(distance(&compose(&c, &a), &compose(&c, &b)), distance(&a, &b)));
        let p = random_point_in_shell(n, 0.2, 5.0, rng);
        invol.push(res(check_invert(&p).and_then(|q| check_invert(&q)).map(|q| point_residual(&q, &p))));
    }
    vec![
        record("group.associativity", "group law: associativity", 1e-10, assoc),
        record("group.identity", "group law: identity element", 1e-10, ident),
        record("group.inverse", "group law: inverse", 1e-10, inv),
        record("group.norm_homogeneity", "gauge norm: homogeneity under dilations", 1e-10, homog),
        record("group.distance_left_invariance", "gauge distance: left invariance", 1e-10, left),
        record("group.check_invert_involution", "involutive inversion: squares to the identity", 1e-10, invol),
    ]
}

fn corpus_points(n: usize, corpus: &FieldCorpus, per_field: usize, rng: &mut ChaCha8Rng) -> Vec<(SharedField, Point)> {
    let mut v = Vec::new();
    for e in &corpus.entries {
        let u = e.field.clone().shared();
        for _ in 0..per_field {
            v.push((u.clone(), e.domain.sample(n, rng)));
        }
    }
    v
}

fn jets_suite(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let corpus = builtin_corpus(n, CORPUS_SEED)?;
    let pts = corpus_points(n, &corpus, 100, rng);
    let mut comm = Vec::new();
    let mut lap = Vec::new();
    for (u, p) in &pts {
        let j = u.jet_at(p)?;
        for i in 0..n {
            for k in 0..n {
                comm.push(commutator_check(&j, p, i, k).relative());
            }
        }
        let h = horizontal_from_euclidean(&j, p);
        let a = sublaplacian(&h);
        let scale = h.hhess.amax().max(j.hess.amax()).max(1e-300) * (1.0 + p.z_norm2());
        let b = sublaplacian_coordinates(&j, p);
        let c = sublaplacian_expanded(&j, p);
        lap.push((a - b).abs().max((a - c).abs()) / scale);
    }
    let fundamental = corpus.get("fundamental").expect("corpus contains the fundamental solution");
    let q = homogeneous_dim(n) as i32;
    let harm: Vec<f64> = (0..200)
        .map(|_| {
            let p = random_point_in_shell(n, 0.1, 3.0, rng);
            res(fundamental.field.horizontal_at(&p).map(|h| sublaplacian(&h).abs() * gauge_norm(&p).powi(q)))
        })
        .collect();
    Ok(vec![
        record("jets.commutator_relations", "horizontal frame: commutator relations", 1e-10, comm),
        record("jets.sublaplacian_three_ways", "sublaplacian: trace, coordinate and expanded forms", 1e-12, lap),
        record("jets.fundamental_harmonic", "fundamental solution: harmonic away from the origin", 1e-9, harm),
    ])
}

fn generators(n: usize, rng: &mut ChaCha8Rng) -> Vec<Generator> {
    vec![
        Generator::Translate(random_point_in_shell(n, 0.1, 0.8, rng)),
        Generator::Rotate(UnitaryRotation::random(n, rng)),
        Generator::dilate(rng.gen_range(0.5..2.0)).expect("positive"),
        Generator::Iota,
        Generator::CheckInvert,
    ]
}

fn gen_tol(g: &Generator) -> f64 {
    if matches!(g, Generator::CheckInvert) {
        1e-8
    } else {
        1e-10
    }
}

fn random_u(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let m = DMatrix::from_fn(2 * n, 2 * n, |_, _| rng.gen_range(-1.0..1.0));
    sym_part(&m) + j_matrix(n) * rng.gen_range(-1.0..1.0)
}

fn random_vec(n: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    DVector::from_fn(2 * n, |_, _| rng.gen_range(-1.0..1.0))
}

fn transform_suite(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let jm = j_matrix(n);

    let (mut first, mut second, mut rel) = (Vec::new(), Vec::new(), Vec::new());
    let (mut orth, mut unit) = (Vec::new(), Vec::new());
    for _ in 0..200 {
        let p = random_point_in_shell(n, 0.2, 5.0, rng);
        let oracle: Vec<_> = crate::crtransform::check_invert_jets(&Jet2::seed(&p))?
            .iter()
            .map(|j| horizontal_from_euclidean(j, &p))
            .collect();
        let d1 = appendix_first_derivs(&p)?;
        let d2 = appendix_second_derivs(&p)?;
        let g2 = gauge_norm(&p).powi(-2);
        let mut f = rel_diff_vec(&d1.hgrad_t(), &oracle[2 * n].hgrad).max(rel_diff(d1.t_of_t, oracle[2 * n].tu));
        let mut s = rel_diff_mat(&d2.t, &oracle[2 * n].hhess);
        let mut r: f64 = 0.0;
        for h in 0..n {
            f = f.max(rel_diff_vec(&d1.hgrad_x(h), &oracle[h].hgrad));
            f = f.max(rel_diff_vec(&d1.hgrad_y(h), &oracle[n + h].hgrad));
            f = f.max(rel_diff(d1.t_of_xh[h], oracle[h].tu)).max(rel_diff(d1.t_of_yh[h], oracle[n + h].tu));
            s = s.max(rel_diff_mat(&d2.x[h], &oracle[h].hhess)).max(rel_diff_mat(&d2.y[h], &oracle[n + h].hhess));
            let lin = (d1.hgrad_x(h) + &jm * d1.hgrad_y(h)).amax() / d1.hgrad_x(h).amax();
            let hess = (&d2.x[h] + &jm * &d2.y[h]).amax() / d2.x[h].amax();
            r = r.max(lin).max(hess);
            r = r.max(rel_diff(d1.hgrad_x(h).norm(), g2)).max(rel_diff(d1.hgrad_y(h).norm(), g2));
        }
        first.push(f);
        second.push(s);
        rel.push(r);
        let e = matrix_e(&p)?;
        orth.push(e.orthogonality_residual().max(rel_diff_mat(&e.e, &e.block_form())));
        unit.push(e.unitarity_residual());
    }
    out.push(record("transform.inversion_table.first_derivatives", "inversion: first horizontal derivative table", 1e-9, first));
    out.push(record("transform.inversion_table.second_derivatives", "inversion: horizontal Hessian table", 1e-9, second));
    out.push(record("transform.inversion_table.relations", "inversion: linear relations between the tables", 1e-10, rel));
    out.push(record("transform.e_matrix.orthogonality", "transport matrix E: orthogonality", 1e-12, orth));
    out.push(record("transform.e_matrix.unitarity", "transport matrix E: R + iS unitary", 1e-12, unit));
    let axis: Vec<f64> = [0.5, 1.0, 3.0]
        .iter()
        .map(|l| res(matrix_e(&Point::from_z(vec![0.0; 2 * n], l * l)).map(|e| (&e.e + g_matrix(n)).amax())))
        .collect();
    out.push(record("transform.e_matrix.vertical_axis", "transport matrix E: equals -G on the vertical axis", 1e-12, axis));

    let corpus = builtin_corpus(n, CORPUS_SEED)?;
    for g in generators(n, rng) {
        let tol = gen_tol(&g);
        let mut laws = Vec::new();
        for e in corpus.entries.iter().filter(|e| e.family != 'e') {
            let u: SharedField = e.field.clone().shared();
            let direct = transform_field(&CRMap::single(g.clone()), u.clone());
            for p in admissible_points(n, &e.domain, &g, 100, rng) {
                laws.push(res((|| {
                    let h = direct.horizontal_at(&p)?;
                    let a = rel_diff_vec(&closed_form_first(&g, u.as_ref(), &p)?, &h.hgrad);
                    let b = rel_diff_mat(&closed_form_second(&g, u.as_ref(), &p)?, &h.hhess);
                    Ok(a.max(b))
                })()));
            }
        }
        out.push(record(
            &format!("transform.law.{}", g.name()),
            &format!("transformation law of gradient and Hessian: {}", g.name()),
            tol,
            laws,
        ));
        let mut scalar = Vec::new();
        for e in corpus.entries.iter().filter(|e| matches!(e.family, 'b' | 'c' | 'd' | 'f')) {
            let u: SharedField = e.field.clone().shared();
            for p in admissible_points(n, &e.domain, &g, 20, rng) {
                scalar.push(res(scalar_invariance_check(&CRMap::single(g.clone()), u.clone(), &p).map(|c| c.relative())));
            }
        }
        out.push(record(
            &format!("transform.scalar_invariance.{}", g.name()),
            &format!("u^(-(Q+2)/(Q-2)) sublaplacian u invariant: {}", g.name()),
            1e-10,
            scalar,
        ));
    }
    let profile = corpus.get("yamabe_profile").expect("corpus contains the profile").field.clone().shared();
    let lap: Vec<f64> = (0..100)
        .map(|_| res(sublaplacian_transform_check(profile.clone(), &random_point_in_shell(n, 0.3, 3.0, rng)).map(|c| c.relative())))
        .collect();
    out.push(record("transform.sublaplacian_inversion", "sublaplacian under the inversion", 1e-9, lap));

    out.extend(conjugation_checks(n, rng)?);
    Ok(out)
}

const CONJUGATION_DRAWS: usize = 50;

fn conjugation_checks(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let (mut round, mut pole, mut general) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..CONJUGATION_DRAWS {
        let s = rng.gen_range(0.3..2.0);
        let v = random_vec(n, rng);
        let u = random_u(n, rng);
        let (sym, c) = split_u(&u);
        let xi0 = random_point(n, 1.0, 1.0, rng);
        round.push(res((|| {
            let h = prescribe_jet(&xi0, s, &v, &sym, c)?.horizontal_at(&xi0)?;
            Ok(rel_diff(h.val, s).max(rel_diff_vec(&h.hgrad, &v)).max(rel_diff_mat(&h.hhess, &u)))
        })()));

        let l = rng.gen_range(0.3..3.0);
        let sign = if rng.gen_bool(0.5) { PoleSign::North } else { PoleSign::South };
        pole.push(res((|| {
            let xi0 = sign.point(n, l);
            let phi = prescribe_jet(&xi0, 1.0, &DVector::zeros(2 * n), &sym, c)?;
            let psi = pole_map(l)?;
            let at = apply_map(&psi, &xi0)?;
            let h = transform_field(&psi, phi).horizontal_at(&at)?;
            let r = rel_diff_mat(&h.hhess, &conjugate_jet(l, sign, &u)?);
            Ok(r.max(at.max_abs_diff(&xi0)).max((h.val - 1.0).abs()).max(h.hgrad.amax()))
        })()));

        general.push(res((|| {
            let (xi0, l) = pole_base_point(s, &v)?;
            let phi = prescribe_jet(&xi0, s, &v, &sym, c)?;
            let psi = pole_map(l)?;
            let at = apply_map(&psi, &xi0)?;
            let h = transform_field(&psi, phi).horizontal_at(&at)?;
            let r = rel_diff_mat(&h.hhess, &conjugate_jet_general(s, &v, &u)?);
            let e = rel_diff_mat(&matrix_e(&at)?.e, &e_at_pole_point(&v));
            Ok(r.max(e).max(rel_diff(h.val, s)).max(h.hgrad.amax() / (1.0 + v.amax())))
        })()));
    }
    Ok(vec![
        record("transform.conjugation.prescribe_jet", "fields with a prescribed horizontal 2-jet", 1e-10, round),
        record("transform.conjugation.pole_conjugation", "conjugated Hessian at the poles", 1e-8, pole),
        record("transform.conjugation.general_conjugation", "conjugated Hessian at a general point", 1e-8, general),
    ])
}

/// `max(u^{-(Q+2)/(Q-2)} |hess|, u^{-2Q/(Q-2)} |grad|^2)`, the size of the
/// separate terms of the tensor.
fn term_scale(h: &crate::jets::HorizontalJet) -> f64 {
    let q = homogeneous_dim(h.dim()) as f64;
    (h.val.powf(-(q + 2.0) / (q - 2.0)) * h.hhess.amax()).max(h.val.powf(-2.0 * q / (q - 2.0)) * h.hgrad.norm_squared())
}

/// Standard deviation over `|mean|` of `-Delta_H u / u^{(Q+2)/(Q-2)}` for the
/// Yamabe-type profile at `samples` points of gauge norm below 3.
pub fn yamabe_constancy(n: usize, samples: usize, rng: &mut impl Rng) -> Result<(f64, f64)> {
    let u = ExprField::parse("((1+znorm2)^2 + t^2)^(-0.25*QM2)", n)?;
    let q = homogeneous_dim(n) as f64;
    let mut vals = Vec::with_capacity(samples);
    for _ in 0..samples {
        let p = random_point_in_shell(n, 0.0, 3.0, rng);
        let h = u.horizontal_at(&p)?;
        vals.push(-sublaplacian(&h) / h.val.powf((q + 2.0) / (q - 2.0)));
    }
    let m = vals.len() as f64;
    let mean = vals.iter().sum::<f64>() / m;
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / m;
    Ok((var.sqrt() / mean.abs(), mean))
}

fn schouten_suite(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let corpus = builtin_corpus(n, CORPUS_SEED)?;
    let q = homogeneous_dim(n) as f64;
    let (mut trace, mut phi, mut canon) = (Vec::new(), Vec::new(), Vec::new());
    for (u, p) in corpus_points(n, &corpus, 50, rng) {
        let h = u.horizontal_at(&p)?;
        let a = schouten_tensor(u.as_ref(), &p)?;
        let tr = -2.0 / (q - 2.0) * h.val.powf(-(q + 2.0) / (q - 2.0)) * sublaplacian(&h);
        let floor = term_scale(&h);
        trace.push((a.trace() - tr).abs() / a.trace().abs().max(tr.abs()).max(floor).max(1e-300));
        let scale = a.a.amax().max(floor).max(1e-300);
        phi.push(res(schouten_from_phi(u.clone(), &p).map(|b| (&a.a - &b.a).amax() / scale)));
        canon.push(res(canonical_args(h.val, &h.hgrad, &h.hhess).map(|c| (&a.a - &c.a).amax() / scale)));
    }
    let mut out = vec![
        record("schouten.trace_identity", "trace of A^u against the sublaplacian", 1e-10, trace),
        record("schouten.phi_form", "A^u through phi = u^(-2/(Q-2))", 1e-10, phi),
        record("schouten.canonical_args", "A(s, v, U) against A^u", 1e-11, canon),
    ];

    let zero = DVector::zeros(2 * n);
    let scaling: Vec<f64> = (0..50)
        .map(|_| {
            let s: f64 = rng.gen_range(0.2..3.0);
            let u = random_u(n, rng);
            res((|| {
                let lhs = canonical_args(1.0, &zero, &(&u * s.powf(-(q + 2.0) / (q - 2.0))))?;
                let rhs = canonical_args(s, &zero, &u)?;
                Ok(rel_diff_mat(&lhs.a, &rhs.a))
            })())
        })
        .collect();
    out.push(record("schouten.scaling_identity", "A(s, 0, U) = A(1, 0, s^(-(Q+2)/(Q-2)) U)", 1e-11, scaling));

    for g in generators(n, rng) {
        let (mut mat, mut spec, mut total) = (Vec::new(), Vec::new(), 0);
        for e in &corpus.entries {
            let pts = admissible_points(n, &e.domain, &g, 100, rng);
            total += pts.len();
            let r = invariance_suite(e.field.clone().shared(), &g, &pts)?;
            mat.push(r.max_matrix());
            spec.push(r.max_spectrum().max(r.max_sigma()));
        }
        out.push(record_n(
            &format!("schouten.matrix_law.{}", g.name()),
            &format!("transformation of A^u: {}", g.name()),
            gen_tol(&g),
            total,
            mat,
        ));
        out.push(record_n(
            &format!("schouten.spectrum_invariance.{}", g.name()),
            &format!("spectrum and sigma_k of A^u invariant: {}", g.name()),
            1e-8,
            total,
            spec,
        ));
    }

    let finv: Vec<f64> = (1..=2 * n)
        .map(|k| res(f_invariance_conditions(sigma_of_sym(k), n, 100, 1e3, rng).map(|r| r.max())))
        .collect();
    out.push(record_n("schouten.f_invariance", "sigma_k of sym(A): unitary, reflection and J-shift invariance", 1e-10, 200 * n, finv));

    let preds = cone_predicates(n);
    let cones: Vec<f64> = preds
        .iter()
        .map(|c| res(c.self_test(2 * n, 200, rng).map(|t| (t.scaling_failures + t.monotonicity_failures) as f64)))
        .collect();
    out.push(record_n("schouten.cone_axioms", "cones: positive scaling and monotonicity (failure count)", 0.0,
        200 * preds.len(), cones));

    let (rel, mean) = yamabe_constancy(n, 500, rng)?;
    let mut y = record_n("schouten.yamabe_constancy", "Yamabe-type profile: constant scalar ratio", 1e-8, 500, [rel]);
    y.value = Some(mean);
    out.push(y);
    Ok(out)
}

pub const PERTURBATION_EPS: [f64; 3] = [1e-3, 1e-2, 1e-1];

fn perturbation_suite(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let corpus = builtin_corpus(n, CORPUS_SEED)?;
    let region = SampleRegion::test_box(n);
    let delta = admissible_delta(region.sup_z());
    let (mut main, mut eta, mut cross) = (Vec::new(), Vec::new(), Vec::new());
    let total = corpus.entries.len() * 200 * PERTURBATION_EPS.len();
    for e in &corpus.entries {
        let pts: Vec<Point> = (0..200).map(|_| e.domain.sample(n, rng)).collect();
        for eps in PERTURBATION_EPS {
            let r = perturbation_inequality(e.field.clone().shared(), delta, eps, &region, &pts)?;
            main.push((-r.worst_margin()).max(-r.worst_alt_form_margin()).max(0.0));
            eta.push((-r.worst_eta_margin()).max(0.0));
            cross.push(r.max_alt_form_residual());
        }
    }
    Ok(vec![
        record_n("perturbation.inequality", "A_(phi + eps eta) lower bound, relative to 1 + |A_phi|", 1e-10, total, main),
        record_n("perturbation.eta_bound", "A_eta >= (5/4) delta eta^2 I", 1e-10, total, eta),
        record_n("perturbation.two_forms_agree", "lower bound through u and through phi", 1e-8, total, cross),
    ])
}

/// Grid size used by the `grid-lite` suite.
pub const GRID_LITE: usize = 33;

fn grid_lite_suite() -> Result<Vec<CheckRecord>> {
    let mask = DomainMask::barrier_domain(GridSpec::cubic(GRID_LITE)?);
    let r = dirichlet_solve(&mask, 0.0, C0)?;
    let conv = fundamental_convergence(49, 3)?;
    let ann = DomainMask::annulus(mask.spec, 0.3, 1.0);
    let g = GridField::sample(mask.spec, |x, y, t| {
        let r2 = x * x + y * y;
        1.0 / (r2 * r2 + t * t).sqrt()
    });
    let mp = min_principle_check(&g, &ann);
    let mut order = record("grid.fundamental_order", "stencil residual of the fundamental solution: order below 1.85", 0.0,
        [(1.85 - conv.fitted_order()).max(0.0)]);
    order.value = Some(conv.fitted_order());
    let mut origin = record("grid.origin_positive", "sigma at the origin is positive", 0.0, [if r.origin_value > 0.0 { 0.0 } else { 1.0 }]);
    origin.value = Some(r.origin_value);
    Ok(vec![
        record("grid.solver_residual", "barrier problem: relative solver residual", 1e-8, [r.relative_residual]),
        record("grid.interior_nonnegative", "barrier problem: interior minimum above zero", 1e-9, [(-r.interior_min).max(0.0)]),
        origin,
        record("grid.flagged_fraction", "barrier problem: fraction of nodes outside the data range", 5e-3, [r.flagged_fraction()]),
        order,
        record("grid.min_principle", "fundamental solution on an annulus: discrete minimum principle", 1e-9,
            [(mp.boundary_min - mp.interior_min).max(0.0)]),
    ])
}
