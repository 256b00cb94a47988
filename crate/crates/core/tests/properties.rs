use heisenberg_cr::fields::{parse_field, BinOp, Coord, Expr, Func};
use heisenberg_cr::group::{check_invert, compose, dilate, distance, gauge_norm, invert, Point};
use proptest::prelude::*;

fn leaf(n: usize) -> impl Strategy<Value = Expr> {
    prop_oneof![
        prop_oneof![0.0..1e3f64, 0.0..1e-6f64, Just(0.0), (0u32..100).prop_map(f64::from)].prop_map(Expr::Num),
        (0..n).prop_map(|i| Expr::Var(Coord::X(i))),
        (0..n).prop_map(|i| Expr::Var(Coord::Y(i))),
        Just(Expr::Var(Coord::T)),
        Just(Expr::ZNorm2),
        Just(Expr::GNorm4),
    ]
}

fn expr(n: usize) -> impl Strategy<Value = Expr> {
    leaf(n).prop_recursive(5, 48, 2, |inner| {
        let op = prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div)];
        let func = prop_oneof![Just(Func::Exp), Just(Func::Log), Just(Func::Sqrt)];
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| Expr::bin(o, a, b)),
            (inner.clone(), -4.0..4.0f64).prop_map(|(a, r)| a.pow(r)),
            (func, inner).prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}

fn point(n: usize) -> impl Strategy<Value = Point> {
    (prop::collection::vec(-3.0..3.0f64, 2 * n), -3.0..3.0f64).prop_map(|(z, t)| Point::from_z(z, t))
}

fn close(a: &Point, b: &Point, tol: f64) -> bool {
    let scale = b.coords().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    a.max_abs_diff(b) <= tol * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_is_identity(e in expr(2)) {
        let text = e.to_string();
        let back = parse_field(&text, 2).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e);
    }

    #[test]
    fn group_axioms(a in point(2), b in point(2), c in point(2)) {
        prop_assert!(close(&compose(&compose(&a, &b), &c), &compose(&a, &compose(&b, &c)), 1e-12));
        prop_assert!(close(&compose(&a, &invert(&a)), &Point::origin(2), 1e-12));
        prop_assert_eq!(compose(&a, &Point::origin(2)), a.clone());
        let d = distance(&compose(&c, &a), &compose(&c, &b));
        prop_assert!((d - distance(&a, &b)).abs() <= 1e-12 * (1.0 + d));
    }

    #[test]
    fn gauge_norm_is_homogeneous(a in point(1), l in 0.05..20.0f64) {
        let g = gauge_norm(&dilate(l, &a).unwrap());
        prop_assert!((g - l * gauge_norm(&a)).abs() <= 1e-12 * (1.0 + g));
    }

    #[test]
    fn inversion_is_an_involution(a in point(2)) {
        prop_assume!(gauge_norm(&a) > 0.05);
        let back = check_invert(&check_invert(&a).unwrap()).unwrap();
        prop_assert!(close(&back, &a, 1e-11));
    }
}
