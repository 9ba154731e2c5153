use std::f64::consts::PI;

use fracops::closed_form::apply_net_order;
use fracops::quadrature::integrate_numeric_fixed;
use fracops::special::is_gamma_pole;
use fracops::*;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn off_poles(z: Complex64) -> bool {
    !(z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-3 && z.im.abs() < 1e-3)
}

fn complex(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(a, b)| c(a, b))
}

fn order(
    re: std::ops::Range<f64>,
    im: std::ops::Range<f64>,
) -> impl Strategy<Value = ComplexOrder> {
    (re, im).prop_map(|(a, b)| ComplexOrder::from_parts(a, b))
}

fn power_sum() -> impl Strategy<Value = CausalFunction> {
    prop::collection::vec(
        (complex(-5.0..5.0, -5.0..5.0), complex(-0.9..4.0, -3.0..3.0)),
        1..5,
    )
    .prop_map(|terms| {
        let terms = terms
            .into_iter()
            .map(|(coef, p)| PowerTerm::new(coef, p))
            .collect();
        CausalFunction::new(terms, 0.0).unwrap()
    })
}

fn stage() -> impl Strategy<Value = OperatorStage> {
    (any::<bool>(), complex(0.05..2.0, -1.5..1.5)).prop_map(|(integral, s)| {
        let s = ComplexOrder::new(s).unwrap();
        if integral {
            OperatorStage::integral(s)
        } else {
            OperatorStage::derivative(s).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recurrence(z in complex(-5.0..20.0, -10.0..10.0).prop_filter("pole", |z| off_poles(*z))) {
        let lhs = gamma(z + 1.0).unwrap();
        prop_assert!(rel(z * gamma(z).unwrap(), lhs) <= 1e-11);
    }

    #[test]
    fn gamma_reflection(z in complex(-5.0..5.0, -8.0..8.0)
        .prop_filter("pole", |z| off_poles(*z) && off_poles(1.0 - *z))) {
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        prop_assert!(rel(lhs, PI / (z * PI).sin()) <= 1e-10);
    }

    #[test]
    fn gamma_conjugate_symmetry(z in complex(-5.0..20.0, -10.0..10.0).prop_filter("pole", |z| off_poles(*z))) {
        prop_assert!(rel(gamma(z.conj()).unwrap(), gamma(z).unwrap().conj()) <= 1e-12);
    }

    #[test]
    fn beta_symmetry(a in complex(0.05..6.0, -4.0..4.0), b in complex(0.05..6.0, -4.0..4.0)) {
        prop_assert!(rel(beta(a, b).unwrap(), beta(b, a).unwrap()) <= 1e-12);
    }

    #[test]
    fn gamma_ratio_matches_quotient(
        a in complex(-4.0..15.0, -6.0..6.0).prop_filter("pole", |z| off_poles(*z)),
        b in complex(-4.0..15.0, -6.0..6.0).prop_filter("pole", |z| off_poles(*z)),
    ) {
        let want = gamma(a).unwrap() / gamma(b).unwrap();
        prop_assert!(rel(gamma_ratio(a, b).unwrap(), want) <= 1e-11);
    }

    #[test]
    fn gamma_ratio_integer_shift(a in complex(0.1..10.0, -3.0..3.0), n in 0u32..20) {
        let want = gamma(a).unwrap() / gamma(a + n as f64).unwrap();
        prop_assert!(rel(gamma_ratio(a, a + n as f64).unwrap(), want) <= 1e-11);
    }

    #[test]
    fn linear_combine_is_pointwise(
        f in power_sum(),
        g in power_sum(),
        a in complex(-3.0..3.0, -3.0..3.0),
        b in complex(-3.0..3.0, -3.0..3.0),
        x in 0.1f64..5.0,
    ) {
        let h = linear_combine(a, &f, b, &g).unwrap();
        let want = a * f.evaluate(x).unwrap() + b * g.evaluate(x).unwrap();
        let scale = (a * f.evaluate(x).unwrap()).norm() + (b * g.evaluate(x).unwrap()).norm();
        prop_assert!((h.evaluate(x).unwrap() - want).norm() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn causal_functions_vanish_below_the_limit(f in power_sum(), x in -50.0f64..-1e-9) {
        prop_assert_eq!(f.evaluate(x).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn closed_form_semigroup(
        f in power_sum(),
        s1 in order(0.05..2.0, -1.5..1.5),
        s2 in order(0.05..2.0, -1.5..1.5),
        x in 0.2f64..4.0,
    ) {
        let step = apply_net_order(s1.value(), &apply_net_order(s2.value(), &f).unwrap()).unwrap();
        let direct = apply_net_order(s1.value() + s2.value(), &f).unwrap();
        prop_assert!(rel(step.evaluate(x).unwrap(), direct.evaluate(x).unwrap()) <= 1e-10);
    }

    #[test]
    fn closed_form_left_inverse(f in power_sum(), s in order(0.05..2.5, -1.5..1.5)) {
        let chain = OperatorExpr::new(
            vec![OperatorStage::derivative(s).unwrap(), OperatorStage::integral(s)],
            LowerLimit::Finite(0.0),
        );
        prop_assert_eq!(apply_closed(&chain, &f).unwrap(), f.clone());
        let back = apply_net_order(-s.value(), &apply_net_order(s.value(), &f).unwrap()).unwrap();
        for x in [0.5, 1.0, 2.0] {
            prop_assert!(rel(back.evaluate(x).unwrap(), f.evaluate(x).unwrap()) <= 1e-10);
        }
    }

    #[test]
    fn first_derivative_lowers_integral_order(
        p in complex(-0.9..3.0, -2.0..2.0),
        s in order(1.05..3.0, -1.5..1.5),
        x in 0.2f64..4.0,
    ) {
        let f = CausalFunction::power(c(1.0, 0.0), p).unwrap();
        let d_of_j = apply_net_order(c(-1.0, 0.0), &apply_net_order(s.value(), &f).unwrap()).unwrap();
        let lowered = apply_net_order(s.value() - 1.0, &f).unwrap();
        prop_assert!(rel(d_of_j.evaluate(x).unwrap(), lowered.evaluate(x).unwrap()) <= 1e-10);
    }

    #[test]
    fn normalize_ignores_stage_order(stages in prop::collection::vec(stage(), 1..6), seed in any::<u64>()) {
        let mut shuffled = stages.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed.rotate_left(i as u32) % (i as u64 + 1)) as usize);
        }
        let a = normalize(&OperatorExpr::new(stages, LowerLimit::Finite(0.0)));
        let b = normalize(&OperatorExpr::new(shuffled, LowerLimit::Finite(0.0)));
        prop_assert!((a.sigma - b.sigma).norm() <= 1e-12);
        prop_assert_eq!(a.k, b.k);
        prop_assert_eq!(a.branch, b.branch);
    }

    #[test]
    fn normalize_ignores_splitting(s in complex(0.1..3.0, -2.0..2.0), t in 0.05f64..0.95) {
        let whole = ComplexOrder::new(s).unwrap();
        let first = ComplexOrder::new(s * t).unwrap();
        let second = ComplexOrder::new(s * (1.0 - t)).unwrap();
        let a = normalize(&OperatorExpr::new(vec![OperatorStage::integral(whole)], LowerLimit::Finite(0.0)));
        let b = normalize(&OperatorExpr::new(
            vec![OperatorStage::integral(first), OperatorStage::integral(second)],
            LowerLimit::Finite(0.0),
        ));
        prop_assert!((a.sigma - b.sigma).norm() <= 1e-12);
        prop_assert_eq!(a.branch, b.branch);
    }

    #[test]
    fn beta_modulus_bound(s in order(0.05..3.0, -3.0..3.0), p in 0.0f64..5.0) {
        let lhs = beta(s.value(), c(p + 1.0, 0.0)).unwrap().norm();
        let rhs = beta(c(s.alpha(), 0.0), c(p + 1.0, 0.0)).unwrap().re;
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn render_parse_round_trip(f in power_sum()) {
        let text = f.render();
        prop_assert_eq!(parse_function(&text).unwrap(), f, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn numeric_integral_matches_closed_form(
        s in order(0.05..3.0, -2.0..2.0),
        p in complex(-0.45..3.0, -2.0..2.0),
        x in 0.05f64..5.0,
    ) {
        let f = move |y: f64| if y <= 0.0 { c(0.0, 0.0) } else { complex_pow(y, p).unwrap() };
        let num = integrate_numeric(&f, s, x, 0.0, &QuadConfig::default()).unwrap();
        let (coef, e) = integrate_power(p, s).unwrap();
        prop_assert!(rel(num, coef * complex_pow(x, e).unwrap()) <= 1e-8);
    }

    #[test]
    fn fixed_degree_quadrature_is_linear(
        s in order(0.05..3.0, -2.0..2.0),
        p in complex(-0.45..3.0, -2.0..2.0),
        q in complex(-0.45..3.0, -2.0..2.0),
        a in complex(-3.0..3.0, -3.0..3.0),
        b in complex(-3.0..3.0, -3.0..3.0),
        x in 0.1f64..5.0,
    ) {
        let f = move |y: f64| if y <= 0.0 { c(0.0, 0.0) } else { complex_pow(y, p).unwrap() };
        let g = move |y: f64| if y <= 0.0 { c(0.0, 0.0) } else { complex_pow(y, q).unwrap() };
        let h = move |y: f64| a * f(y) + b * g(y);
        let lhs = integrate_numeric_fixed(&h, s, x, 0.0, 64).unwrap();
        let jf = integrate_numeric_fixed(&f, s, x, 0.0, 64).unwrap();
        let jg = integrate_numeric_fixed(&g, s, x, 0.0, 64).unwrap();
        let scale = (a * jf).norm() + (b * jg).norm();
        prop_assert!((lhs - (a * jf + b * jg)).norm() <= 1e-12 * scale);
    }

    #[test]
    fn numeric_convergence_bound(s in order(0.05..3.0, -2.0..2.0), p in 0.0f64..4.0, x in 0.1f64..4.0) {
        let f = move |y: f64| if y <= 0.0 { c(0.0, 0.0) } else { c(y.powf(p), 0.0) };
        let lhs = integrate_numeric(&f, s, x, 0.0, &QuadConfig::default()).unwrap().norm();
        let rhs = x.powf(s.alpha() + p) / (s.alpha() * gamma(s.value()).unwrap().norm());
        prop_assert!(lhs <= rhs * (1.0 + 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn numeric_derivative_independent_of_k(
        s in order(0.05..2.5, -1.5..1.5),
        p in complex(0.0..3.0, -1.5..1.5),
        x in 0.5f64..3.0,
    ) {
        let f = move |y: f64| if y <= 0.0 { c(0.0, 0.0) } else { complex_pow(y, p).unwrap() };
        let k = choose_k(s);
        let cfg = QuadConfig::default();
        let a = differentiate_numeric(&f, s, x, 0.0, k, &cfg).unwrap();
        let b = differentiate_numeric(&f, s, x, 0.0, k + 1, &cfg).unwrap();
        prop_assert!(rel(a, b) <= 1e-5);
        let (coef, e) = differentiate_power(p, s).unwrap();
        prop_assert!(rel(a, coef * complex_pow(x, e).unwrap()) <= 1e-5);
    }

    #[test]
    fn numeric_semigroup(
        s1 in order(0.2..1.2, -0.5..0.5),
        s2 in order(0.2..1.2, -0.5..0.5),
        x in 0.5f64..2.0,
    ) {
        let f = |y: f64| if y <= 0.0 { c(0.0, 0.0) } else { c(y * y + y, 0.0) };
        let inner_cfg = QuadConfig { rel_tol: 1e-12, ..QuadConfig::default() };
        let inner = |y: f64| {
            if y <= 0.0 { c(0.0, 0.0) } else { integrate_numeric(&f, s2, y, 0.0, &inner_cfg).unwrap() }
        };
        let nested = integrate_numeric(&inner, s1, x, 0.0, &QuadConfig::default()).unwrap();
        let sum = ComplexOrder::new(s1.value() + s2.value()).unwrap();
        let direct = integrate_numeric(&f, sum, x, 0.0, &inner_cfg).unwrap();
        prop_assert!(rel(nested, direct) <= 1e-6);
    }
}

#[test]
fn poles_are_rejected() {
    for n in 0..6 {
        let z = c(-(n as f64), 0.0);
        assert!(is_gamma_pole(z));
        assert!(matches!(gamma(z), Err(Error::Pole(_))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn identity_chain_returns_exact_values(f in power_sum(), s in order(0.05..2.5, -1.5..1.5), x in 0.1f64..5.0) {
        let chain = OperatorExpr::new(
            vec![OperatorStage::integral(s), OperatorStage::derivative(s).unwrap()],
            LowerLimit::Finite(0.0),
        );
        prop_assert_eq!(normalize(&chain).branch, Branch::Identity);
        let rows = apply(&chain, &Operand::Causal(f.clone()), &[x], Method::Closed, &QuadConfig::default());
        prop_assert_eq!(rows[0].value, Some(f.evaluate(x).unwrap()));
    }
}
