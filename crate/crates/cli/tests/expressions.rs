use dirichlet_cli::expr::{evaluate, print_double_series, print_series, Value};
use dirichlet_cli::{parse_input, Input};
use dirichlet_core::text;
use dirichlet_core::{Complex64, DirichletSeries, DoubleDirichletSeries};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Complex64> {
    (-1e3..1e3f64, -1e3..1e3f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn series() -> impl Strategy<Value = DirichletSeries> {
    prop::collection::btree_map(1..=60u64, coeff(), 1..8).prop_map(|m| {
        let n = *m.keys().max().unwrap();
        DirichletSeries::new(m, n).unwrap()
    })
}

fn double_series() -> impl Strategy<Value = DoubleDirichletSeries> {
    prop::collection::btree_map((1..=12u64, 1..=12u64), coeff(), 1..8).prop_map(|m| {
        let bounds = m.keys().fold((1, 1), |a, &(x, y)| (a.0.max(x), a.1.max(y)));
        DoubleDirichletSeries::new(m, bounds).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_is_identity_on_canonical_expressions(d in series(), e in double_series()) {
        let canonical = print_series(&d);
        let Ok(Value::Single(back)) = evaluate(&canonical, None) else { panic!("{canonical}") };
        prop_assert_eq!(print_series(&back), canonical);
        let canonical = print_double_series(&e);
        let Ok(Value::Double(back)) = evaluate(&canonical, None) else { panic!("{canonical}") };
        prop_assert_eq!(print_double_series(&back), canonical);
    }

    #[test]
    fn parse_print_is_identity_on_text_format(d in series(), e in double_series()) {
        let doc = text::write_series(&d);
        prop_assert_eq!(parse_input(&doc, None).unwrap(), Input::Single(d));
        let doc = text::write_double_series(&e);
        prop_assert_eq!(parse_input(&doc, None).unwrap(), Input::Double(e));
    }

    #[test]
    fn expressions_match_pointwise_arithmetic(a in 1u64..20, b in 1u64..20, x in -3.0..3.0f64, h in -20.0..20.0f64) {
        let text = format!("({x}+1i)*{a}^-s*(1-{b}^-s) + 2^-s");
        let Ok(Value::Single(d)) = evaluate(&text, None) else { panic!("{text}") };
        let s = Complex64::new(1.5, h);
        let pow = |n: u64| (-s * (n as f64).ln()).exp();
        let direct = Complex64::new(x, 1.0) * pow(a) * (1.0 - pow(b)) + pow(2);
        prop_assert!((d.evaluate(s) - direct).norm() < 1e-10);
    }
}
