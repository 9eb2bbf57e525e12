use dirichlet_core::bohr::PrimePolynomial;
use dirichlet_core::compose::{apply, char_power, char_power_exp, char_power_via_factorizations, Symbol};
use dirichlet_core::factor::{multiplicative_factorizations, pair_factorizations};
use dirichlet_core::superpose::{superpose, ScalarPolynomial};
use dirichlet_core::text;
use dirichlet_core::{Complex64, DirichletSeries, DoubleDirichletSeries};
use proptest::prelude::*;

fn coeff(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

fn series(max_index: u64, max_terms: usize, r: f64) -> impl Strategy<Value = DirichletSeries> {
    prop::collection::btree_map(1..=max_index, coeff(r), 0..=max_terms)
        .prop_map(move |m| DirichletSeries::new(m, max_index).unwrap())
}

fn double_series(max_index: u64, max_terms: usize, r: f64) -> impl Strategy<Value = DoubleDirichletSeries> {
    prop::collection::btree_map((1..=max_index, 1..=max_index), coeff(r), 0..=max_terms)
        .prop_map(move |m| DoubleDirichletSeries::new(m, (max_index, max_index)).unwrap())
}

fn symbol() -> impl Strategy<Value = Symbol> {
    (0u32..3, series(8, 4, 0.5)).prop_map(|(c0, phi)| Symbol::new(c0, phi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_is_commutative_and_associative(a in series(16, 6, 1.0), b in series(16, 6, 1.0), c in series(16, 6, 1.0)) {
        let n = 256;
        prop_assert!(a.mul(&b, n).max_abs_diff(&b.mul(&a, n)) < 1e-12);
        let left = a.mul(&b, n).mul(&c, n);
        let right = a.mul(&b.mul(&c, n), n);
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn mul_distributes_and_evaluates(a in series(16, 6, 1.0), b in series(16, 6, 1.0), c in series(16, 6, 1.0), h in -30.0f64..30.0) {
        let n = 256;
        let lhs = a.mul(&b.add(&c), n);
        let rhs = a.mul(&b, n).add(&a.mul(&c, n));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let s = Complex64::new(0.7, h);
        prop_assert!((a.mul(&b, n).evaluate(s) - a.evaluate(s) * b.evaluate(s)).norm() < 1e-10);
    }

    #[test]
    fn exp_is_a_homomorphism(a in series(32, 5, 0.5), b in series(32, 5, 0.5)) {
        let n = 64;
        let lhs = a.add(&b).exp_series(n);
        let rhs = a.exp_series(n).mul(&b.exp_series(n), n);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let back = a.exp_series(n).log_series(n).unwrap();
        prop_assert!(back.max_abs_diff(&a.with_truncation(n)) < 1e-12);
    }

    #[test]
    fn double_mul_commutes(a in double_series(8, 5, 1.0), b in double_series(8, 5, 1.0), h in -10.0f64..10.0) {
        let bounds = (64, 64);
        prop_assert!(a.mul(&b, bounds).max_abs_diff(&b.mul(&a, bounds)) < 1e-12);
        let (s, t) = (Complex64::new(0.5, h), Complex64::new(1.5, -h));
        prop_assert!((a.mul(&b, bounds).evaluate(s, t) - a.evaluate(s, t) * b.evaluate(s, t)).norm() < 1e-10);
    }

    #[test]
    fn apply_is_linear(sym in symbol(), a in series(8, 4, 1.0), b in series(8, 4, 1.0), z in coeff(2.0)) {
        let n = 512;
        let lhs = apply(&sym, &a.scale(z).add(&b), n).unwrap();
        let rhs = apply(&sym, &a, n).unwrap().scale(z).add(&apply(&sym, &b, n).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn char_power_starts_at_shifted_index(sym in symbol(), k in 2u64..10) {
        let p = char_power(k, &sym, 1024).unwrap();
        let shift = k.pow(sym.c0);
        prop_assert_eq!(p.min_index(), if shift <= 1024 { Some(shift) } else { None });
        prop_assert!(p.terms().iter().all(|(n, _)| n % shift == 0));
    }

    #[test]
    fn factorization_path_matches_exp_path(phi in double_series(12, 4, 0.5), k in 2u64..8) {
        let bounds = (12, 12);
        let a = char_power_via_factorizations(k, &phi, bounds);
        let b = char_power_exp(k, &phi, bounds);
        prop_assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn lift_is_an_algebra_isomorphism(a in series(48, 6, 1.0), b in series(48, 6, 1.0)) {
        let n = 48 * 48;
        let lhs = PrimePolynomial::lift(&a.mul(&b, n)).unlift_with_truncation(n);
        let rhs = PrimePolynomial::lift(&a).mul(&PrimePolynomial::lift(&b)).unlift_with_truncation(n);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-13);
        prop_assert_eq!(PrimePolynomial::lift(&a).unlift_with_truncation(48), a);
    }

    #[test]
    fn factorizations_multiply_back(m in 2u64..200, n in 1u64..12) {
        for f in multiplicative_factorizations(m) {
            prop_assert_eq!(f.product(), m);
        }
        for f in pair_factorizations(n, n + 1) {
            prop_assert_eq!(f.product(), (n, n + 1));
        }
    }

    #[test]
    fn superpose_respects_composition(
        phi in prop::collection::vec(coeff(1.0), 1..4),
        psi in prop::collection::vec(coeff(1.0), 1..3),
        d in series(6, 3, 0.5),
    ) {
        let (phi, psi) = (ScalarPolynomial::new(phi), ScalarPolynomial::new(psi));
        let n = 6u64.pow(6);
        let lhs = superpose(&phi.compose(&psi), &d, n);
        let rhs = superpose(&phi, &superpose(&psi, &d, n), n);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn text_roundtrip(a in series(1000, 12, 1e6), b in double_series(50, 8, 1e-3)) {
        prop_assert_eq!(text::parse_series(&text::write_series(&a)).unwrap(), a);
        prop_assert_eq!(text::parse_double_series(&text::write_double_series(&b)).unwrap(), b);
    }

    #[test]
    fn float_printing_is_lossless(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        prop_assert_eq!(text::format_float(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
    }
}
