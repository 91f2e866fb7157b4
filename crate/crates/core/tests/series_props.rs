use proptest::prelude::*;
use umbrella_core::series::{int, ratio, BiSeries, Rational, Series, Vec3Series};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

fn exact_series(len: usize) -> impl Strategy<Value = Series<Rational>> {
    prop::collection::vec(rational(), len).prop_map(Series::from_coeffs)
}

fn float_series(len: usize) -> impl Strategy<Value = Series<f64>> {
    prop::collection::vec(-3.0f64..3.0, len).prop_map(Series::from_coeffs)
}

fn unit_constant(s: Series<Rational>) -> Series<Rational> {
    let mut c = s.into_coeffs();
    c[0] = int(1);
    Series::from_coeffs(c)
}

fn horner(poly: &[Rational], x: &Series<Rational>, order: usize) -> Series<Rational> {
    let mut acc = Series::zero(order);
    for c in poly.iter().rev() {
        acc = &(&acc * x) + &Series::constant(c.clone(), order);
    }
    acc
}

fn vec3(len: usize) -> impl Strategy<Value = Vec3Series<Rational>> {
    (exact_series(len), exact_series(len), exact_series(len)).prop_map(|(x, y, z)| Vec3Series::new(x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_commutes_and_associates(a in exact_series(6), b in exact_series(6), c in exact_series(6)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn reciprocal_inverts(a in exact_series(7)) {
        let a = unit_constant(a);
        let r = a.reciprocal().unwrap();
        prop_assert_eq!(&a * &r, Series::constant(int(1), 6));
    }

    #[test]
    fn leibniz_rule(a in exact_series(6), b in exact_series(6)) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn float_sqrt_squares_back(mut c in prop::collection::vec(-2.0f64..2.0, 8), c0 in 0.5f64..4.0) {
        c[0] = c0;
        let s = Series::from_coeffs(c);
        let r = s.sqrt().unwrap();
        prop_assert!((&r.square() - &s).max_abs() < 1e-9);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in float_series(12), b in float_series(12), x in -0.05f64..0.05) {
        // truncation error of a degree-11 product at |x| <= 0.05 stays below 1e-11
        let p = (&a * &b).eval_f64(x);
        prop_assert!((p - a.eval_f64(x) * b.eval_f64(x)).abs() < 1e-9);
    }

    #[test]
    fn compose_agrees_with_horner(poly in prop::collection::vec(rational(), 4), mut x in exact_series(6)) {
        let mut coeffs = x.clone().into_coeffs();
        coeffs[0] = int(0);
        x = Series::from_coeffs(coeffs);
        // F(u, v) = poly(u) as a bivariate series in u only
        let mut f = BiSeries::zero(5);
        for (i, c) in poly.iter().enumerate() {
            f.set(i, 0, c.clone());
        }
        let v = Series::zero(5);
        prop_assert_eq!(f.compose(&x, &v).unwrap(), horner(&poly, &x, 5));
    }

    #[test]
    fn compose_respects_products(a in exact_series(4), b in exact_series(4), u in exact_series(5), v in exact_series(5)) {
        let kill0 = |s: Series<Rational>| { let mut c = s.into_coeffs(); c[0] = int(0); Series::from_coeffs(c) };
        let (u, v) = (kill0(u), kill0(v));
        // F = sum a_i u^i v, G = sum b_j v^j
        let mut f = BiSeries::zero(5);
        let mut g = BiSeries::zero(5);
        for (i, c) in a.coeffs().iter().enumerate() { f.set(i, 1, c.clone()); }
        for (j, c) in b.coeffs().iter().enumerate() { g.set(0, j, c.clone()); }
        let mut fg = BiSeries::zero(5);
        for (i, j, c) in f.terms() {
            for (k, l, d) in g.terms() {
                if i + j + k + l <= 5 {
                    fg.add_term(i + k, j + l, &(c * d));
                }
            }
        }
        let lhs = fg.compose(&u, &v).unwrap();
        let rhs = &f.compose(&u, &v).unwrap() * &g.compose(&u, &v).unwrap();
        let order = lhs.order();
        prop_assert_eq!(lhs, rhs.truncate(order));
    }

    #[test]
    fn cross_product_identities(a in vec3(5), b in vec3(5), c in vec3(5)) {
        let axb = a.cross(&b);
        prop_assert_eq!(axb.dot(&a), Series::zero(4));
        prop_assert_eq!(axb.dot(&b), Series::zero(4));
        // Lagrange: |a x b|^2 = |a|^2 |b|^2 - <a, b>^2
        prop_assert_eq!(axb.norm_sq(), &(&a.norm_sq() * &b.norm_sq()) - &a.dot(&b).square());
        // triple product is cyclic
        prop_assert_eq!(axb.dot(&c), b.cross(&c).dot(&a));
        prop_assert_eq!(axb.derivative(), a.derivative().cross(&b).add(&a.cross(&b.derivative())));
    }
}
