#![allow(dead_code)]

use std::collections::BTreeMap;

use umbrella_core::model::{build_curve, build_umbrella, default_order, CurveSpec, PlaneCurve, Umbrella, UmbrellaCoefficients};
use umbrella_core::series::{int, Rational};

pub const K: usize = 8;

pub const MIN_DRAW_K: usize = 10;

pub fn coeffs(a: &[((usize, usize), i64)], b: &[(usize, i64)]) -> UmbrellaCoefficients {
    let a: BTreeMap<_, _> = a.iter().map(|&(ij, v)| (ij, int(v))).collect();
    let b: BTreeMap<_, _> = b.iter().map(|&(i, v)| (i, int(v))).collect();
    UmbrellaCoefficients::new(K, a, b).unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn setup(coeffs: &UmbrellaCoefficients, spec: &CurveSpec) -> (Umbrella, PlaneCurve) {
    let order = default_order(coeffs, spec);
    (build_umbrella(coeffs), build_curve(spec, order).unwrap())
}

/// a02 = 2, a11 = 1 with (x^2, x).
pub fn s1() -> (UmbrellaCoefficients, CurveSpec) {
    (coeffs(&[((0, 2), 2), ((1, 1), 1)], &[]), CurveSpec::Mp { m: 1, p: 2, c: ints(&[1]) })
}

/// a02 = 1, a11 = 1, b3 = -6 with (x^2 - 2x^3, x).
pub fn s2() -> (UmbrellaCoefficients, CurveSpec) {
    (coeffs(&[((0, 2), 1), ((1, 1), 1)], &[(3, -6)]), CurveSpec::Mp { m: 1, p: 2, c: ints(&[1, -2]) })
}

/// S2 with c_m = 1.
pub fn s2_variant() -> (UmbrellaCoefficients, CurveSpec) {
    (coeffs(&[((0, 2), 1), ((1, 1), 1)], &[(3, -6)]), CurveSpec::Mp { m: 1, p: 2, c: ints(&[1, 1]) })
}

/// a02 = 2 with (x^4, x^3).
pub fn s3() -> (UmbrellaCoefficients, CurveSpec) {
    (coeffs(&[((0, 2), 2)], &[]), CurveSpec::Mpq { m: 3, p: 1, q: 1, c: ints(&[1]) })
}

/// `c(λ t)` with `λ` chosen so the float frame has bounded coefficients.
pub fn conditioned(u: &Umbrella, curve: PlaneCurve) -> PlaneCurve {
    use umbrella_core::frame::{conditioning_scale, darboux_frame, FrameFactors};
    let f = FrameFactors::compute(u, &curve).unwrap().to_float();
    let lambda = conditioning_scale(&darboux_frame(&f).unwrap());
    curve.rescaled(&lambda).unwrap()
}

/// Random family draws, rescaled by [`conditioned`]. The drawn umbrella is
/// treated as the polynomial map it is, so it is expanded to degree
/// at least [`MIN_DRAW_K`].
pub fn conditioned_draws(seed: u64, n: usize) -> Vec<(UmbrellaCoefficients, CurveSpec, Umbrella, PlaneCurve)> {
    use umbrella_core::sampling::{random_family_draw, rng_for};
    (0..n)
        .map(|i| {
            let (c, s) = random_family_draw(&mut rng_for(seed, i as u64)).unwrap();
            let c = UmbrellaCoefficients::new(c.k().max(MIN_DRAW_K), c.a_terms().clone(), c.b_terms().clone()).unwrap();
            let u = build_umbrella(&c);
            let curve = conditioned(&u, build_curve(&s, default_order(&c, &s)).unwrap());
            (c, s, u, curve)
        })
        .collect()
}

/// a02 = 2, a11 = 1 with ((1 + x) x^2, x): A = 0.
pub fn a_zero() -> (UmbrellaCoefficients, CurveSpec) {
    (coeffs(&[((0, 2), 2), ((1, 1), 1)], &[]), CurveSpec::Mp { m: 1, p: 2, c: ints(&[1, 1]) })
}

/// a02 = 2, b3 = 2 with (x^2, x): C = 0.
pub fn c_zero() -> (UmbrellaCoefficients, CurveSpec) {
    (coeffs(&[((0, 2), 2)], &[(3, 2)]), CurveSpec::Mp { m: 1, p: 2, c: ints(&[1]) })
}
