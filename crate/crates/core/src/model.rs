//! Input model: the umbrella in normal form, the plane curves through its
//! singular point, and the tangency behaviour of their images.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::series::{int, BiSeries, Coeff, Rational, Series, Valuation, Vec3Series};

/// Normal-form coefficients `a_ij` (`2 <= i + j <= k`) and `b_i` (`3 <= i <= k`).
///
/// Absent entries are zero. `a_02` must be nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct UmbrellaCoefficients {
    k: usize,
    a: BTreeMap<(usize, usize), Rational>,
    b: BTreeMap<usize, Rational>,
}

impl UmbrellaCoefficients {
    pub fn new(
        k: usize,
        a: BTreeMap<(usize, usize), Rational>,
        b: BTreeMap<usize, Rational>,
    ) -> Result<Self> {
        let mut problems = Vec::new();
        if k < 3 {
            problems.push(format!("truncation degree k must be at least 3 (got {k})"));
        }
        for &(i, j) in a.keys() {
            if i + j < 2 || i + j > k {
                problems.push(format!("a_{i}{j} lies outside 2 <= i + j <= {k}"));
            }
        }
        for &i in b.keys() {
            if i < 3 || i > k {
                problems.push(format!("b_{i} lies outside 3 <= i <= {k}"));
            }
        }
        if a.get(&(0, 2)).is_none_or(Coeff::is_zero) {
            problems.push("a_02 must be nonzero".into());
        }
        if !problems.is_empty() {
            return Err(Error::InvalidCoefficients(problems.join("; ")));
        }
        let a = a.into_iter().filter(|(_, c)| !Coeff::is_zero(c)).collect();
        let b = b.into_iter().filter(|(_, c)| !Coeff::is_zero(c)).collect();
        Ok(Self { k, a, b })
    }

    /// The standard cross-cap `(u, uv, v^2)`: `a_02 = 2`, everything else zero.
    pub fn standard(k: usize) -> Self {
        Self::new(k, BTreeMap::from([((0, 2), int(2))]), BTreeMap::new())
            .expect("standard cross-cap is valid")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self, i: usize, j: usize) -> Rational {
        self.a.get(&(i, j)).cloned().unwrap_or_else(|| int(0))
    }

    pub fn b(&self, i: usize) -> Rational {
        self.b.get(&i).cloned().unwrap_or_else(|| int(0))
    }

    /// Nonzero `a_ij`.
    pub fn a_terms(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.a
    }

    /// Nonzero `b_i`.
    pub fn b_terms(&self) -> &BTreeMap<usize, Rational> {
        &self.b
    }
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(int(1), |acc, i| acc * int(i))
}

/// The umbrella `W(u, v) = (u, uv + B(v), A(u, v))` as bivariate series
/// reliable to total degree `k`, with
/// `B(v) = sum b_i v^i / i!` and `A(u, v) = sum a_ij u^i v^j / (i! j!)`.
#[derive(Clone, Debug)]
pub struct Umbrella {
    coeffs: UmbrellaCoefficients,
    components: [BiSeries<Rational>; 3],
}

pub fn build_umbrella(coeffs: &UmbrellaCoefficients) -> Umbrella {
    let k = coeffs.k();
    let mut x = BiSeries::zero(k);
    x.set(1, 0, int(1));
    let mut y = BiSeries::zero(k);
    y.set(1, 1, int(1));
    for (&i, b) in coeffs.b_terms() {
        y.set(0, i, b / factorial(i));
    }
    let mut z = BiSeries::zero(k);
    for (&(i, j), a) in coeffs.a_terms() {
        z.set(i, j, a / (factorial(i) * factorial(j)));
    }
    Umbrella { coeffs: coeffs.clone(), components: [x, y, z] }
}

impl Umbrella {
    pub fn coefficients(&self) -> &UmbrellaCoefficients {
        &self.coeffs
    }

    pub fn components(&self) -> &[BiSeries<Rational>; 3] {
        &self.components
    }

    /// `W(c_w(x))`.
    pub fn image_curve(&self, curve: &PlaneCurve) -> Result<Vec3Series<Rational>> {
        compose3(&self.components, curve)
    }

    /// `(W_u x W_v)(c_w(x))`: the partials are composed first, then crossed.
    pub fn normal_field_raw(&self, curve: &PlaneCurve) -> Result<Vec3Series<Rational>> {
        let [x, y, z] = &self.components;
        let wu = [x.partial_u()?, y.partial_u()?, z.partial_u()?];
        let wv = [x.partial_v()?, y.partial_v()?, z.partial_v()?];
        let wu = compose3(&wu, curve)?;
        let wv = compose3(&wv, curve)?;
        Ok(wu.cross(&wv))
    }

    /// Floating evaluation of `W(u, v)`.
    pub fn eval(&self, u: f64, v: f64) -> [f64; 3] {
        let [x, y, z] = &self.components;
        [x.eval_f64(u, v), y.eval_f64(u, v), z.eval_f64(u, v)]
    }
}

fn compose3(f: &[BiSeries<Rational>; 3], curve: &PlaneCurve) -> Result<Vec3Series<Rational>> {
    Ok(Vec3Series::new(
        f[0].compose(&curve.u, &curve.v)?,
        f[1].compose(&curve.u, &curve.v)?,
        f[2].compose(&curve.u, &curve.v)?,
    ))
}

/// A plane curve germ in the source of the umbrella.
///
/// The polynomial families are `(c(x) x^(mp+q), x^m)` and `(c(x) x^(mp), x^m)`
/// with `c(0) != 0`; `General` takes both components as polynomials.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveSpec {
    Mpq { m: usize, p: usize, q: usize, c: Vec<Rational> },
    Mp { m: usize, p: usize, c: Vec<Rational> },
    General { u: Vec<Rational>, v: Vec<Rational> },
}

fn poly_valuation(p: &[Rational]) -> Option<usize> {
    p.iter().position(|c| !Coeff::is_zero(c))
}

impl CurveSpec {
    /// Collects every violated bound.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let c0_nonzero = |c: &[Rational]| c.first().is_some_and(|c0| !Coeff::is_zero(c0));
        match self {
            CurveSpec::Mpq { m, p, q, c } => {
                if *m < 2 {
                    problems.push(format!("family mpq needs m >= 2 (got m = {m})"));
                }
                if *p < 1 {
                    problems.push(format!("family mpq needs p >= 1 (got p = {p})"));
                }
                if *q < 1 || q >= m {
                    problems.push(format!("family mpq needs 1 <= q < m (got q = {q}, m = {m})"));
                }
                if !c0_nonzero(c) {
                    problems.push("c_0 must be nonzero".into());
                }
            }
            CurveSpec::Mp { m, p, c } => {
                if *m < 1 {
                    problems.push(format!("family mp needs m >= 1 (got m = {m})"));
                }
                if *p < 2 {
                    problems.push(format!("family mp needs p >= 2 (got p = {p})"));
                }
                if !c0_nonzero(c) {
                    problems.push("c_0 must be nonzero".into());
                }
            }
            CurveSpec::General { u, v } => {
                for (name, s) in [("u", u), ("v", v)] {
                    match poly_valuation(s) {
                        None => problems.push(format!("component {name} is identically zero")),
                        Some(0) => problems.push(format!("component {name} must vanish at 0")),
                        Some(_) => {}
                    }
                }
                if problems.is_empty() && proportional(u, v) {
                    problems.push("components are proportional; the curve is a straight line".into());
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidCurve(problems.join("; ")))
        }
    }

    /// Multiplicity `m_min = min(val u, val v)`.
    pub fn multiplicity(&self) -> usize {
        match self {
            CurveSpec::Mpq { m, .. } | CurveSpec::Mp { m, .. } => *m,
            CurveSpec::General { u, v } => {
                poly_valuation(u).unwrap_or(usize::MAX).min(poly_valuation(v).unwrap_or(usize::MAX))
            }
        }
    }

    /// Coefficient polynomials of the two components.
    pub fn components(&self) -> (Vec<Rational>, Vec<Rational>) {
        let family = |shift: usize, m: usize, c: &[Rational]| {
            let mut u = vec![int(0); shift];
            u.extend(c.iter().cloned());
            let mut v = vec![int(0); m];
            v.push(int(1));
            (u, v)
        };
        match self {
            CurveSpec::Mpq { m, p, q, c } => family(m * p + q, *m, c),
            CurveSpec::Mp { m, p, c } => family(m * p, *m, c),
            CurveSpec::General { u, v } => (u.clone(), v.clone()),
        }
    }

    /// `c(x)` for the families.
    pub fn c(&self) -> Option<&[Rational]> {
        match self {
            CurveSpec::Mpq { c, .. } | CurveSpec::Mp { c, .. } => Some(c),
            CurveSpec::General { .. } => None,
        }
    }
}

fn proportional(u: &[Rational], v: &[Rational]) -> bool {
    let n = u.len().max(v.len());
    let at = |s: &[Rational], i: usize| s.get(i).cloned().unwrap_or_else(|| int(0));
    (0..n).all(|i| (0..n).all(|j| at(u, i) * at(v, j) == at(u, j) * at(v, i)))
}

/// `K = m_min (k + 1) - 1`, the highest degree the composition can certify.
pub fn default_order(coeffs: &UmbrellaCoefficients, spec: &CurveSpec) -> usize {
    spec.multiplicity() * (coeffs.k() + 1) - 1
}

/// A curve `x -> (u(x), v(x))` with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    pub u: Series<Rational>,
    pub v: Series<Rational>,
}

impl PlaneCurve {
    /// Needs `u(0) = v(0) = 0` and at least one component nonvanishing to `order`.
    pub fn new(u: Series<Rational>, v: Series<Rational>) -> Result<Self> {
        let curve = Self { u, v };
        if !curve.u.at_zero()?.is_zero() || !curve.v.at_zero()?.is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if curve.multiplicity().is_none() {
            return Err(Error::InvalidCurve("curve vanishes to the reliable order".into()));
        }
        Ok(curve)
    }

    /// Polynomial curve reliable to `order`.
    pub fn from_polynomials(u: &[Rational], v: &[Rational], order: usize) -> Result<Self> {
        Self::new(Series::from_polynomial(u, order), Series::from_polynomial(v, order))
    }

    pub fn multiplicity(&self) -> Option<usize> {
        let vu = self.u.valuation().degree();
        let vv = self.v.valuation().degree();
        match (vu, vv) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn eval(&self, x: f64) -> [f64; 2] {
        [self.u.eval_f64(x), self.v.eval_f64(x)]
    }

    /// The same germ in the parameter `t = x / λ`, i.e. `t -> c(λ t)`.
    pub fn rescaled(&self, lambda: &Rational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidCurve("rescaling factor must be nonzero".into()));
        }
        let scale = |s: &Series<Rational>| {
            let mut p = Rational::one();
            let c = s
                .coeffs()
                .iter()
                .map(|c| {
                    let out = c * &p;
                    p *= lambda;
                    out
                })
                .collect();
            Series::from_coeffs(c)
        };
        Self::new(scale(&self.u), scale(&self.v))
    }
}

pub fn build_curve(spec: &CurveSpec, order: usize) -> Result<PlaneCurve> {
    spec.validate()?;
    let (u, v) = spec.components();
    PlaneCurve::from_polynomials(&u, &v, order)
}

/// Which part of the umbrella's tangent cone the image curve leaves along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TangencyCase {
    /// `val u = m`: tangent to the tangent line.
    TangentLine,
    /// `m < val u < 2m`: tangent to the tangent line at higher order.
    TangentLineHigher,
    /// `val u = 2m`: inside the principal plane, off both lines.
    PrincipalPlane,
    /// `val u > 2m`: tangent to the principal intersection line.
    PrincipalLine,
}

impl TangencyCase {
    pub fn number(self) -> u8 {
        match self {
            TangencyCase::TangentLine => 1,
            TangencyCase::TangentLineHigher => 2,
            TangencyCase::PrincipalPlane => 3,
            TangencyCase::PrincipalLine => 4,
        }
    }
}

impl fmt::Display for TangencyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.number())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangencyClassification {
    pub case: TangencyCase,
    /// `l = val u - m`, `None` when `u` vanishes to the reliable order.
    pub excess: Option<usize>,
    /// Exact limiting tangent direction (not normalized).
    pub tangent_direction: [Rational; 3],
    pub limiting_tangent: [f64; 3],
    pub tangent_line: [i64; 3],
    pub principal_intersection_line: [i64; 3],
    pub null_vector: [i64; 2],
    pub principal_plane_normal: [i64; 3],
}

/// Case from the valuation of the first component relative to the multiplicity;
/// the limiting tangent is the normalized value at 0 of the derivative factor.
pub fn classify_tangency(umbrella: &Umbrella, curve: &PlaneCurve) -> Result<TangencyClassification> {
    let m = curve
        .multiplicity()
        .ok_or_else(|| Error::Indeterminate("curve multiplicity".into()))?;
    let (case, excess) = match curve.u.valuation() {
        Valuation::Leading { degree, .. } => {
            let l = degree - m;
            let case = if l == 0 {
                TangencyCase::TangentLine
            } else if l < m {
                TangencyCase::TangentLineHigher
            } else if l == m {
                TangencyCase::PrincipalPlane
            } else {
                TangencyCase::PrincipalLine
            };
            (case, Some(l))
        }
        Valuation::ZeroToOrder(r) => {
            if r < 2 * m as isize {
                return Err(Error::Indeterminate("tangency case of the first component".into()));
            }
            (TangencyCase::PrincipalLine, None)
        }
    };
    let derivative = umbrella.image_curve(curve)?.derivative();
    let (_, e_t) = derivative.factor_out("derivative of the image curve")?;
    let dir = e_t.at_zero()?;
    let limiting_tangent = crate::series::normalize_f64(crate::series::to_f64_3(&dir));
    Ok(TangencyClassification {
        case,
        excess,
        tangent_direction: dir,
        limiting_tangent,
        tangent_line: [1, 0, 0],
        principal_intersection_line: [0, 0, 1],
        null_vector: [0, 1],
        principal_plane_normal: [0, 1, 0],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    fn s1() -> (Umbrella, PlaneCurve) {
        let coeffs = UmbrellaCoefficients::new(
            4,
            BTreeMap::from([((0, 2), int(2)), ((1, 1), int(1))]),
            BTreeMap::new(),
        )
        .unwrap();
        let spec = CurveSpec::Mp { m: 1, p: 2, c: vec![int(1)] };
        let curve = build_curve(&spec, default_order(&coeffs, &spec)).unwrap();
        (build_umbrella(&coeffs), curve)
    }

    fn poly(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn zero_a02_rejected() {
        let err = UmbrellaCoefficients::new(3, BTreeMap::new(), BTreeMap::new()).unwrap_err();
        assert!(err.to_string().contains("a_02 must be nonzero"));
    }

    #[test]
    fn factorials_divided_in() {
        let coeffs = UmbrellaCoefficients::new(
            4,
            BTreeMap::from([((0, 2), int(2)), ((1, 1), int(1))]),
            BTreeMap::from([(3, int(6))]),
        )
        .unwrap();
        let w = build_umbrella(&coeffs);
        let [_, y, z] = w.components();
        assert_eq!(y.get(0, 3).unwrap(), &int(1));
        assert_eq!(y.get(1, 1).unwrap(), &int(1));
        assert_eq!(z.get(0, 2).unwrap(), &int(1));
        assert_eq!(z.get(1, 1).unwrap(), &int(1));
    }

    #[test]
    fn s1_image_and_normal() {
        let (w, c) = s1();
        let g = w.image_curve(&c).unwrap();
        assert_eq!(g.x().coeffs()[..4], poly(&[0, 0, 1, 0])[..]);
        assert_eq!(g.y().coeffs()[..4], poly(&[0, 0, 0, 1])[..]);
        assert_eq!(g.z().coeffs()[..4], poly(&[0, 0, 1, 1])[..]);
        let n = w.normal_field_raw(&c).unwrap();
        assert_eq!(n.x().coeffs()[..3], poly(&[0, 0, 2])[..]);
        assert_eq!(n.y().coeffs()[..3], poly(&[0, -2, -1])[..]);
        assert_eq!(n.z().coeffs()[..3], poly(&[0, 0, 1])[..]);
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn s3_image_curve() {
        let coeffs = UmbrellaCoefficients::standard(8);
        let spec = CurveSpec::Mpq { m: 3, p: 1, q: 1, c: vec![int(1)] };
        let curve = build_curve(&spec, default_order(&coeffs, &spec)).unwrap();
        let g = build_umbrella(&coeffs).image_curve(&curve).unwrap();
        assert_eq!(g.x().valuation(), Valuation::Leading { degree: 4, coeff: int(1) });
        assert_eq!(g.y().valuation(), Valuation::Leading { degree: 7, coeff: int(1) });
        assert_eq!(g.z().valuation(), Valuation::Leading { degree: 6, coeff: int(1) });
    }

    #[test]
    fn family_bounds() {
        let bad = CurveSpec::Mpq { m: 2, p: 1, q: 2, c: vec![int(1)] };
        assert!(bad.validate().unwrap_err().to_string().contains("1 <= q < m"));
        let bad = CurveSpec::Mp { m: 1, p: 2, c: vec![int(0), int(1)] };
        assert!(bad.validate().unwrap_err().to_string().contains("c_0"));
        let line = CurveSpec::General { u: poly(&[0, 2, 4]), v: poly(&[0, 1, 2]) };
        assert!(line.validate().is_err());
    }

    #[test]
    fn s2_curve_components() {
        let spec = CurveSpec::Mp { m: 1, p: 2, c: poly(&[1, -2]) };
        let c = build_curve(&spec, 6).unwrap();
        assert_eq!(c.u.coeffs()[..4], poly(&[0, 0, 1, -2])[..]);
        assert_eq!(c.v.coeffs()[..2], poly(&[0, 1])[..]);
    }

    #[test]
    fn tangency_cases() {
        let w = build_umbrella(&UmbrellaCoefficients::standard(6));
        let curve = |u: &[i64], v: &[i64]| PlaneCurve::from_polynomials(&poly(u), &poly(v), 20).unwrap();

        let t = classify_tangency(&w, &curve(&[0, 1], &[0, 1])).unwrap();
        assert_eq!(t.case, TangencyCase::TangentLine);
        assert_eq!(t.limiting_tangent, [1.0, 0.0, 0.0]);

        let t = classify_tangency(&w, &curve(&[0, 0, 0, 1], &[0, 0, 1])).unwrap();
        assert_eq!(t.case, TangencyCase::TangentLineHigher);

        let t = classify_tangency(&w, &curve(&[0, 0, 1], &[0, 1])).unwrap();
        assert_eq!(t.case, TangencyCase::PrincipalPlane);
        // (2c_0, 0, a_02) / |.| with c_0 = 1, a_02 = 2
        let r = 1.0 / 2f64.sqrt();
        assert!((t.limiting_tangent[0] - r).abs() < 1e-15 && (t.limiting_tangent[2] - r).abs() < 1e-15);

        let t = classify_tangency(&w, &curve(&[0, 0, 0, 0, 0, 1], &[0, 1])).unwrap();
        assert_eq!(t.case, TangencyCase::PrincipalLine);
        assert_eq!(t.limiting_tangent, [0.0, 0.0, 1.0]);
        assert_eq!(t.tangent_direction[2], ratio(2, 1));
    }
}
