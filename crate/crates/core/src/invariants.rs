//! Top-term invariants `A`, `B`, `C`, `D` of `(c(x) x^(2m), x^m)` curves and
//! the leading-order geometry they control: the projection along `e(0)`,
//! tangency to the self-intersection curve, and the contour pairing
//! `<n(x), b(0)>`.

use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{darboux_frame, FrameFactors};
use crate::model::{build_umbrella, CurveSpec, PlaneCurve, Umbrella, UmbrellaCoefficients};
use crate::series::{cross3, int, ratio, Coeff, Rational, Series, Vec3Series};

/// `m`, `c_0`, `c_m` of a curve `(c(x) x^(2m), x^m)`, `c = c_0 + c_m x^m + ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct C2mParts {
    pub m: usize,
    pub c0: Rational,
    pub cm: Rational,
}

pub fn c2m_parts(spec: &CurveSpec) -> Result<C2mParts> {
    match spec {
        CurveSpec::Mp { m, p: 2, c } => {
            let at = |i: usize| c.get(i).cloned().unwrap_or_else(|| int(0));
            if let Some(n) = (1..*m).find(|&n| !Coeff::is_zero(&at(n))) {
                return Err(Error::NotC2m(format!("c_{n} != 0 below c_m")));
            }
            let c0 = at(0);
            if Coeff::is_zero(&c0) {
                return Err(Error::NotC2m("c_0 = 0".into()));
            }
            Ok(C2mParts { m: *m, c0, cm: at(*m) })
        }
        _ => Err(Error::NotC2m("needs family mp with p = 2".into())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TopInvariants {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

pub fn top_invariants(coeffs: &UmbrellaCoefficients, spec: &CurveSpec) -> Result<TopInvariants> {
    let C2mParts { c0, cm, .. } = c2m_parts(spec)?;
    let (a02, a11, a03) = (coeffs.a(0, 2), coeffs.a(1, 1), coeffs.a(0, 3));
    let (b3, b4) = (coeffs.b(3), coeffs.b(4));
    Ok(TopInvariants {
        a: int(6) * &a11 * &c0 * &c0 + &a03 * &c0 - int(3) * &a02 * &cm,
        b: int(3) * &c0 + &b3 * ratio(1, 2),
        c: int(2) * &c0 * &c0 + &b3 * &c0 - &a02 * &a02,
        d: (&a11 * &b3 - &a03) * &c0 - int(5) * &a02 * &cm - &b4 * &a02 * ratio(1, 3),
    })
}

impl TopInvariants {
    /// `(m^3 a_02 A, -m^2 a_02 B, -m^2 a_02 C)`.
    pub fn predicted_tops(&self, m: usize, a02: &Rational) -> [Rational; 3] {
        let m = int(m as i64);
        let m2 = &m * &m;
        [&m2 * &m * a02 * &self.a, -&m2 * a02 * &self.b, -&m2 * a02 * &self.c]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjectionVerdict {
    TangentToN,
    TangentToB,
    Generic,
    Degenerate,
}

impl ProjectionVerdict {
    fn from_zero_flags(b_coeff_zero: bool, n_coeff_zero: bool) -> Self {
        match (b_coeff_zero, n_coeff_zero) {
            (true, true) => ProjectionVerdict::Degenerate,
            (true, false) => ProjectionVerdict::TangentToN,
            (false, true) => ProjectionVerdict::TangentToB,
            (false, false) => ProjectionVerdict::Generic,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ProjectionVerdict::TangentToN => "TANGENT_TO_N",
            ProjectionVerdict::TangentToB => "TANGENT_TO_B",
            ProjectionVerdict::Generic => "GENERIC",
            ProjectionVerdict::Degenerate => "DEGENERATE",
        }
    }
}

impl fmt::Display for ProjectionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Projection of the image curve onto the plane orthogonal to `e(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionTangency {
    /// `x^(3m)` coefficient of `<γ, N(0) x E(0)>` (direction of `b(0)`).
    pub b_coefficient: Rational,
    /// `x^(3m)` coefficient of `<γ, N(0)>` (direction of `n(0)`).
    pub n_coefficient: Rational,
    /// Verdict from the two coefficients.
    pub verdict: ProjectionVerdict,
    /// Verdict from `A` and `B` alone.
    pub invariant_verdict: ProjectionVerdict,
}

impl ProjectionTangency {
    pub fn agrees(&self) -> bool {
        self.verdict == self.invariant_verdict
    }
}

pub fn projection_tangency(
    umbrella: &Umbrella,
    spec: &CurveSpec,
    curve: &PlaneCurve,
) -> Result<ProjectionTangency> {
    let parts = c2m_parts(spec)?;
    let inv = top_invariants(umbrella.coefficients(), spec)?;
    let image = umbrella.image_curve(curve)?;
    let target = 3 * parts.m;
    if image.order() < target as isize {
        return Err(Error::BeyondReliableOrder { requested: target, reliable: image.order() });
    }
    let f = FrameFactors::compute(umbrella, curve)?;
    let e0 = f.e_t.at_zero()?;
    let n0 = f.n.at_zero()?;
    let b0 = cross3(&n0, &e0);
    let along_b = pair_with_constant(&image, &b0);
    let along_n = pair_with_constant(&image, &n0);
    for (name, s) in [("b(0)", &along_b), ("n(0)", &along_n)] {
        if let Some(d) = s.coeffs()[..target].iter().position(|c| !Coeff::is_zero(c)) {
            return Err(Error::Indeterminate(format!(
                "projection onto {name} starts at degree {d}, below 3m = {target}"
            )));
        }
    }
    let b_coefficient = along_b.coeff(target)?.clone();
    let n_coefficient = along_n.coeff(target)?.clone();
    Ok(ProjectionTangency {
        verdict: ProjectionVerdict::from_zero_flags(
            Coeff::is_zero(&b_coefficient),
            Coeff::is_zero(&n_coefficient),
        ),
        invariant_verdict: ProjectionVerdict::from_zero_flags(Coeff::is_zero(&inv.a), Coeff::is_zero(&inv.b)),
        b_coefficient,
        n_coefficient,
    })
}

fn pair_with_constant(v: &Vec3Series<Rational>, w: &[Rational; 3]) -> Series<Rational> {
    let [x, y, z] = v.components();
    &(&x.scale(&w[0]) + &y.scale(&w[1])) + &z.scale(&w[2])
}

/// The quadratic-order preimage `d(x) = (d11 x + d12 x^2, d21 x + d22 x^2)`
/// of the umbrella's double-point curve, with `W(d(x)) - W(d(-x)) = O(x^4)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfIntersectionCurve {
    pub d11: Rational,
    pub d21: Rational,
    pub d12: Rational,
    pub d22: Rational,
    pub image: Vec3Series<Rational>,
    /// Leading direction of `(W∘d)'`.
    pub tangent_direction: [Rational; 3],
}

impl SelfIntersectionCurve {
    /// `W∘d(x) - W∘d(-x)`: twice the odd part.
    pub fn odd_part_residual(&self) -> Vec3Series<Rational> {
        let odd = |s: &Series<Rational>| {
            let c = s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { c * int(2) } else { int(0) })
                .collect();
            Series::from_coeffs(c)
        };
        let [x, y, z] = self.image.components();
        Vec3Series::new(odd(x), odd(y), odd(z))
    }

    /// True iff every odd coefficient through `x^3` vanishes.
    pub fn symmetric_through_cubic(&self) -> bool {
        self.odd_part_residual()
            .components()
            .iter()
            .all(|s| s.coeffs().iter().take(4).all(Coeff::is_zero))
    }
}

pub fn self_intersection(coeffs: &UmbrellaCoefficients) -> Result<SelfIntersectionCurve> {
    let (a02, a11, a03, b3) = (coeffs.a(0, 2), coeffs.a(1, 1), coeffs.a(0, 3), coeffs.b(3));
    if Coeff::is_zero(&a02) {
        return Err(Error::InvalidCoefficients("a_02 must be nonzero".into()));
    }
    let d12 = -&b3 * ratio(1, 6);
    let d22 = (&b3 * &a11 - &a03) / (int(6) * &a02);
    let k = coeffs.k();
    let curve = PlaneCurve::from_polynomials(
        &[int(0), int(0), d12.clone()],
        &[int(0), int(1), d22.clone()],
        k,
    )?;
    let umbrella = build_umbrella(coeffs);
    let image = umbrella.image_curve(&curve)?;
    let (_, factor) = image.derivative().factor_out("derivative of the self-intersection image")?;
    Ok(SelfIntersectionCurve {
        d11: int(0),
        d21: int(1),
        d12,
        d22,
        image,
        tangent_direction: factor.at_zero()?,
    })
}

/// Leading-order tangency of the image curve to the self-intersection curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfIntersectionTangency {
    /// Exact test: limiting tangents are parallel.
    pub parallel: bool,
    /// `B == 0`.
    pub b_vanishes: bool,
}

impl SelfIntersectionTangency {
    pub fn agrees(&self) -> bool {
        self.parallel == self.b_vanishes
    }
}

pub fn self_intersection_tangency(
    si: &SelfIntersectionCurve,
    factors: &FrameFactors<Rational>,
    invariants: &TopInvariants,
) -> Result<SelfIntersectionTangency> {
    let e0 = factors.e_t.at_zero()?;
    let c = cross3(&si.tangent_direction, &e0);
    Ok(SelfIntersectionTangency {
        parallel: c.iter().all(Coeff::is_zero),
        b_vanishes: Coeff::is_zero(&invariants.b),
    })
}

/// Leading coefficient of `<n(x), b(0)>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourDeviation {
    /// `x^m` coefficient of `<N(x), N(0) x E(0)>`, exact.
    pub exact_coefficient: Rational,
    /// `x^m` coefficient of `<n(x), b(0)>` from the float frame.
    pub float_coefficient: f64,
    /// `C == 0`.
    pub c_vanishes: bool,
}

impl ContourDeviation {
    pub fn vanishes(&self) -> bool {
        Coeff::is_zero(&self.exact_coefficient)
    }

    pub fn agrees(&self) -> bool {
        self.vanishes() == self.c_vanishes
    }
}

pub fn contour_deviation(umbrella: &Umbrella, spec: &CurveSpec, curve: &PlaneCurve) -> Result<ContourDeviation> {
    let parts = c2m_parts(spec)?;
    let inv = top_invariants(umbrella.coefficients(), spec)?;
    let f = FrameFactors::compute(umbrella, curve)?;
    let e0 = f.e_t.at_zero()?;
    let n0 = f.n.at_zero()?;
    let b_hat = cross3(&n0, &e0);
    let pairing = pair_with_constant(&f.n, &b_hat);
    let m = parts.m;
    if let Some(d) = pairing.coeffs()[..m.min(pairing.coeffs().len())].iter().position(|c| !Coeff::is_zero(c)) {
        return Err(Error::Indeterminate(format!("contour pairing starts at degree {d}, below m = {m}")));
    }
    let exact_coefficient = pairing.coeff(m)?.clone();

    let frame = darboux_frame(&f.to_float())?;
    let b_at_zero = frame.b.at_zero()?;
    let [x, y, z] = frame.n.components();
    let float_pairing = &(&x.scale(&b_at_zero[0]) + &y.scale(&b_at_zero[1])) + &z.scale(&b_at_zero[2]);
    Ok(ContourDeviation {
        exact_coefficient,
        float_coefficient: *float_pairing.coeff(m)?,
        c_vanishes: Coeff::is_zero(&inv.c),
    })
}
