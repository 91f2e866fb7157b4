//! Ruled surfaces and the osculating developable along the image curve.
//!
//! With reduced curvatures `κ_i = κ̃_i x^(α_i)` and the branch quantities
//!
//! ```text
//! α2 > α3:  P = κ̃3,             Q = κ̃2 x^(α2-α3)
//! α3 >= α2: P = κ̃3 x^(α3-α2),   Q = κ̃2
//! ρ = sqrt(P^2 + Q^2)
//! ```
//!
//! the director is `D_o = (P e - Q b)/ρ`, the cylindricity invariant is
//! `δ = κ̃1 x^(α1) ρ^2 + Q P' - Q' P` with `D_o' = δ/ρ^3 (Q e + P b)`, the
//! striction curve is `s_w = γ - S D_o` with `S = <γ', D_o'>/|D_o'|^2`, and
//! the conicity invariant is `σ = <s_w', D_o>`.

use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{curvature_numerators, darboux_frame, divergence_report, frame_at_zero, DarbouxFrame, FrameFactors};
use crate::invariants::{c2m_parts, C2mParts};
use crate::model::{CurveSpec, PlaneCurve, Umbrella, UmbrellaCoefficients};
use crate::series::{int, ratio, Rational, Series, Vec3Series, FLOAT_TOL};

/// `F(x, y) = γ(x) + y ξ(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RuledSurface {
    pub gamma: Vec3Series<f64>,
    pub xi: Vec3Series<f64>,
}

impl RuledSurface {
    pub fn new(gamma: Vec3Series<f64>, xi: Vec3Series<f64>) -> Result<Self> {
        let x0 = xi.at_zero()?;
        if x0.iter().all(|c| *c == 0.0) {
            return Err(Error::InvalidCurve("director must not vanish at 0".into()));
        }
        Ok(Self { gamma, xi })
    }

    pub fn eval(&self, x: f64, y: f64) -> [f64; 3] {
        let g = self.gamma.eval_f64(x);
        let d = self.xi.eval_f64(x);
        [g[0] + y * d[0], g[1] + y * d[1], g[2] + y * d[2]]
    }
}

/// `det(γ', ξ, ξ')`; vanishes identically iff the surface is developable.
pub fn developability_residual(ruled: &RuledSurface) -> Series<f64> {
    let dxi = ruled.xi.derivative();
    ruled.gamma.derivative().dot(&ruled.xi.cross(&dxi))
}

/// An order claim on a float series: exact, or only a lower bound when the
/// candidate top-term is numerically indistinguishable from zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Exact(usize),
    /// The order exceeds this degree.
    Above(isize),
}

impl Order {
    pub fn exact(self) -> Option<usize> {
        match self {
            Order::Exact(k) => Some(k),
            Order::Above(_) => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact(k) => write!(f, "{k}"),
            Order::Above(j) => write!(f, "> {j}"),
        }
    }
}

/// Structural zeros (exactly `0.0`) are skipped; the first coefficient above
/// `tol` fixes the order; a nonzero coefficient at or below `tol` met first
/// only bounds it.
pub fn float_order(s: &Series<f64>, tol: f64) -> Order {
    for (j, &c) in s.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        if c.abs() <= tol {
            return Order::Above(j as isize);
        }
        return Order::Exact(j);
    }
    Order::Above(s.order())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Alpha2GtAlpha3,
    Alpha3GeAlpha2,
}

impl Branch {
    pub fn of(alpha2: usize, alpha3: usize) -> Self {
        if alpha2 > alpha3 {
            Branch::Alpha2GtAlpha3
        } else {
            Branch::Alpha3GeAlpha2
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Alpha2GtAlpha3 => "ALPHA2_GT_ALPHA3",
            Branch::Alpha3GeAlpha2 => "ALPHA3_GE_ALPHA2",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `κ̃_i = κ_i / x^(α_i)` as float series, from the exact numerators:
/// `κ̃1 = (k̂1/x^α1)/(|E|^2|N|)`, `κ̃2 = (k̂2/x^α2)/(|E||N|)`, `κ̃3 = (k̂3/x^α3)/(|E||N|^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedCurvatures {
    pub alphas: [usize; 3],
    pub kappa: [Series<f64>; 3],
    /// `|E_t|` as a float series.
    pub speed_factor: Series<f64>,
}

pub fn reduced_curvatures(factors: &FrameFactors<Rational>) -> Result<ReducedCurvatures> {
    let numerators = curvature_numerators(factors);
    let report = divergence_report(&numerators);
    let mut alphas = [0; 3];
    for (i, a) in alphas.iter_mut().enumerate() {
        *a = report.degree(i).ok_or_else(|| Error::ZeroToOrder {
            what: format!("curvature numerator {}", i + 1),
            order: numerators[i].order(),
        })?;
    }
    let e = factors.e_t.to_float().norm_sq().sqrt()?;
    let n = factors.n.to_float().norm_sq().sqrt()?;
    let ie = e.reciprocal()?;
    let inn = n.reciprocal()?;
    let den = [&(&ie * &ie) * &inn, &ie * &inn, &(&inn * &inn) * &ie];
    let mut kappa = Vec::with_capacity(3);
    for i in 0..3 {
        kappa.push(&numerators[i].factor_power(alphas[i])?.to_float() * &den[i]);
    }
    let kappa: [Series<f64>; 3] = kappa.try_into().expect("three entries");
    Ok(ReducedCurvatures { alphas, kappa, speed_factor: e })
}

/// Branch data `(P, Q, ρ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchData {
    pub branch: Branch,
    /// `|α2 - α3|`.
    pub gap: usize,
    pub p: Series<f64>,
    pub q: Series<f64>,
    pub rho: Series<f64>,
}

pub fn branch_data(reduced: &ReducedCurvatures) -> Result<BranchData> {
    let [_, a2, a3] = reduced.alphas;
    let branch = Branch::of(a2, a3);
    let [_, k2, k3] = &reduced.kappa;
    let (gap, p, q) = match branch {
        Branch::Alpha2GtAlpha3 => (a2 - a3, k3.clone(), k2.shift(a2 - a3)),
        Branch::Alpha3GeAlpha2 => (a3 - a2, k3.shift(a3 - a2), k2.clone()),
    };
    let rho = (&p.square() + &q.square()).sqrt()?;
    Ok(BranchData { branch, gap, p, q, rho })
}

/// `D_o = (P e - Q b)/ρ`.
pub fn osculating_director(bd: &BranchData, frame: &DarbouxFrame) -> Result<Vec3Series<f64>> {
    let ir = bd.rho.reciprocal()?;
    Ok(frame.e.scale_series(&bd.p).sub(&frame.b.scale_series(&bd.q)).scale_series(&ir))
}

/// `δ = κ̃1 x^(α1) ρ^2 + Q P' - Q' P`.
pub fn delta_invariant(reduced: &ReducedCurvatures, bd: &BranchData) -> Series<f64> {
    let k1 = reduced.kappa[0].shift(reduced.alphas[0]);
    let rho2 = &bd.p.square() + &bd.q.square();
    &(&(&k1 * &rho2) + &(&bd.q * &bd.p.derivative())) - &(&bd.q.derivative() * &bd.p)
}

/// `δ/ρ^3 (Q e + P b)`.
pub fn director_derivative_closed(bd: &BranchData, delta: &Series<f64>, frame: &DarbouxFrame) -> Result<Vec3Series<f64>> {
    let ir = bd.rho.reciprocal()?;
    let w = frame.e.scale_series(&bd.q).add(&frame.b.scale_series(&bd.p));
    Ok(w.scale_series(&(delta * &ir.pow(3))))
}

/// Case split by `α1` against `|α2 - α3| - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EfCase {
    I,
    II,
    III,
}

impl EfCase {
    pub fn of(alpha1: usize, gap: usize) -> Self {
        let (a1, t) = (alpha1 as i64, gap as i64 - 1);
        match a1.cmp(&t) {
            std::cmp::Ordering::Less => EfCase::I,
            std::cmp::Ordering::Equal => EfCase::II,
            std::cmp::Ordering::Greater => EfCase::III,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EfCase::I => "i",
            EfCase::II => "ii",
            EfCase::III => "iii",
        }
    }
}

impl fmt::Display for EfCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

/// `E = κ̃1κ̃3 - (α2-α3)κ̃2` and `F = κ̃1κ̃3 - (α0+α2-α3)κ̃2` at 0.
///
/// The exact values are scaled by `|E(0)||N(0)|`, which turns them into
/// rationals: `T1 T3 /(|E(0)|^2 |N(0)|^2) - (α2-α3) T2`.
#[derive(Clone, Debug, PartialEq)]
pub struct EfClassification {
    pub branch: Branch,
    pub case: EfCase,
    pub e_exact: Option<Rational>,
    pub f_exact: Option<Rational>,
    pub e_float: Option<f64>,
    pub f_float: Option<f64>,
}

pub fn classify_ef(
    factors: &FrameFactors<Rational>,
    reduced: &ReducedCurvatures,
) -> Result<EfClassification> {
    let [a1, a2, a3] = reduced.alphas;
    let branch = Branch::of(a2, a3);
    let gap = a2.abs_diff(a3);
    let case = EfCase::of(a1, gap);
    let mut out = EfClassification { branch, case, e_exact: None, f_exact: None, e_float: None, f_float: None };
    if branch != Branch::Alpha2GtAlpha3 || case != EfCase::II {
        return Ok(out);
    }
    let report = divergence_report(&curvature_numerators(factors));
    let tops = report
        .all_tops()
        .ok_or_else(|| Error::Indeterminate("curvature top-terms".into()))?;
    let (_, _, e2, n2) = frame_at_zero(factors)?;
    let prod = &tops[0] * &tops[2] / (e2 * n2);
    let d = int(gap as i64);
    let d0 = int((factors.alpha0 + gap) as i64);
    out.e_exact = Some(&prod - &d * &tops[1]);
    out.f_exact = Some(&prod - &d0 * &tops[1]);

    let at0 = |i: usize| reduced.kappa[i].coeffs()[0];
    let pf = at0(0) * at0(2);
    out.e_float = Some(pf - gap as f64 * at0(1));
    out.f_float = Some(pf - (factors.alpha0 + gap) as f64 * at0(1));
    Ok(out)
}

/// The bracket values printed for `(c(x) x^(2m), x^m)` curves with `B = 0`:
/// `6 a11 c0^2 + a03 c0 + a02 cm + b4 a02/6` and
/// `24 a11 c0^2 + 4 a03 c0 + 12 a02 cm + b4 a02`, where the scaled `E`, `F`
/// are claimed to be `2 m^3` and `3 m^3` times these.
pub fn printed_ef_brackets(coeffs: &UmbrellaCoefficients, spec: &CurveSpec) -> Result<(Rational, Rational)> {
    let C2mParts { c0, cm, .. } = c2m_parts(spec)?;
    let (a02, a11, a03, b4) = (coeffs.a(0, 2), coeffs.a(1, 1), coeffs.a(0, 3), coeffs.b(4));
    let e = int(6) * &a11 * &c0 * &c0 + &a03 * &c0 + &a02 * &cm + &b4 * &a02 * ratio(1, 6);
    let f = int(24) * &a11 * &c0 * &c0 + int(4) * &a03 * &c0 + int(12) * &a02 * &cm + &b4 * &a02;
    Ok((e, f))
}

/// Striction curve data of the osculating developable.
#[derive(Clone, Debug, PartialEq)]
pub struct Striction {
    /// Power of `x` in `S`: `α0 + (α2-α3) - 1 - k` or `α0 - 1 - k`.
    pub exponent: i64,
    pub exists: bool,
    pub passes_through_umbrella: bool,
    pub s: Option<Series<f64>>,
    pub s_w: Option<Vec3Series<f64>>,
    pub sigma: Option<Series<f64>>,
    pub k_con: Option<Order>,
}

/// Largest coefficient magnitude of each identity that must vanish.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Residuals {
    /// `det(γ', D_o, D_o')`.
    pub developability: f64,
    /// `D_o'` by differentiation against its closed form.
    pub director_derivative: f64,
    /// `|D_o|^2 - 1`.
    pub director_unit: f64,
    /// `<D_o, n>`.
    pub director_normal: f64,
    /// `δ` against `ρ <D_o', Q e + P b>`.
    pub delta_branch: f64,
    /// `<s_w', D_o'>`.
    pub striction_orthogonality: Option<f64>,
    /// `s_w' x D_o`.
    pub striction_collinearity: Option<f64>,
    /// `s_w' - σ D_o`.
    pub sigma_identity: Option<f64>,
    /// `σ` against `<s_w', D_o>`.
    pub sigma_branch: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DevelopableData {
    pub alpha: usize,
    pub alpha0: usize,
    pub reduced: ReducedCurvatures,
    pub branch: BranchData,
    pub director: Vec3Series<f64>,
    pub director_derivative: Vec3Series<f64>,
    pub delta: Series<f64>,
    pub k_cyl: Order,
    pub striction: Option<Striction>,
    pub classification: EfClassification,
    pub residuals: Residuals,
}

impl DevelopableData {
    pub fn compute(umbrella: &Umbrella, curve: &PlaneCurve) -> Result<Self> {
        let factors = FrameFactors::compute(umbrella, curve)?;
        let gamma = umbrella.image_curve(curve)?.to_float();
        Self::from_factors(&factors, &gamma)
    }

    pub fn from_factors(factors: &FrameFactors<Rational>, gamma: &Vec3Series<f64>) -> Result<Self> {
        let ff = factors.to_float();
        let frame = darboux_frame(&ff)?;
        let reduced = reduced_curvatures(factors)?;
        let bd = branch_data(&reduced)?;
        let director = osculating_director(&bd, &frame)?;
        let d_director = director.derivative();
        let delta = delta_invariant(&reduced, &bd);
        let d_closed = director_derivative_closed(&bd, &delta, &frame)?;
        let k_cyl = float_order(&delta, FLOAT_TOL);
        let classification = classify_ef(factors, &reduced)?;

        let ruled = RuledSurface::new(gamma.clone(), director.clone())?;
        let qe_pb = frame.e.scale_series(&bd.q).add(&frame.b.scale_series(&bd.p));
        let mut residuals = Residuals {
            developability: developability_residual(&ruled).max_abs(),
            director_derivative: d_director.sub(&d_closed).max_abs(),
            director_unit: (&director.norm_sq() - &Series::constant(1.0, 0)).max_abs(),
            director_normal: director.dot(&frame.n).max_abs(),
            delta_branch: (&(&bd.rho * &d_director.dot(&qe_pb)) - &delta).max_abs(),
            ..Residuals::default()
        };

        let striction = match k_cyl {
            Order::Exact(k) => {
                let gap = match bd.branch {
                    Branch::Alpha2GtAlpha3 => bd.gap as i64,
                    Branch::Alpha3GeAlpha2 => 0,
                };
                let exponent = factors.alpha as i64 + gap - k as i64;
                let mut st = Striction {
                    exponent,
                    exists: exponent >= 0,
                    passes_through_umbrella: exponent > 0,
                    s: None,
                    s_w: None,
                    sigma: None,
                    k_con: None,
                };
                if st.exists {
                    let delta_tilde = delta.factor_power(k)?;
                    let s = (&(&reduced.speed_factor * &reduced.kappa[1]) * &bd.rho)
                        .mul(&delta_tilde.reciprocal()?)
                        .shift(exponent as usize);
                    let s_w = gamma.sub(&director.scale_series(&s));
                    let tangential = &(&reduced.speed_factor * &bd.p) * &bd.rho.reciprocal()?;
                    let sigma = &tangential.shift(factors.alpha) - &s.derivative();
                    let ds = s_w.derivative();
                    residuals.striction_orthogonality = Some(ds.dot(&d_director).max_abs());
                    residuals.striction_collinearity = Some(ds.cross(&director).max_abs());
                    residuals.sigma_identity = Some(ds.sub(&director.scale_series(&sigma)).max_abs());
                    residuals.sigma_branch = Some((&ds.dot(&director) - &sigma).max_abs());
                    st.k_con = Some(float_order(&sigma, FLOAT_TOL));
                    st.s = Some(s);
                    st.s_w = Some(s_w);
                    st.sigma = Some(sigma);
                }
                Some(st)
            }
            Order::Above(_) => None,
        };

        Ok(Self {
            alpha: factors.alpha,
            alpha0: factors.alpha0,
            reduced,
            branch: bd,
            director,
            director_derivative: d_director,
            delta,
            k_cyl,
            striction,
            classification,
            residuals,
        })
    }

    /// `σ̃(0)` when the conical order is exact.
    pub fn sigma_top(&self) -> Option<f64> {
        let st = self.striction.as_ref()?;
        let k = st.k_con?.exact()?;
        st.sigma.as_ref().map(|s| s.coeffs()[k])
    }
}
