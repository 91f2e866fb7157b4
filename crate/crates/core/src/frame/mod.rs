//! Extended tangent and normal fields along the image curve, the Darboux
//! frame, and the curvatures `κ1 = <e', b>`, `κ2 = <e', n>`, `κ3 = <b', n>`.
//!
//! The exact path never takes a square root. With `E` the tangent factor and
//! `N` the normal factor,
//!
//! ```text
//! κ1 = <E', N x E> / (|E|^2 |N|)
//! κ2 = <E', N>     / (|E| |N|)
//! κ3 = <N' x E, N> / (|E| |N|^2)
//! ```
//!
//! so the valuations and leading coefficients of the three numerators are the
//! divergence degrees and the normalized top-terms.

pub mod tables;

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{PlaneCurve, Umbrella};
use crate::series::{dot3, Coeff, Rational, Series, Valuation, Vec3Series};

pub use tables::{closed_form_reference, compare_reports, EntryVerdict, Subcase, Verdict};

/// `(W∘c)' = E_t x^alpha`, `(W_u x W_v)∘c = N x^beta`, `W∘c = E_c x^alpha0`,
/// each factor nonvanishing at 0.
#[derive(Clone, PartialEq)]
pub struct FrameFactors<C> {
    pub alpha: usize,
    pub e_t: Vec3Series<C>,
    pub beta: usize,
    pub n: Vec3Series<C>,
    pub alpha0: usize,
    pub e_c: Vec3Series<C>,
}

impl<C: Coeff> fmt::Debug for FrameFactors<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrameFactors")
            .field("alpha", &self.alpha)
            .field("e_t", &self.e_t)
            .field("beta", &self.beta)
            .field("n", &self.n)
            .field("alpha0", &self.alpha0)
            .field("e_c", &self.e_c)
            .finish()
    }
}

/// `(alpha, E_t)` from the image curve.
pub fn tangent_factor<C: Coeff>(image: &Vec3Series<C>) -> Result<(usize, Vec3Series<C>)> {
    image.derivative().factor_out("derivative of the image curve")
}

/// `(alpha0, E_c)` from the image curve.
pub fn curve_factor<C: Coeff>(image: &Vec3Series<C>) -> Result<(usize, Vec3Series<C>)> {
    image.factor_out("image curve")
}

/// `(beta, N)` from `(W_u x W_v)∘c`.
pub fn normal_factor<C: Coeff>(raw_normal: &Vec3Series<C>) -> Result<(usize, Vec3Series<C>)> {
    raw_normal.factor_out("normal field")
}

impl FrameFactors<Rational> {
    pub fn compute(umbrella: &Umbrella, curve: &PlaneCurve) -> Result<Self> {
        let image = umbrella.image_curve(curve)?;
        let raw = umbrella.normal_field_raw(curve)?;
        Self::from_series(&image, &raw)
    }
}

impl<C: Coeff> FrameFactors<C> {
    pub fn from_series(image: &Vec3Series<C>, raw_normal: &Vec3Series<C>) -> Result<Self> {
        let (alpha, e_t) = tangent_factor(image)?;
        let (beta, n) = normal_factor(raw_normal)?;
        let (alpha0, e_c) = curve_factor(image)?;
        Ok(Self { alpha, e_t, beta, n, alpha0, e_c })
    }

    pub fn to_float(&self) -> FrameFactors<f64> {
        FrameFactors {
            alpha: self.alpha,
            e_t: self.e_t.to_float(),
            beta: self.beta,
            n: self.n.to_float(),
            alpha0: self.alpha0,
            e_c: self.e_c.to_float(),
        }
    }
}

/// Square-root-free curvature numerators `(k̂1, k̂2, k̂3)`.
pub fn curvature_numerators<C: Coeff>(f: &FrameFactors<C>) -> [Series<C>; 3] {
    let de = f.e_t.derivative();
    let dn = f.n.derivative();
    [de.dot(&f.n.cross(&f.e_t)), de.dot(&f.n), dn.cross(&f.e_t).dot(&f.n)]
}

/// `e = E_t/|E_t|`, `n = N/|N|`, `b = n x e`.
#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxFrame {
    pub e: Vec3Series<f64>,
    pub b: Vec3Series<f64>,
    pub n: Vec3Series<f64>,
}

pub fn darboux_frame(f: &FrameFactors<f64>) -> Result<DarbouxFrame> {
    let e = f.e_t.normalized()?;
    let n = f.n.normalized()?;
    let b = n.cross(&e);
    Ok(DarbouxFrame { e, b, n })
}

/// Smallest `λ = 2^-s` with `|c_j| λ^j <= 1` for every coefficient of the
/// unit fields `e` and `n`, so that `c(λ t)` has a frame with bounded
/// coefficients.
pub fn conditioning_scale(frame: &DarbouxFrame) -> Rational {
    let mut growth: f64 = 1.0;
    for v in [&frame.e, &frame.n] {
        for comp in v.components() {
            for (j, c) in comp.coeffs().iter().enumerate().skip(1) {
                growth = growth.max(c.abs().powf(1.0 / j as f64));
            }
        }
    }
    power_of_two_below(growth)
}

fn power_of_two_below(growth: f64) -> Rational {
    let s = growth.log2().ceil().max(0.0) as u32;
    Rational::new(1.into(), num_bigint::BigInt::from(2u8).pow(s))
}

/// `(κ1, κ2, κ3)` from the frame by differentiation.
pub fn curvature_series(frame: &DarbouxFrame) -> [Series<f64>; 3] {
    let de = frame.e.derivative();
    let db = frame.b.derivative();
    [de.dot(&frame.b), de.dot(&frame.n), db.dot(&frame.n)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Oracle,
    ClosedForm,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Oracle => "oracle",
            Source::ClosedForm => "closed_form",
        })
    }
}

/// Degrees `α1..α3` and normalized top-terms `T1..T3`.
///
/// `T1 = κ̃1(0)|E(0)|^2|N(0)|`, `T2 = κ̃2(0)|E(0)||N(0)|`, `T3 = κ̃3(0)|E(0)||N(0)|^2`.
/// A closed-form entry may carry a zero top when the plugged formula vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureReport<C> {
    pub source: Source,
    pub entries: [Valuation<C>; 3],
}

impl<C: Coeff> CurvatureReport<C> {
    pub fn degrees(&self) -> [Option<usize>; 3] {
        [self.entries[0].degree(), self.entries[1].degree(), self.entries[2].degree()]
    }

    pub fn degree(&self, i: usize) -> Option<usize> {
        self.entries[i].degree()
    }

    pub fn top(&self, i: usize) -> Option<&C> {
        match &self.entries[i] {
            Valuation::Leading { coeff, .. } => Some(coeff),
            Valuation::ZeroToOrder(_) => None,
        }
    }

    /// Degrees when all three were found.
    pub fn all_degrees(&self) -> Option<[usize; 3]> {
        Some([self.degree(0)?, self.degree(1)?, self.degree(2)?])
    }

    pub fn all_tops(&self) -> Option<[C; 3]> {
        Some([self.top(0)?.clone(), self.top(1)?.clone(), self.top(2)?.clone()])
    }
}

pub fn divergence_report<C: Coeff>(numerators: &[Series<C>; 3]) -> CurvatureReport<C> {
    CurvatureReport {
        source: Source::Oracle,
        entries: [numerators[0].valuation(), numerators[1].valuation(), numerators[2].valuation()],
    }
}

/// Geodesic curvature, normal curvature and geodesic torsion at a regular point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularCurvatures {
    pub kappa_g: f64,
    pub kappa_nu: f64,
    pub kappa_t: f64,
}

impl RegularCurvatures {
    pub fn as_array(&self) -> [f64; 3] {
        [self.kappa_g, self.kappa_nu, self.kappa_t]
    }
}

/// `sgn(x^t)`: `-1` iff `x < 0` and `t` odd.
pub fn sign_of_power(x: f64, t: usize) -> f64 {
    if x < 0.0 && t % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// `κ_g`, `κ_ν`, `κ_t` from the extended curvatures and the factor exponents.
pub fn regular_curvature_reconstruction(
    kappa: &[Series<f64>; 3],
    factors: &FrameFactors<f64>,
    x: f64,
) -> Result<RegularCurvatures> {
    if x == 0.0 {
        return Err(Error::InvalidCurve("regular curvatures need x != 0".into()));
    }
    let e = factors.e_t.eval_f64(x);
    let speed = norm(e) * x.powi(factors.alpha as i32);
    let (a, b) = (factors.alpha, factors.beta);
    Ok(RegularCurvatures {
        kappa_g: sign_of_power(x, a + b) * kappa[0].eval_f64(x) / speed,
        kappa_nu: sign_of_power(x, b) * kappa[1].eval_f64(x) / speed,
        kappa_t: kappa[2].eval_f64(x) / speed,
    })
}

/// Regular-point curvatures straight from `γ = W∘c` and `(W_u x W_v)∘c`,
/// evaluated pointwise without any factorization:
/// `κ_g = <γ'', b̄>/|γ'|^2`, `κ_ν = <γ'', n̄>/|γ'|^2`, `κ_t = <b̄', n̄>/|γ'|`.
pub fn direct_regular_curvatures(
    image: &Vec3Series<Rational>,
    raw_normal: &Vec3Series<Rational>,
    x: f64,
) -> Result<RegularCurvatures> {
    if x == 0.0 {
        return Err(Error::InvalidCurve("regular curvatures need x != 0".into()));
    }
    let d1 = image.derivative();
    let g1 = d1.eval_f64(x);
    let g2 = d1.derivative().eval_f64(x);
    let nr = raw_normal.eval_f64(x);
    let nr1 = raw_normal.derivative().eval_f64(x);

    let (e, de) = unit_and_derivative(g1, g2);
    let (n, dn) = unit_and_derivative(nr, nr1);
    let b = cross(n, e);
    let db = add(cross(dn, e), cross(n, de));
    let speed = norm(g1);
    Ok(RegularCurvatures {
        kappa_g: dot(g2, b) / (speed * speed),
        kappa_nu: dot(g2, n) / (speed * speed),
        kappa_t: dot(db, n) / speed,
    })
}

/// `v/|v|` and its derivative given `v` and `v'`.
fn unit_and_derivative(v: [f64; 3], dv: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let l = norm(v);
    let vd = dot(v, dv);
    let unit = [v[0] / l, v[1] / l, v[2] / l];
    let l3 = l * l * l;
    let d = [
        (dv[0] * l * l - v[0] * vd) / l3,
        (dv[1] * l * l - v[1] * vd) / l3,
        (dv[2] * l * l - v[2] * vd) / l3,
    ];
    (unit, d)
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Exact `|E_t(0)|^2` and `|N(0)|^2` together with the values at 0.
pub fn frame_at_zero(f: &FrameFactors<Rational>) -> Result<([Rational; 3], [Rational; 3], Rational, Rational)> {
    let e0 = f.e_t.at_zero()?;
    let n0 = f.n.at_zero()?;
    let e2 = dot3(&e0, &e0);
    let n2 = dot3(&n0, &n0);
    Ok((e0, n0, e2, n2))
}
