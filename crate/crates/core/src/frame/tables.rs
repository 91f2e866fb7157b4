//! Closed-form degrees and top-terms for the two polynomial curve families,
//! transcribed as printed, and the row verdicts that compare them with the
//! series oracle.

use std::fmt;

use super::{CurvatureReport, Source};
use crate::error::{Error, Result};
use crate::model::{CurveSpec, UmbrellaCoefficients};
use crate::series::{int, ratio, Coeff, Rational, Valuation};

/// Case split of the closed-form tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subcase {
    MpqP1,
    MpqP2To3,
    MpqP4Plus,
    MpP2NBelowM,
    MpP2NEqualM,
    MpP2NAboveM,
    MpP3,
    MpP4,
    MpP5Plus,
}

impl Subcase {
    pub const ALL: [Subcase; 9] = [
        Subcase::MpqP1,
        Subcase::MpqP2To3,
        Subcase::MpqP4Plus,
        Subcase::MpP2NBelowM,
        Subcase::MpP2NEqualM,
        Subcase::MpP2NAboveM,
        Subcase::MpP3,
        Subcase::MpP4,
        Subcase::MpP5Plus,
    ];

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&s| s == self).expect("listed")
    }

    pub fn name(self) -> &'static str {
        match self {
            Subcase::MpqP1 => "mpq/p=1",
            Subcase::MpqP2To3 => "mpq/p=2,3",
            Subcase::MpqP4Plus => "mpq/p>=4",
            Subcase::MpP2NBelowM => "mp/p=2,n<m",
            Subcase::MpP2NEqualM => "mp/p=2,n=m",
            Subcase::MpP2NAboveM => "mp/p=2,n>m",
            Subcase::MpP3 => "mp/p=3",
            Subcase::MpP4 => "mp/p=4",
            Subcase::MpP5Plus => "mp/p>=5",
        }
    }

    /// Subcase of a family spec. For `mp` with `p = 2`, `n` is the first
    /// index `>= 1` with `c_n != 0`; a constant `c` falls in the `n > m` branch.
    pub fn of(spec: &CurveSpec) -> Result<Self> {
        match spec {
            CurveSpec::Mpq { p, .. } => Ok(match p {
                1 => Subcase::MpqP1,
                2 | 3 => Subcase::MpqP2To3,
                _ => Subcase::MpqP4Plus,
            }),
            CurveSpec::Mp { m, p, c } => Ok(match p {
                2 => match first_higher_index(c) {
                    Some(n) if n < *m => Subcase::MpP2NBelowM,
                    Some(n) if n == *m => Subcase::MpP2NEqualM,
                    _ => Subcase::MpP2NAboveM,
                },
                3 => Subcase::MpP3,
                4 => Subcase::MpP4,
                _ => Subcase::MpP5Plus,
            }),
            CurveSpec::General { .. } => Err(Error::GeneralCurve),
        }
    }

    /// The one entry whose printed constant is only advisory: `κ̃1` for `mpq`, `p >= 4`.
    pub fn advisory_entry(self) -> Option<usize> {
        (self == Subcase::MpqP4Plus).then_some(0)
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn first_higher_index(c: &[Rational]) -> Option<usize> {
    c.iter().enumerate().skip(1).find(|(_, v)| !Coeff::is_zero(*v)).map(|(i, _)| i)
}

fn coeff_at(c: &[Rational], i: usize) -> Rational {
    c.get(i).cloned().unwrap_or_else(|| int(0))
}

fn leading(degree: i64, coeff: Rational) -> Result<Valuation<Rational>> {
    if degree < 0 {
        return Err(Error::Indeterminate(format!("table degree {degree} is negative")));
    }
    Ok(Valuation::Leading { degree: degree as usize, coeff })
}

/// Predicted degrees and normalized tops, plugged into the printed formulas.
pub fn closed_form_reference(
    spec: &CurveSpec,
    coeffs: &UmbrellaCoefficients,
) -> Result<(Subcase, CurvatureReport<Rational>)> {
    let subcase = Subcase::of(spec)?;
    let a02 = coeffs.a(0, 2);
    let a11 = coeffs.a(1, 1);
    let a03 = coeffs.a(0, 3);
    let b3 = coeffs.b(3);
    let half = ratio(1, 2);
    let sq = |r: &Rational| r * r;

    let entries = match spec {
        CurveSpec::Mpq { m, p, q, c } => {
            let (m, p, q) = (*m as i64, *p as i64, *q as i64);
            let c0 = coeff_at(c, 0);
            let mr = int(m);
            let e1 = match p {
                1 => leading(m - q - 1, int(m * (m * m - q * q)) * sq(&a02) * &c0)?,
                2 | 3 => leading(
                    m * (p - 2) + q - 1,
                    -int(m * (m * (p - 2) + q) * (m * p + q)) * sq(&a02) * &c0,
                )?,
                _ => leading(2 * m - 1, -sq(&mr) * sq(&a02) * &b3)?,
            };
            let e2 = if p == 1 {
                leading(m - 1, -int(m * (m + 2 * q)) * &a02 * &c0)?
            } else {
                leading(m - 1, -sq(&mr) * &a02 * &b3 * &half)?
            };
            let e3 = if p == 1 {
                leading(q - 1, -int(q * (m * p + q)) * &a02 * &c0)?
            } else {
                leading(m - 1, sq(&mr) * &a02 * &a02 * &a02)?
            };
            [e1, e2, e3]
        }
        CurveSpec::Mp { m, p, c } => {
            let (mu, pu) = (*m, *p);
            let (m, p) = (mu as i64, pu as i64);
            let c0 = coeff_at(c, 0);
            let mr = int(m);
            let m3 = &mr * &mr * &mr;
            let e1 = match subcase {
                Subcase::MpP2NBelowM => {
                    let n = first_higher_index(c).expect("subcase has n") as i64;
                    let cn = coeff_at(c, n as usize);
                    leading(n - 1, -int(m * n * (2 * m + n)) * sq(&a02) * cn)?
                }
                Subcase::MpP2NEqualM => {
                    let cm = coeff_at(c, mu);
                    let a = int(6) * &a11 * sq(&c0) + &a03 * &c0 - int(3) * &a02 * cm;
                    leading(m - 1, &m3 * &a02 * a)?
                }
                Subcase::MpP2NAboveM => {
                    leading(m - 1, &m3 * &a02 * &c0 * (int(6) * &a11 * &c0 + &a03))?
                }
                Subcase::MpP3 => leading(m - 1, -int(3) * &m3 * sq(&a02) * &c0)?,
                Subcase::MpP4 => leading(2 * m - 1, -&m3 * sq(&a02) * (int(8) * &c0 + &b3 * &half))?,
                _ => leading(2 * m - 1, &m3 * sq(&a02) * &b3 * &half)?,
            };
            let e2 = if p == 2 {
                leading(m - 1, -sq(&mr) * &a02 * (int(3) * &c0 + &b3 * &half))?
            } else {
                leading(m - 1, -sq(&mr) * int(p - 1) * &a02 * &b3 * &half)?
            };
            let e3 = if p == 2 {
                leading(m - 1, -sq(&mr) * &a02 * (int(2) * sq(&c0) + &b3 * &c0 - sq(&a02)))?
            } else {
                leading(m - 1, sq(&mr) * &a02 * &a02 * &a02)?
            };
            [e1, e2, e3]
        }
        CurveSpec::General { .. } => unreachable!("rejected by Subcase::of"),
    };
    Ok((subcase, CurvatureReport { source: Source::ClosedForm, entries }))
}

/// Outcome of comparing one curvature entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// Degree agrees, constant differs on the one entry flagged as advisory.
    Advisory,
    /// The closed form is degenerate for this draw, or the oracle cannot
    /// decide within its reliable order.
    NonGeneric,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Advisory => "ADVISORY",
            Verdict::NonGeneric => "NON-GENERIC",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntryVerdict<C> {
    pub verdict: Verdict,
    pub oracle: Valuation<C>,
    pub closed_form: Valuation<Rational>,
    pub degree_match: bool,
    pub top_match: bool,
}

/// Entry-by-entry comparison. Float oracles compare tops with relative
/// tolerance `rel`; exact oracles compare exactly.
pub fn compare_reports<C: Coeff>(
    oracle: &CurvatureReport<C>,
    closed: &CurvatureReport<Rational>,
    subcase: Subcase,
    rel: f64,
) -> [EntryVerdict<C>; 3] {
    std::array::from_fn(|i| {
        let o = oracle.entries[i].clone();
        let cf = closed.entries[i].clone();
        let (t_deg, t_top) = match &cf {
            Valuation::Leading { degree, coeff } => (*degree, coeff.clone()),
            Valuation::ZeroToOrder(_) => unreachable!("closed forms always carry a degree"),
        };
        let (degree_match, top_match, verdict) = if Coeff::is_zero(&t_top) {
            let beyond = match &o {
                Valuation::Leading { degree, .. } => *degree > t_deg,
                Valuation::ZeroToOrder(_) => true,
            };
            (false, false, if beyond { Verdict::NonGeneric } else { Verdict::Fail })
        } else {
            match &o {
                Valuation::ZeroToOrder(r) => {
                    let v = if *r >= t_deg as isize { Verdict::Fail } else { Verdict::NonGeneric };
                    (false, false, v)
                }
                Valuation::Leading { degree, coeff } => {
                    let dm = *degree == t_deg;
                    let tm = dm && coeff.close_to(&C::from_rational(&t_top), rel);
                    let v = if !dm {
                        Verdict::Fail
                    } else if tm {
                        Verdict::Pass
                    } else if subcase.advisory_entry() == Some(i) {
                        Verdict::Advisory
                    } else {
                        Verdict::Fail
                    };
                    (dm, tm, v)
                }
            }
        };
        EntryVerdict { verdict, oracle: o, closed_form: cf, degree_match, top_match }
    })
}
