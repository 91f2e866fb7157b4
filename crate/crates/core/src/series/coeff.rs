use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational coefficients.
pub type Rational = BigRational;

/// Absolute tolerance used for float coefficient comparisons.
pub const FLOAT_TOL: f64 = 1e-9;

/// Coefficient field of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Exact,
    Float,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Exact => f.write_str("exact"),
            Field::Float => f.write_str("float"),
        }
    }
}

/// Scalar field operations needed by the series kernel.
///
/// The two implementations are [`Rational`] (exact, no rounding) and `f64`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const FIELD: Field;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;

    /// Exact zero test.
    fn is_zero(&self) -> bool;
    /// Zero test used by valuations: exact for rationals, `|c| <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn recip(&self) -> Option<Self>;

    /// `acc += a * b`
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        *acc = acc.plus(&a.times(b));
    }

    fn to_f64(&self) -> f64;

    /// Image of an exact value in this field.
    fn from_rational(r: &Rational) -> Self;

    /// Equality for rationals; relative closeness `|a - b| <= rel * max(1, |b|)` for floats.
    fn close_to(&self, other: &Self, rel: f64) -> bool;
}

impl Coeff for Rational {
    const FIELD: Field = Field::Exact;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negated(&self) -> Self {
        -self
    }

    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(num_traits::Inv::inv(self))
        }
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn close_to(&self, other: &Self, _rel: f64) -> bool {
        self == other
    }

    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return;
        }
        *acc += a * b;
    }

    fn to_f64(&self) -> f64 {
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            // huge numerator/denominator: scale down before dividing
            _ => {
                let bits = self.numer().bits().max(self.denom().bits()) as i64 - 900;
                let shift = bits.max(0) as usize;
                let n = (self.numer().abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
                let d = (self.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
                let v = n / d;
                if self.is_negative() {
                    -v
                } else {
                    v
                }
            }
        }
    }
}

impl Coeff for f64 {
    const FIELD: Field = Field::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negated(&self) -> Self {
        -self
    }

    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }

    fn from_rational(r: &Rational) -> Self {
        Coeff::to_f64(r)
    }

    fn close_to(&self, other: &Self, rel: f64) -> bool {
        (self - other).abs() <= rel * other.abs().max(1.0)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_int(v)
}

/// Shorthand for `num/den` as a rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
