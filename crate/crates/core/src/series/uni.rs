use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::{Coeff, Rational, FLOAT_TOL};
use crate::error::{Error, Result};

/// Truncated power series in one variable `x`.
///
/// Every stored coefficient is reliable: a series holding `R + 1`
/// coefficients is known modulo `O(x^(R+1))`. An empty series carries no
/// information (reliable order `-1`).
#[derive(Clone, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

/// Result of a valuation query.
#[derive(Clone, Debug, PartialEq)]
pub enum Valuation<C> {
    /// All reliable coefficients vanish. This does not prove the series is zero.
    ZeroToOrder(isize),
    /// Lowest nonvanishing degree and its coefficient.
    Leading { degree: usize, coeff: C },
}

impl<C: Coeff> Valuation<C> {
    pub fn degree(&self) -> Option<usize> {
        match self {
            Valuation::Leading { degree, .. } => Some(*degree),
            Valuation::ZeroToOrder(_) => None,
        }
    }
}

impl<C: Coeff> Series<C> {
    /// Series with the given coefficients `c_0..c_R`, all reliable.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        Self { coeffs }
    }

    /// Zero series reliable to `order`.
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c x^degree`, reliable to `order` (empty tail if `degree > order`).
    pub fn monomial(c: C, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Builds from a sparse polynomial given by its dense coefficient list,
    /// padded with zeros (or truncated) to `order`.
    pub fn from_polynomial(poly: &[C], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (d, c) in poly.iter().enumerate().take(order + 1) {
            s.coeffs[d] = c.clone();
        }
        s
    }

    /// Reliable order `R`; `-1` when nothing is known.
    pub fn order(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `x^degree`; asking beyond the reliable order is an error.
    pub fn coeff(&self, degree: usize) -> Result<&C> {
        self.coeffs.get(degree).ok_or(Error::BeyondReliableOrder {
            requested: degree,
            reliable: self.order(),
        })
    }

    /// Constant term (zero-order coefficient).
    pub fn at_zero(&self) -> Result<&C> {
        self.coeff(0)
    }

    /// Drops everything above `order`. Never raises the reliable order.
    pub fn truncate(&self, order: isize) -> Self {
        let keep = ((order + 1).max(0) as usize).min(self.coeffs.len());
        Self { coeffs: self.coeffs[..keep].to_vec() }
    }

    fn common_len(&self, other: &Self) -> usize {
        self.coeffs.len().min(other.coeffs.len())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_len(other);
        Self {
            coeffs: (0..n).map(|i| self.coeffs[i].plus(&other.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_len(other);
        Self {
            coeffs: (0..n).map(|i| self.coeffs[i].minus(&other.coeffs[i])).collect(),
        }
    }

    /// Truncated product; reliable order is `min(R_a, R_b)`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_len(other);
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                C::mul_acc(&mut out[i + j], a, b);
            }
        }
        Self { coeffs: out }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(Coeff::negated).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, e: usize) -> Self {
        let order = self.order();
        if order < 0 {
            return self.clone();
        }
        let mut acc = Self::constant(C::one(), order as usize);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// d/dx; reliable order drops by one.
    pub fn derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c.times(&C::from_int(d as i64)))
                .collect(),
        }
    }

    /// Multiplication by the exact monomial `x^t`; reliable order rises by `t`.
    pub fn shift(&self, t: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); t];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `1/a` with `a * (1/a) = 1 + O(x^(R+1))`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs.first().ok_or(Error::ZeroConstantTerm)?;
        let inv0 = a0.recip().ok_or(Error::ZeroConstantTerm)?;
        let n = self.coeffs.len();
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                C::mul_acc(&mut acc, &self.coeffs[j], &out[k - j]);
            }
            out.push(acc.times(&inv0).negated());
        }
        Ok(Self { coeffs: out })
    }

    /// Lowest nonvanishing coefficient within the reliable order, with the
    /// default zero test of the field.
    pub fn valuation(&self) -> Valuation<C> {
        self.valuation_with_tol(FLOAT_TOL)
    }

    pub fn valuation_with_tol(&self, tol: f64) -> Valuation<C> {
        match self.coeffs.iter().position(|c| !c.is_negligible(tol)) {
            Some(degree) => Valuation::Leading { degree, coeff: self.coeffs[degree].clone() },
            None => Valuation::ZeroToOrder(self.order()),
        }
    }

    /// `a / x^t`, reliable order `R - t`.
    pub fn factor_power(&self, t: usize) -> Result<Self> {
        if (t as isize) > self.order() + 1 {
            return Err(Error::BeyondReliableOrder { requested: t, reliable: self.order() });
        }
        if let Some(found) = self.coeffs[..t].iter().position(|c| !c.is_negligible(FLOAT_TOL)) {
            return Err(Error::ValuationTooSmall { requested: t, found });
        }
        Ok(Self { coeffs: self.coeffs[t..].to_vec() })
    }

    /// Evaluates the truncated polynomial at a float point (Horner).
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn to_float(&self) -> Series<f64> {
        Series { coeffs: self.coeffs.iter().map(Coeff::to_f64).collect() }
    }

    /// Largest coefficient magnitude (as f64), zero for an empty series.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }
}

impl Series<f64> {
    /// Square root with positive constant term; float field only.
    pub fn sqrt(&self) -> Result<Self> {
        let a0 = *self.coeffs.first().ok_or(Error::NonPositiveConstant(f64::NAN))?;
        if !(a0 > 0.0) {
            return Err(Error::NonPositiveConstant(a0));
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n);
        let b0 = a0.sqrt();
        out.push(b0);
        for k in 1..n {
            let mut acc = self.coeffs[k];
            for j in 1..k {
                acc -= out[j] * out[k - j];
            }
            out.push(acc / (2.0 * b0));
        }
        Ok(Series { coeffs: out })
    }
}

impl Series<Rational> {
    /// Exact-field square roots are not supported; the exact pipeline is
    /// arranged so it never needs one.
    pub fn sqrt(&self) -> Result<Series<f64>> {
        Err(Error::InvalidCoefficients(
            "square roots leave the rationals; convert to the float field first".into(),
        ))
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.coeffs.len())
    }
}

impl<C: Coeff> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        Series::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        Series::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        Series::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff::{int, ratio};

    fn q(v: &[i64]) -> Series<Rational> {
        Series::from_coeffs(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let a = q(&[1, 1, 0, 0]);
        let b = q(&[1, -1, 0, 0]);
        assert_eq!(&a * &b, q(&[1, 0, -1, 0]));
    }

    #[test]
    fn monomial_derivative_drops_order() {
        let a = q(&[0, 0, 0, 1, 0]);
        let d = a.derivative();
        assert_eq!(d, q(&[0, 0, 3, 0]));
        assert_eq!(d.order(), a.order() - 1);
    }

    #[test]
    fn product_reliable_order_is_min() {
        // (2 + 3x + O(x^2)) (2 + O(x^3)) = 4 + 6x + O(x^2)
        let a = q(&[2, 3]);
        let b = q(&[2, 0, 0, 0]);
        let p = &a * &b;
        assert_eq!(p, q(&[4, 6]));
        assert_eq!(p.order(), 1);
    }

    #[test]
    fn reciprocal_examples() {
        let r = q(&[1, -1, 0, 0, 0]).reciprocal().unwrap();
        assert_eq!(r, q(&[1, 1, 1, 1, 1]));
        let half = q(&[2]).reciprocal().unwrap();
        assert_eq!(half.coeffs()[0], ratio(1, 2));
        let r = q(&[4, 12, 0]).reciprocal().unwrap();
        assert_eq!(r.coeffs(), &[ratio(1, 4), ratio(-3, 4), ratio(9, 4)]);
        assert_eq!(q(&[0, 1]).reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn sqrt_examples() {
        let s = Series::from_coeffs(vec![4.0, 0.0, 0.0]).sqrt().unwrap();
        assert_eq!(s.coeffs(), &[2.0, 0.0, 0.0]);
        let s = Series::from_coeffs(vec![1.0, 2.0, 0.0]).sqrt().unwrap();
        assert!((s.coeffs()[1] - 1.0).abs() < 1e-15);
        assert!((s.coeffs()[2] + 0.5).abs() < 1e-15);
        assert!(Series::from_coeffs(vec![0.0, 1.0]).sqrt().is_err());
        assert!(Series::from_coeffs(vec![-1.0, 1.0]).sqrt().is_err());
        assert!(q(&[4]).sqrt().is_err());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            q(&[0, 0, 3, 0, 5]).valuation(),
            Valuation::Leading { degree: 2, coeff: int(3) }
        );
        assert_eq!(Series::<Rational>::zero(6).valuation(), Valuation::ZeroToOrder(6));
    }

    #[test]
    fn factor_power_examples() {
        assert_eq!(q(&[0, 0, 0, 1, 1]).factor_power(3).unwrap(), q(&[1, 1]));
        assert_eq!(
            q(&[0, 0, 1, 0]).factor_power(3),
            Err(Error::ValuationTooSmall { requested: 3, found: 2 })
        );
        assert!(q(&[0, 0]).factor_power(4).is_err());
    }

    #[test]
    fn coeff_beyond_reliable_order_is_error() {
        let a = q(&[1, 2]);
        assert!(a.coeff(1).is_ok());
        assert_eq!(a.coeff(2), Err(Error::BeyondReliableOrder { requested: 2, reliable: 1 }));
    }

    #[test]
    fn shift_raises_order() {
        let a = q(&[1, 2]).shift(2);
        assert_eq!(a, q(&[0, 0, 1, 2]));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = q(&[0, 1, 2, -1, 0, 0]);
        let mut rep = q(&[1, 0, 0, 0, 0, 0]);
        for _ in 0..3 {
            rep = &rep * &a;
        }
        assert_eq!(a.pow(3), rep);
    }
}
