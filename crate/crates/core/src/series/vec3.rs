use super::coeff::{Coeff, Rational};
use super::uni::{Series, Valuation};
use crate::error::{Error, Result};

/// A vector-valued series `x -> (x(t), y(t), z(t))` with one shared reliable order.
#[derive(Clone, PartialEq)]
pub struct Vec3Series<C> {
    comps: [Series<C>; 3],
}

impl<C: Coeff> std::fmt::Debug for Vec3Series<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Vec3Series").field(&self.comps[0]).field(&self.comps[1]).field(&self.comps[2]).finish()
    }
}

impl<C: Coeff> Vec3Series<C> {
    /// Truncates all components to the smallest reliable order among them.
    pub fn new(x: Series<C>, y: Series<C>, z: Series<C>) -> Self {
        let order = x.order().min(y.order()).min(z.order());
        Self { comps: [x.truncate(order), y.truncate(order), z.truncate(order)] }
    }

    pub fn from_array(comps: [Series<C>; 3]) -> Self {
        let [x, y, z] = comps;
        Self::new(x, y, z)
    }

    /// Constant vector reliable to `order`.
    pub fn constant(v: [C; 3], order: usize) -> Self {
        let [x, y, z] = v;
        Self::new(Series::constant(x, order), Series::constant(y, order), Series::constant(z, order))
    }

    pub fn x(&self) -> &Series<C> {
        &self.comps[0]
    }

    pub fn y(&self) -> &Series<C> {
        &self.comps[1]
    }

    pub fn z(&self) -> &Series<C> {
        &self.comps[2]
    }

    pub fn components(&self) -> &[Series<C>; 3] {
        &self.comps
    }

    pub fn order(&self) -> isize {
        self.comps[0].order()
    }

    pub fn truncate(&self, order: isize) -> Self {
        self.map(|s| s.truncate(order))
    }

    fn map(&self, f: impl Fn(&Series<C>) -> Series<C>) -> Self {
        Self::new(f(&self.comps[0]), f(&self.comps[1]), f(&self.comps[2]))
    }

    fn zip(&self, other: &Self, f: impl Fn(&Series<C>, &Series<C>) -> Series<C>) -> Self {
        Self::new(
            f(&self.comps[0], &other.comps[0]),
            f(&self.comps[1], &other.comps[1]),
            f(&self.comps[2], &other.comps[2]),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, Series::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, Series::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(Series::neg)
    }

    pub fn dot(&self, other: &Self) -> Series<C> {
        let [a0, a1, a2] = &self.comps;
        let [b0, b1, b2] = &other.comps;
        &(&(a0 * b0) + &(a1 * b1)) + &(a2 * b2)
    }

    pub fn cross(&self, other: &Self) -> Self {
        let [a0, a1, a2] = &self.comps;
        let [b0, b1, b2] = &other.comps;
        Self::new(&(a1 * b2) - &(a2 * b1), &(a2 * b0) - &(a0 * b2), &(a0 * b1) - &(a1 * b0))
    }

    pub fn norm_sq(&self) -> Series<C> {
        self.dot(self)
    }

    pub fn derivative(&self) -> Self {
        self.map(Series::derivative)
    }

    /// Componentwise product with a scalar series.
    pub fn scale_series(&self, s: &Series<C>) -> Self {
        self.map(|c| c * s)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|s| s.scale(c))
    }

    pub fn shift(&self, t: usize) -> Self {
        self.map(|s| s.shift(t))
    }

    /// Minimum component valuation, `None` when every component vanishes to
    /// the reliable order.
    pub fn valuation(&self) -> Option<usize> {
        self.valuation_with_tol(super::coeff::FLOAT_TOL)
    }

    pub fn valuation_with_tol(&self, tol: f64) -> Option<usize> {
        self.comps.iter().filter_map(|c| c.valuation_with_tol(tol).degree()).min()
    }

    /// Splits off the common power: returns `(t, F)` with `self = F x^t`, `F(0) != 0`.
    pub fn factor_out(&self, what: &str) -> Result<(usize, Self)> {
        let t = self
            .valuation()
            .ok_or_else(|| Error::ZeroToOrder { what: what.to_string(), order: self.order() })?;
        Ok((t, self.factor_power(t)?))
    }

    pub fn factor_power(&self, t: usize) -> Result<Self> {
        let [x, y, z] = &self.comps;
        Ok(Self::new(x.factor_power(t)?, y.factor_power(t)?, z.factor_power(t)?))
    }

    /// Value at `x = 0`.
    pub fn at_zero(&self) -> Result<[C; 3]> {
        Ok([self.comps[0].at_zero()?.clone(), self.comps[1].at_zero()?.clone(), self.comps[2].at_zero()?.clone()])
    }

    pub fn eval_f64(&self, x: f64) -> [f64; 3] {
        [self.comps[0].eval_f64(x), self.comps[1].eval_f64(x), self.comps[2].eval_f64(x)]
    }

    pub fn to_float(&self) -> Vec3Series<f64> {
        Vec3Series::new(self.comps[0].to_float(), self.comps[1].to_float(), self.comps[2].to_float())
    }

    /// Largest coefficient magnitude over all components.
    pub fn max_abs(&self) -> f64 {
        self.comps.iter().map(Series::max_abs).fold(0.0, f64::max)
    }

    /// Per-component valuations.
    pub fn valuations(&self) -> [Valuation<C>; 3] {
        [self.comps[0].valuation(), self.comps[1].valuation(), self.comps[2].valuation()]
    }
}

impl Vec3Series<f64> {
    /// `self / |self|` for a vector with nonvanishing value at 0.
    pub fn normalized(&self) -> Result<Self> {
        let inv = self.norm_sq().sqrt()?.reciprocal()?;
        Ok(self.scale_series(&inv))
    }
}

/// Plain 3-vector helpers on exact values.
pub fn cross3(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot3(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn to_f64_3(a: &[Rational; 3]) -> [f64; 3] {
    [a[0].to_f64(), a[1].to_f64(), a[2].to_f64()]
}

pub fn normalize_f64(a: [f64; 3]) -> [f64; 3] {
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff::int;

    fn q(v: &[i64]) -> Series<Rational> {
        Series::from_coeffs(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn basis_cross_product() {
        let e1 = Vec3Series::new(q(&[1, 0]), q(&[0, 0]), q(&[0, 0]));
        let e2 = Vec3Series::new(q(&[0, 0]), q(&[1, 0]), q(&[0, 0]));
        let e3 = e1.cross(&e2);
        assert_eq!(e3, Vec3Series::new(q(&[0, 0]), q(&[0, 0]), q(&[1, 0])));
    }

    #[test]
    fn norm_sq_of_tangent_factor() {
        let v = Vec3Series::new(q(&[2, 0, 0]), q(&[0, 3, 0]), q(&[2, 3, 0]));
        assert_eq!(v.norm_sq(), q(&[8, 12, 18]));
    }

    #[test]
    fn shared_order_is_min() {
        let v = Vec3Series::new(q(&[1, 2, 3]), q(&[1]), q(&[1, 2]));
        assert_eq!(v.order(), 0);
    }

    #[test]
    fn factor_out_common_power() {
        // (2x, -x^2 - 2x, x^2) / x = (2, -x - 2, x)
        let v = Vec3Series::new(q(&[0, 2, 0, 0]), q(&[0, -2, -1, 0]), q(&[0, 0, 1, 0]));
        let (t, f) = v.factor_out("normal").unwrap();
        assert_eq!(t, 1);
        assert_eq!(f, Vec3Series::new(q(&[2, 0, 0]), q(&[-2, -1, 0]), q(&[0, 1, 0])));
    }
}
