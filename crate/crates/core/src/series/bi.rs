use super::coeff::Coeff;
use super::uni::{Series, Valuation};
use crate::error::{Error, Result};

/// Truncated power series in `(u, v)`, reliable up to total degree `order`.
///
/// `rows[i][j]` is the coefficient of `u^i v^j`, `i + j <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<C> {
    order: usize,
    rows: Vec<Vec<C>>,
}

impl<C: Coeff> BiSeries<C> {
    pub fn zero(order: usize) -> Self {
        let rows = (0..=order).map(|i| vec![C::zero(); order - i + 1]).collect();
        Self { order, rows }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `u^i v^j`; zero above the reliable total degree is not
    /// known, so that is reported as an error.
    pub fn get(&self, i: usize, j: usize) -> Result<&C> {
        self.rows
            .get(i)
            .and_then(|row| row.get(j))
            .ok_or(Error::BeyondReliableOrder { requested: i + j, reliable: self.order as isize })
    }

    /// Sets the coefficient of `u^i v^j`; terms above the order are dropped.
    pub fn set(&mut self, i: usize, j: usize, c: C) {
        if i + j <= self.order {
            self.rows[i][j] = c;
        }
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: &C) {
        if i + j <= self.order {
            self.rows[i][j] = self.rows[i][j].plus(c);
        }
    }

    /// Nonzero terms as `(i, j, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, c)| (i, j, c))
        })
    }

    /// d/du; reliable total degree drops by one.
    pub fn partial_u(&self) -> Result<Self> {
        let order = self.lowered_order()?;
        let mut out = Self::zero(order);
        for (i, j, c) in self.terms() {
            if i >= 1 {
                out.set(i - 1, j, c.times(&C::from_int(i as i64)));
            }
        }
        Ok(out)
    }

    /// d/dv; reliable total degree drops by one.
    pub fn partial_v(&self) -> Result<Self> {
        let order = self.lowered_order()?;
        let mut out = Self::zero(order);
        for (i, j, c) in self.terms() {
            if j >= 1 {
                out.set(i, j - 1, c.times(&C::from_int(j as i64)));
            }
        }
        Ok(out)
    }

    fn lowered_order(&self) -> Result<usize> {
        self.order.checked_sub(1).ok_or(Error::BeyondReliableOrder { requested: 1, reliable: 0 })
    }

    /// Substitutes `u = u(x)`, `v = v(x)`.
    ///
    /// The discarded tail `O(u, v)^(R_F + 1)` only reaches x-degree
    /// `m_min (R_F + 1)` where `m_min = min(val u, val v)`, so the result is
    /// reliable to `m_min (R_F + 1) - 1`, capped by the curve's own orders.
    pub fn compose(&self, u: &Series<C>, v: &Series<C>) -> Result<Series<C>> {
        for s in [u, v] {
            if s.order() >= 0 && !s.coeffs()[0].is_zero() {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        let lowest = |s: &Series<C>| match s.valuation_with_tol(0.0) {
            Valuation::Leading { degree, .. } => degree as isize,
            Valuation::ZeroToOrder(r) => r + 1,
        };
        let m_min = lowest(u).min(lowest(v)).max(1);
        let tail = m_min * (self.order as isize + 1) - 1;
        let cap = tail.min(u.order()).min(v.order());
        if cap < 0 {
            return Ok(Series::from_coeffs(Vec::new()));
        }
        let u = u.truncate(cap);
        let v = v.truncate(cap);
        let cap = cap as usize;

        let mut v_powers = Vec::with_capacity(self.order + 1);
        v_powers.push(Series::constant(C::one(), cap));
        for j in 1..=self.order {
            let next = v_powers[j - 1].mul(&v);
            v_powers.push(next);
        }

        // Horner in u over rows, each row a polynomial in v.
        let mut acc = Series::zero(cap);
        for (i, row) in self.rows.iter().enumerate().rev() {
            if i + 1 < self.rows.len() {
                acc = acc.mul(&u);
            }
            let mut coeffs: Vec<C> = acc.into_coeffs();
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (d, vc) in v_powers[j].coeffs().iter().enumerate() {
                    C::mul_acc(&mut coeffs[d], c, vc);
                }
            }
            acc = Series::from_coeffs(coeffs);
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, u: f64, v: f64) -> f64 {
        self.rows.iter().rev().fold(0.0, |acc, row| {
            let inner = row.iter().rev().fold(0.0, |a, c| a * v + c.to_f64());
            acc * u + inner
        })
    }
}
