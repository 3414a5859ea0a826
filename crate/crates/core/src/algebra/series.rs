//! Truncated univariate formal series in `z` with exact rational coefficients.
//!
//! A [`ZSeries`] knows its coefficients for exponents `lowest..=order` and
//! nothing beyond `order`. Binary operations never claim more than the
//! operands support: sums keep the smaller order, products the smaller
//! `order + lowest(other)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::rational::{self, Coefficient};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    lowest: i32,
    order: i32,
    coeffs: Vec<Coefficient>,
}

impl ZSeries {
    /// Power series `Σ coeffs[k] z^k`, known up to `z^order`. Missing
    /// coefficients are zero, surplus ones are dropped.
    pub fn new(coeffs: Vec<Coefficient>, order: i32) -> Self {
        Self::laurent(0, coeffs, order)
    }

    /// `Σ coeffs[i] z^(lowest + i)` known up to `z^order`.
    /// Stored canonically: `lowest` is `0` unless a negative power is nonzero.
    pub fn laurent(lowest: i32, mut coeffs: Vec<Coefficient>, order: i32) -> Self {
        let len = (order - lowest + 1).max(0) as usize;
        coeffs.resize(len, rational::zero());
        let mut lowest = lowest;
        if lowest > 0 {
            let pad = (lowest.min(order + 1)) as usize;
            coeffs.splice(0..0, std::iter::repeat_n(rational::zero(), pad));
            coeffs.truncate((order + 1).max(0) as usize);
            lowest = 0;
        }
        while lowest < 0 && coeffs.first().is_some_and(Zero::is_zero) {
            coeffs.remove(0);
            lowest += 1;
        }
        Self { lowest, order, coeffs }
    }

    pub fn from_fn(order: i32, f: impl FnMut(i32) -> Coefficient) -> Self {
        Self::new((0..=order).map(f).collect(), order)
    }

    pub fn zero(order: i32) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: i32) -> Self {
        Self::monomial(rational::one(), 0, order)
    }

    /// The series `z`.
    pub fn z(order: i32) -> Self {
        Self::monomial(rational::one(), 1, order)
    }

    /// `c z^k` (exact, so it is stored with `lowest = min(0, k)`).
    pub fn monomial(c: Coefficient, k: i32, order: i32) -> Self {
        let lowest = k.min(0);
        let mut coeffs = vec![rational::zero(); (order - lowest + 1).max(0) as usize];
        if k <= order {
            coeffs[(k - lowest) as usize] = c;
        }
        Self::laurent(lowest, coeffs, order)
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn lowest(&self) -> i32 {
        self.lowest
    }

    /// Coefficient of `z^k`. Panics when `k` exceeds the known order.
    pub fn coeff(&self, k: i32) -> Coefficient {
        assert!(k <= self.order, "coefficient z^{k} beyond known order {}", self.order);
        if k < self.lowest {
            rational::zero()
        } else {
            self.coeffs[(k - self.lowest) as usize].clone()
        }
    }

    fn coeff_ref(&self, k: i32) -> Option<&Coefficient> {
        if k < self.lowest || k > self.order {
            None
        } else {
            Some(&self.coeffs[(k - self.lowest) as usize])
        }
    }

    /// Coefficients `z^0 ..= z^order` (requires a power series).
    pub fn coefficients(&self) -> Vec<Coefficient> {
        (0..=self.order).map(|k| self.coeff(k)).collect()
    }

    /// Exponent of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| i as i32 + self.lowest)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: i32) -> Self {
        let order = order.min(self.order);
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate((order - self.lowest + 1).max(0) as usize);
        Self::laurent(self.lowest, coeffs, order)
    }

    /// Drops vanishing negative-exponent slots; errors if a negative power
    /// actually occurs.
    fn as_power_series(&self, what: &'static str) -> Result<Self> {
        if self.lowest >= 0 {
            if self.lowest == 0 {
                return Ok(self.clone());
            }
            return Ok(Self::new(self.coefficients(), self.order));
        }
        if (self.lowest..0).any(|k| !self.coeff(k).is_zero()) {
            return Err(Error::NonzeroConstant(what));
        }
        Ok(Self::new(self.coefficients(), self.order))
    }

    pub fn add(&self, other: &Self) -> Self {
        let lowest = self.lowest.min(other.lowest);
        let order = self.order.min(other.order);
        let coeffs = (lowest..=order)
            .map(|k| {
                let a = self.coeff_ref(k).cloned().unwrap_or_else(rational::zero);
                match other.coeff_ref(k) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        Self::laurent(lowest, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        Self {
            lowest: self.lowest,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        Self {
            lowest: self.lowest,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by the exact monomial `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self::laurent(self.lowest + k, self.coeffs.clone(), self.order + k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let lowest = self.lowest + other.lowest;
        let order = (self.order + other.lowest).min(other.order + self.lowest);
        let len = (order - lowest + 1).max(0) as usize;
        let mut coeffs = vec![rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::laurent(lowest, coeffs, order)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.order - self.lowest.min(0) * n as i32);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1 / a` for a power series with nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let a = self.as_power_series("recip")?;
        let a0 = a.coeff(0);
        if a0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = a0.recip();
        let k = a.order;
        let mut out: Vec<Coefficient> = Vec::with_capacity(k.max(0) as usize + 1);
        out.push(inv0.clone());
        for n in 1..=k {
            let mut acc = rational::zero();
            for j in 1..=n {
                let aj = &a.coeffs[j as usize];
                if !aj.is_zero() {
                    acc += aj * &out[(n - j) as usize];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::new(out, k))
    }

    /// `outer(inner(z))`; `inner` must have zero constant term.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        let outer = outer.as_power_series("compose outer")?;
        let inner = inner.as_power_series("compose inner")?;
        if !inner.coeff(0).is_zero() {
            return Err(Error::NonzeroConstant("compose inner"));
        }
        let order = outer.order.min(inner.order);
        let inner = inner.truncate(order);
        // Horner from the top coefficient down.
        let mut acc = Self::zero(order);
        for n in (0..=order).rev() {
            acc = acc.mul(&inner);
            acc = acc.add(&Self::monomial(outer.coeff(n), 0, order));
        }
        Ok(acc)
    }

    /// Compositional inverse of `a = z + O(z^2)` by Lagrange inversion:
    /// `[z^n] b = (1/n) [w^(n-1)] (w / a(w))^n`.
    pub fn reversion(&self) -> Result<Self> {
        let a = self.as_power_series("reversion")?;
        if !a.coeff(0).is_zero() {
            return Err(Error::NonzeroConstant("reversion"));
        }
        if a.order < 1 || !a.coeff(1).is_one() {
            return Err(Error::BadNormalization("reversion"));
        }
        let k = a.order;
        let phi = Self::new(a.coeffs[1..].to_vec(), k - 1).recip()?;
        let mut out = vec![rational::zero(); (k + 1) as usize];
        let mut power = Self::one(k - 1);
        for n in 1..=k {
            power = power.mul(&phi);
            out[n as usize] = power.coeff(n - 1) / rational::int(n as i64);
        }
        Ok(Self::new(out, k))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = (self.lowest..=self.order)
            .map(|k| self.coeff(k) * rational::int(k as i64))
            .skip(1)
            .collect::<Vec<_>>();
        let mut d = Self::laurent(self.lowest, coeffs, self.order - 1);
        if self.lowest != 0 {
            // z^lowest differentiates to z^(lowest-1)
            d = Self::laurent(
                self.lowest - 1,
                (self.lowest..=self.order)
                    .map(|k| self.coeff(k) * rational::int(k as i64))
                    .collect(),
                self.order - 1,
            );
        }
        d
    }

    /// Term-by-term integral with zero constant of integration.
    pub fn antiderivative(&self) -> Result<Self> {
        let a = if self.lowest < 0 {
            if self.coeff_ref(-1).is_some_and(|c| !c.is_zero()) {
                return Err(Error::NonzeroConstant("antiderivative of z^-1"));
            }
            self.clone()
        } else {
            self.clone()
        };
        let lowest = a.lowest + 1;
        let coeffs = (a.lowest..=a.order)
            .map(|k| {
                if k == -1 {
                    rational::zero()
                } else {
                    a.coeff(k) / rational::int(k as i64 + 1)
                }
            })
            .collect();
        Ok(Self::laurent(lowest, coeffs, a.order + 1))
    }

    /// `log(1 + a)` for `a` with zero constant term.
    pub fn log1p(&self) -> Result<Self> {
        let a = self.as_power_series("log1p")?;
        if !a.coeff(0).is_zero() {
            return Err(Error::NonzeroConstant("log1p"));
        }
        let one_plus = a.add(&Self::one(a.order));
        let quotient = a.derivative().mul(&one_plus.recip()?);
        quotient.antiderivative()
    }

    /// `exp(a)` for `a` with zero constant term.
    pub fn expm(&self) -> Result<Self> {
        let a = self.as_power_series("expm")?;
        if !a.coeff(0).is_zero() {
            return Err(Error::NonzeroConstant("expm"));
        }
        let k = a.order;
        let mut out: Vec<Coefficient> = vec![rational::one()];
        for n in 1..=k {
            let mut acc = rational::zero();
            for j in 1..=n {
                let aj = &a.coeffs[j as usize];
                if !aj.is_zero() {
                    acc += aj * rational::int(j as i64) * &out[(n - j) as usize];
                }
            }
            out.push(acc / rational::int(n as i64));
        }
        Ok(Self::new(out, k))
    }

    /// For `a = z^2 (1 + O(z))` returns `f = z + O(z^2)` with `f^2 = a`.
    pub fn sqrt_normalized(&self) -> Result<Self> {
        let a = self.as_power_series("sqrt").map_err(|_| Error::NotSquareNormalized)?;
        if a.order < 2 || !a.coeff(0).is_zero() || !a.coeff(1).is_zero() || !a.coeff(2).is_one() {
            return Err(Error::NotSquareNormalized);
        }
        let u: Vec<Coefficient> = (2..=a.order).map(|k| a.coeff(k)).collect();
        let n_max = u.len() - 1;
        let mut r: Vec<Coefficient> = vec![rational::one()];
        let half = rational::q(1, 2);
        for n in 1..=n_max {
            let mut acc = u[n].clone();
            for i in 1..n {
                acc -= &r[i] * &r[n - i];
            }
            r.push(acc * &half);
        }
        Ok(Self::new(r, n_max as i32).shift(1))
    }

    /// `a(-z)`.
    pub fn reflect(&self) -> Self {
        Self {
            lowest: self.lowest,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if (i as i32 + self.lowest) % 2 == 0 { c.clone() } else { -c })
                .collect(),
        }
    }

    /// True when the two series agree on every exponent up to `order`.
    pub fn agrees_to(&self, other: &Self, order: i32) -> bool {
        let lo = self.lowest.min(other.lowest);
        (lo..=order).all(|k| {
            let a = self.coeff_ref(k).cloned().unwrap_or_else(rational::zero);
            let b = other.coeff_ref(k).cloned().unwrap_or_else(rational::zero);
            a == b
        })
    }
}

impl fmt::Display for ZSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = i as i32 + self.lowest;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})z^{k}", rational::format(c))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order + 1)
    }
}

impl Serialize for ZSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ZSeries", 3)?;
        st.serialize_field("lowest", &self.lowest)?;
        st.serialize_field("order", &self.order)?;
        let cs: Vec<String> = self.coeffs.iter().map(rational::format).collect();
        st.serialize_field("coeffs", &cs)?;
        st.end()
    }
}
