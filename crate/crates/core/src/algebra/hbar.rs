//! Laurent polynomials in the formal parameter ħ.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::rational::{self, Coefficient};
use crate::error::{Error, Result};

/// A finite sum `Σ c_e ħ^e` with exact rational `c_e` and `e ∈ ℤ`.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HbarPoly {
    terms: BTreeMap<i32, Coefficient>,
}

impl HbarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rational::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::monomial(c, 0)
    }

    /// `c ħ^e`.
    pub fn monomial(c: Coefficient, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> Coefficient {
        self.terms.get(&e).cloned().unwrap_or_else(rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Coefficient)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i32, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_scaled(&mut self, other: &HbarPoly, by: &Coefficient) {
        if by.is_zero() {
            return;
        }
        for (e, c) in other.terms() {
            self.add_term(e, &(c * by));
        }
    }

    pub fn scale(&self, by: &Coefficient) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * by)).collect(),
        }
    }

    /// Multiplies by `ħ^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Evaluates at `ħ = value`.
    pub fn evaluate(&self, value: &Coefficient) -> Result<Coefficient> {
        if value.is_zero() {
            if self.min_exponent().is_some_and(|e| e < 0) {
                return Err(Error::HbarZero);
            }
            return Ok(self.coeff(0));
        }
        Ok(self
            .terms
            .iter()
            .fold(rational::zero(), |acc, (e, c)| acc + c * rational::pow(value, *e as i64)))
    }

    /// Substitutes `ħ ↦ c·ħ`, keeping ħ formal.
    pub fn rescale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero();
        for (e, v) in self.terms() {
            out.add_term(e, &(v * rational::pow(c, e as i64)));
        }
        out
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(i32) -> bool) {
        self.terms.retain(|e, _| keep(*e));
    }
}

impl From<Coefficient> for HbarPoly {
    fn from(c: Coefficient) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&HbarPoly> for HbarPoly {
    fn add_assign(&mut self, rhs: &HbarPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Add for &HbarPoly {
    type Output = HbarPoly;
    fn add(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &HbarPoly {
    type Output = HbarPoly;
    fn neg(self) -> HbarPoly {
        HbarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &HbarPoly {
    type Output = HbarPoly;
    fn sub(self, rhs: &HbarPoly) -> HbarPoly {
        self + &(-rhs)
    }
}

impl Mul for &HbarPoly {
    type Output = HbarPoly;
    fn mul(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = HbarPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Serialize for HbarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&format!("h^{e}"), &rational::format(c))?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    #[test]
    fn arithmetic_and_cancellation() {
        let a = &HbarPoly::monomial(q(1, 2), -1) + &HbarPoly::one();
        let b = &HbarPoly::monomial(q(-1, 2), -1) + &HbarPoly::one();
        let sum = &a + &b;
        assert_eq!(sum, HbarPoly::constant(q(2, 1)));
        let prod = &a * &b;
        // (1 + x)(1 - x) with x = ħ^{-1}/2
        assert_eq!(prod.coeff(-2), q(-1, 4));
        assert_eq!(prod.coeff(-1), q(0, 1));
        assert_eq!(prod.coeff(0), q(1, 1));
    }

    #[test]
    fn evaluation() {
        let p = &HbarPoly::monomial(q(1, 6), 1) + &HbarPoly::monomial(q(1, 1), -1);
        assert_eq!(p.evaluate(&q(1, 2)).unwrap(), q(1, 12) + q(2, 1));
        assert_eq!(p.evaluate(&q(0, 1)), Err(Error::HbarZero));
        assert_eq!(p.rescale(&q(2, 1)).coeff(1), q(1, 3));
    }

    #[test]
    fn json_shape() {
        let p = HbarPoly::monomial(q(3, 4), -1);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"h^-1":"3/4"}"#);
    }
}
