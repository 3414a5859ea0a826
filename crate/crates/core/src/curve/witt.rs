use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::{self, int, Coefficient};
use crate::algebra::series::ZSeries;
use crate::error::{Error, Result};

/// Coefficients `a_1, a_2, …` of `f = exp(-Σ a_m z^{m+1} d/dz) z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WittCoeffs {
    #[serde(serialize_with = "ser_list")]
    a: Vec<Coefficient>,
}

fn ser_list<S: serde::Serializer>(v: &[Coefficient], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::format))
}

impl WittCoeffs {
    pub fn new(a: Vec<Coefficient>) -> Self {
        Self { a }
    }

    pub fn zeros(count: usize) -> Self {
        Self { a: vec![rational::zero(); count] }
    }

    /// `a_k` (zero beyond the stored range).
    pub fn get(&self, k: usize) -> Coefficient {
        if k == 0 {
            return rational::zero();
        }
        self.a.get(k - 1).cloned().unwrap_or_else(rational::zero)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `(k, a_k)` for nonzero entries.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Coefficient)> + '_ {
        self.a.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i + 1, c))
    }

    /// Same coefficients with `a_k` replaced.
    pub fn with(&self, k: usize, value: Coefficient) -> Self {
        let mut a = self.a.clone();
        if a.len() < k {
            a.resize(k, rational::zero());
        }
        a[k - 1] = value;
        Self { a }
    }
}

/// `exp(X) z` with `X = -Σ a_m z^{m+1} d/dz`, to `order`.
pub fn witt_flow(a: &WittCoeffs, order: i32) -> ZSeries {
    let mut acc = ZSeries::z(order);
    let mut term = ZSeries::z(order);
    for n in 1..=order {
        let d = term.derivative();
        let mut next = vec![rational::zero(); order as usize + 1];
        for (m, am) in a.nonzero() {
            for i in 0..=order {
                let target = i + m as i32 + 1;
                if target > order {
                    break;
                }
                if i <= d.order() {
                    let c = d.coeff(i);
                    if !c.is_zero() {
                        next[target as usize] -= am * c;
                    }
                }
            }
        }
        term = ZSeries::new(next, order).scale(&(rational::one() / int(n as i64)));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    acc
}

/// Peels `a_1, …, a_{K-1}` off `f = z + O(z^2)` known to order `K`.
pub fn witt_coefficients(f: &ZSeries) -> Result<WittCoeffs> {
    if !f.coeff(0).is_zero() {
        return Err(Error::NonzeroConstant("witt_coefficients"));
    }
    if f.order() < 1 || !f.coeff(1).is_one() {
        return Err(Error::BadNormalization("witt_coefficients"));
    }
    let order = f.order();
    let mut a = WittCoeffs::zeros(0);
    for k in 1..order as usize {
        let trial = a.with(k, rational::zero());
        let phi = witt_flow(&trial, k as i32 + 1);
        let target = k as i32 + 1;
        a = trial.with(k, -(f.coeff(target) - phi.coeff(target)));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::curve::{build_curve, catalog, CurveParams};

    #[test]
    fn identity_has_no_flow() {
        let a = witt_coefficients(&ZSeries::z(8)).unwrap();
        assert_eq!(a.nonzero().count(), 0);
    }

    #[test]
    fn values_at_one_three() {
        let c = build_curve(&CurveParams::from_ints(1, 3, 2).unwrap(), 8).unwrap();
        let a = witt_coefficients(&c.f).unwrap();
        assert_eq!(
            (1..=4).map(|k| a.get(k)).collect::<Vec<_>>(),
            vec![q(5, 6), q(-13, 48), q(307, 1728), q(-29, 216)]
        );
    }

    #[test]
    fn reconstruction() {
        for p in catalog() {
            let c = build_curve(&p, 11).unwrap();
            let a = witt_coefficients(&c.f).unwrap();
            assert_eq!(witt_flow(&a, 11), c.f, "{p}");
        }
    }

    #[test]
    fn normalization_errors() {
        assert!(witt_coefficients(&ZSeries::one(4)).is_err());
        assert!(witt_coefficients(&ZSeries::z(4).scale(&q(2, 1))).is_err());
    }
}
