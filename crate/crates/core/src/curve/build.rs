use num_traits::{One, Zero};
use serde::Serialize;

use super::bernoulli::bernoulli;
use super::params::CurveParams;
use crate::algebra::rational::{self, int, Coefficient};
use crate::algebra::series::ZSeries;
use crate::error::{Error, Result};

/// Series data attached to a curve `x = ∫ z dz / N(z)`, all known to `order`.
#[derive(Clone, Debug, Serialize)]
pub struct CurveSeries {
    pub params: Option<CurveParams>,
    pub order: i32,
    pub n: ZSeries,
    pub x: ZSeries,
    pub x_prime: ZSeries,
    pub f: ZSeries,
    pub h: ZSeries,
    pub y: ZSeries,
    pub r: ZSeries,
    pub log_r: ZSeries,
}

/// Everything determined by the denominator `N` alone.
pub(crate) struct Uniformizer {
    pub n: ZSeries,
    pub x: ZSeries,
    pub x_prime: ZSeries,
    pub f: ZSeries,
    pub h: ZSeries,
    pub y: ZSeries,
}

pub(crate) fn uniformize(n: &ZSeries, order: i32) -> Result<Uniformizer> {
    let inner = order + 2;
    let n = n.truncate(inner);
    if n.order() < inner {
        return Err(Error::InsufficientOrder { needed: inner as i64, available: n.order() as i64 });
    }
    let inv = n.recip()?;
    let x_prime = inv.shift(1);
    let x = x_prime.antiderivative()?;
    let f = x.scale(&int(2)).sqrt_normalized()?.truncate(order);
    let h = f.reversion()?;
    let y = inv.antiderivative()?.truncate(order);
    Ok(Uniformizer {
        n: n.truncate(order),
        x: x.truncate(order),
        x_prime: x_prime.truncate(order),
        f,
        h,
        y,
    })
}

/// `N(z) = (1 + s z)(1 + q z / s)`.
pub fn denominator(params: &CurveParams, order: i32) -> ZSeries {
    let s = params.s();
    let qq = params.q();
    ZSeries::new(vec![rational::one(), s + qq / s, qq.clone()], order)
}

/// Coefficients of `log R` for the parameter point, to `order`.
pub fn log_r_series(params: &CurveParams, order: i32) -> ZSeries {
    let (qq, p) = (params.q(), params.p());
    let mixed = p * qq / (p + qq);
    ZSeries::from_fn(order, |j| {
        if j % 2 == 0 {
            return rational::zero();
        }
        let k = (j as i64 + 1) / 2;
        let b = bernoulli(2 * k).expect("even index");
        let e = j as i64;
        let bracket = rational::pow(p, e) + rational::pow(qq, e) - rational::pow(&mixed, e);
        -b / int(2 * k * (2 * k - 1)) * bracket
    })
}

/// `R_{q,p}(z) = exp(log R)`.
pub fn r_series(params: &CurveParams, order: i32) -> ZSeries {
    log_r_series(params, order).expm().expect("log R has no constant term")
}

/// Couplings `c_k = B_{2k}/(2k)! · s_k` with Miwa values `s_k = (2k-2)! Σ u_j^{2k-1}`.
pub fn miwa_couplings(params: &CurveParams, count: usize) -> Vec<Coefficient> {
    let u = params.miwa();
    (1..=count as i64)
        .map(|k| {
            let power_sum: Coefficient = u.iter().map(|x| rational::pow(x, 2 * k - 1)).sum();
            let s_k = Coefficient::from_integer(rational::factorial(2 * k as u64 - 2)) * power_sum;
            let b = bernoulli(2 * k).expect("even index");
            b / Coefficient::from_integer(rational::factorial(2 * k as u64)) * s_k
        })
        .collect()
}

/// Builds every series attached to the parameter point up to `z^order`.
pub fn build_curve(params: &CurveParams, order: i32) -> Result<CurveSeries> {
    if order < 4 {
        return Err(Error::InsufficientOrder { needed: 4, available: order as i64 });
    }
    let u = uniformize(&denominator(params, order + 2), order)?;
    let log_r = log_r_series(params, order);
    let r = log_r.expm()?;
    Ok(CurveSeries {
        params: Some(params.clone()),
        order,
        n: u.n,
        x: u.x,
        x_prime: u.x_prime,
        f: u.f,
        h: u.h,
        y: u.y,
        r,
        log_r,
    })
}

/// Builds a curve from an arbitrary denominator; `R` is then taken from the
/// moment transform, `R(z) = I(-z)`.
pub fn build_from_denominator(n: &[Coefficient], order: i32) -> Result<CurveSeries> {
    let work = 2 * order + 2;
    let u = uniformize(&ZSeries::new(n.to_vec(), work + 2), work)?;
    let r = super::moments::moment_transform(&u.h, order)?.reflect();
    if !r.coeff(0).is_one() {
        return Err(Error::RNotNormalized);
    }
    let log_r = r.sub(&ZSeries::one(order)).log1p()?;
    Ok(CurveSeries {
        params: None,
        order,
        n: u.n.truncate(order),
        x: u.x.truncate(order),
        x_prime: u.x_prime.truncate(order),
        f: u.f.truncate(order),
        h: u.h.truncate(order),
        y: u.y.truncate(order),
        r,
        log_r,
    })
}

impl CurveSeries {
    /// `R(z) R(-z) - 1` to the known order.
    pub fn symplectic_defect(&self) -> ZSeries {
        self.r.mul(&self.r.reflect()).sub(&ZSeries::one(self.order))
    }

    /// Whether `log R` has only odd powers.
    pub fn log_r_is_odd(&self) -> bool {
        (0..=self.log_r.order()).step_by(2).all(|k| self.log_r.coeff(k).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn coeffs(s: &ZSeries, upto: i32) -> Vec<Coefficient> {
        (0..=upto).map(|k| s.coeff(k)).collect()
    }

    #[test]
    fn curve_at_one_three() {
        let c = build_curve(&CurveParams::from_ints(1, 3, 2).unwrap(), 8).unwrap();
        assert_eq!(coeffs(&c.x, 5), vec![q(0, 1), q(0, 1), q(1, 2), q(-5, 6), q(21, 16), q(-17, 8)]);
        assert_eq!(coeffs(&c.f, 4), vec![q(0, 1), q(1, 1), q(-5, 6), q(139, 144), q(-1141, 864)]);
        assert_eq!(coeffs(&c.r, 3), vec![q(1, 1), q(-13, 48), q(169, 4608), q(48635, 663552)]);
    }

    #[test]
    fn r_first_coefficient() {
        let r = r_series(&CurveParams::from_ints(-1, 2, 1).unwrap(), 4);
        assert_eq!(r.coeff(1), q(-1, 4));
    }

    #[test]
    fn miwa_matches_log_r() {
        for p in super::super::params::catalog() {
            let log_r = log_r_series(&p, 11);
            let c = miwa_couplings(&p, 6);
            for k in 1..=6 {
                assert_eq!(log_r.coeff(2 * k - 1), c[k as usize - 1]);
            }
        }
    }

    #[test]
    fn order_guard() {
        assert!(build_curve(&CurveParams::from_ints(1, 3, 2).unwrap(), 3).is_err());
    }
}
