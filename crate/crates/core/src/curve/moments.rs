use num_bigint::BigInt;

use super::build::CurveSeries;
use crate::algebra::rational::{double_factorial, Coefficient};
use crate::algebra::series::ZSeries;
use crate::error::{Error, Result};

/// The formal Gaussian average `ζ^{2k} ↦ (2k-1)!! z^k`, odd powers ↦ 0.
pub fn gaussian_moments(g: &ZSeries, order: i32) -> ZSeries {
    let order = order.min(g.order().div_euclid(2));
    ZSeries::from_fn(order, |k| {
        g.coeff(2 * k) * Coefficient::from_integer(BigInt::from(double_factorial(2 * k as i64 - 1)))
    })
}

/// `gaussian_moments(ζ / h(ζ))` to `order`; needs `h` known to `2·order + 1`.
pub fn moment_transform(h: &ZSeries, order: i32) -> Result<ZSeries> {
    let needed = 2 * order + 1;
    if h.order() < needed {
        return Err(Error::InsufficientOrder { needed: needed as i64, available: h.order() as i64 });
    }
    let h_over_z = ZSeries::new(h.coefficients()[1..].to_vec(), h.order() - 1);
    Ok(gaussian_moments(&h_over_z.recip()?, order))
}

/// `I(z)` of the curve to `order`.
pub fn i_series(curve: &CurveSeries, order: i32) -> Result<ZSeries> {
    moment_transform(&curve.h, order)
}
