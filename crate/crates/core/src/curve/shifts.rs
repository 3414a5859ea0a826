use num_traits::Zero;
use serde::Serialize;

use super::build::CurveSeries;
use super::moments::gaussian_moments;
use crate::algebra::rational::{self, Coefficient};
use crate::algebra::series::ZSeries;
use crate::error::Result;

/// Dilaton-shift changes `δ_k`, `δ⁰_k` and translations `v_k`, `v⁰_k`,
/// each stored densely by index (`vec[k]`, unused slots zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftData {
    #[serde(serialize_with = "ser_list")]
    pub delta: Vec<Coefficient>,
    #[serde(serialize_with = "ser_list")]
    pub delta0: Vec<Coefficient>,
    #[serde(serialize_with = "ser_list")]
    pub v: Vec<Coefficient>,
    #[serde(serialize_with = "ser_list")]
    pub v0: Vec<Coefficient>,
}

fn ser_list<S: serde::Serializer>(v: &[Coefficient], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::format))
}

fn at(v: &[Coefficient], k: usize) -> Coefficient {
    v.get(k).cloned().unwrap_or_else(rational::zero)
}

impl ShiftData {
    pub fn delta(&self, k: usize) -> Coefficient {
        at(&self.delta, k)
    }
    pub fn delta0(&self, k: usize) -> Coefficient {
        at(&self.delta0, k)
    }
    pub fn v(&self, k: usize) -> Coefficient {
        at(&self.v, k)
    }
    pub fn v0(&self, k: usize) -> Coefficient {
        at(&self.v0, k)
    }
}

/// `z(1 - R(-z))` and `1 - R(-z)`.
fn dilaton_series(r: &ZSeries) -> (ZSeries, ZSeries) {
    let one_minus = ZSeries::one(r.order()).sub(&r.reflect());
    (one_minus.shift(1), one_minus)
}

/// `(f - y) x'` and `f - y`.
fn translation_integrands(curve: &CurveSeries) -> (ZSeries, ZSeries) {
    let fy = curve.f.sub(&curve.y);
    (fy.mul(&curve.x_prime), fy)
}

pub fn shift_data(curve: &CurveSeries) -> Result<ShiftData> {
    let k = curve.order as usize;
    let (zd, d0) = dilaton_series(&curve.r);
    let (integrand, fy) = translation_integrands(curve);
    let v_series = integrand.antiderivative()?;
    let coeffs = |s: &ZSeries| -> Vec<Coefficient> { (0..=k as i32).map(|i| if i <= s.order() { s.coeff(i) } else { rational::zero() }).collect() };
    let mut delta = coeffs(&zd);
    delta[0] = rational::zero();
    if delta.len() > 1 {
        delta[1] = rational::zero();
    }
    let mut delta0 = coeffs(&d0);
    delta0[0] = rational::zero();
    Ok(ShiftData { delta, delta0, v: coeffs(&v_series), v0: coeffs(&fy) })
}

/// Outcome of the two moment identities for the translations.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftIdentities {
    pub order: i32,
    pub standard_holds: bool,
    pub theta_holds: bool,
    pub low_v_vanish: bool,
}

/// Checks `gaussian_moments((ζ - y(h(ζ))) ζ) = z(1 - R(-z))`,
/// `gaussian_moments(1 - (y∘h)'(ζ)) = 1 - R(-z)` and `v_1 = v_2 = v_3 = 0`.
pub fn verify_shift_identities(curve: &CurveSeries, order: i32) -> Result<ShiftIdentities> {
    let yh = ZSeries::compose(&curve.y, &curve.h)?;
    let d = ZSeries::z(yh.order()).sub(&yh);
    let g_std = d.shift(1);
    let g_theta = d.derivative();
    let (zd, d0) = dilaton_series(&curve.r);
    let m_std = gaussian_moments(&g_std, order);
    let m_theta = gaussian_moments(&g_theta, order);
    let top_std = m_std.order().min(zd.order());
    let top_theta = m_theta.order().min(d0.order());
    let sd = shift_data(curve)?;
    Ok(ShiftIdentities {
        order: top_std.min(top_theta),
        standard_holds: m_std.agrees_to(&zd, top_std),
        theta_holds: m_theta.agrees_to(&d0, top_theta),
        low_v_vanish: (1..=3).all(|k| sd.v(k).is_zero()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::curve::{build_curve, catalog, CurveParams};

    #[test]
    fn values_at_one_three() {
        let c = build_curve(&CurveParams::from_ints(1, 3, 2).unwrap(), 10).unwrap();
        let s = shift_data(&c).unwrap();
        assert_eq!(s.delta(2), q(-13, 48));
        assert_eq!(s.v(4), q(5, 48));
        assert_eq!(s.v(5), q(-263, 720));
        assert_eq!(s.v(6), q(4739, 5184));
    }

    #[test]
    fn theta_values() {
        let c = build_curve(&CurveParams::from_ints(-1, 2, 1).unwrap(), 10).unwrap();
        let s = shift_data(&c).unwrap();
        assert_eq!(s.v0(3), q(-1, 12));
        assert_eq!(s.v0(5), q(-31, 480));
    }

    #[test]
    fn identities_hold_on_catalog() {
        for p in catalog().into_iter().chain([CurveParams::from_ints(1, 3, -2).unwrap()]) {
            let c = build_curve(&p, 20).unwrap();
            let r = verify_shift_identities(&c, 9).unwrap();
            assert!(r.standard_holds && r.theta_holds && r.low_v_vanish, "{p}");
            assert!(r.order >= 9);
        }
    }

    #[test]
    fn trivial_r_has_no_shifts() {
        let (zd, d0) = dilaton_series(&ZSeries::one(6));
        assert!(zd.is_zero() && d0.is_zero());
    }
}
