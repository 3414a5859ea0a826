use num_traits::Zero;
use serde::Serialize;

use super::equality::{operator_equality_check, EqualityReport};
use super::opexpr::OpExpr;
use super::virasoro::{linear_virasoro_generator, virasoro_combination};
use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::q;
use crate::algebra::series::ZSeries;
use crate::algebra::tpoly::{monomial_basis, TPoly, VarKind};
use crate::curve::{grunsky_matrix, GrunskyMatrix, WittCoeffs};
use crate::error::Result;

/// `½ Σ_{k,m ≥ 1} v_{km} ∂_{t_k} ∂_{t_m}`.
pub fn grunsky_quadratic(v: &GrunskyMatrix) -> OpExpr {
    let mut op = OpExpr::zero(VarKind::Small);
    for k in 1..=v.size() {
        for m in 1..=v.size() {
            let c = v.get(k, m);
            if !c.is_zero() {
                op.add_scalar_term(c * q(1, 2), &[], &[k, m]);
            }
        }
    }
    op
}

#[derive(Clone, Debug, Serialize)]
pub struct GrunskyReport {
    pub weight: u32,
    pub symmetric: bool,
    pub factorization: EqualityReport,
}

impl GrunskyReport {
    pub fn passed(&self) -> bool {
        self.symmetric && self.factorization.passed()
    }
}

/// `exp(Σ a_k L̂_k) = V̂_0 exp(½ Σ v_{km} ∂_k ∂_m)` on every monomial of weight
/// `≤ w`, with `v` the Grunsky coefficients of `h`.
pub fn grunsky_factorization_check(h: &ZSeries, a: &WittCoeffs, w: u32) -> Result<GrunskyReport> {
    let v = grunsky_matrix(h, w as usize)?;
    let idx = w as usize;
    let full = virasoro_combination(a, idx, 1);
    let linear = linear_virasoro_generator(a, idx);
    let quad = grunsky_quadratic(&v);
    let basis: Vec<TPoly> = monomial_basis(VarKind::Small, w, false)
        .into_iter()
        .map(|m| TPoly::monomial(VarKind::Small, w, m, HbarPoly::one()))
        .collect();
    let factorization = operator_equality_check(
        &basis,
        |p| full.exp_apply(p, None),
        |p| linear.exp_apply(&quad.exp_apply(p, None)?, None),
    )?;
    Ok(GrunskyReport { weight: w, symmetric: v.is_symmetric(), factorization })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{build_curve, witt_coefficients, CurveParams};

    #[test]
    fn factorization_holds() {
        let p = CurveParams::from_ints(1, 3, 2).unwrap();
        let c = build_curve(&p, 2 * 7 + 2).unwrap();
        let a = witt_coefficients(&c.f).unwrap();
        let rep = grunsky_factorization_check(&c.h, &a, 7).unwrap();
        assert!(rep.passed(), "{:?}", rep.factorization.failures.first());
        let bad = grunsky_factorization_check(&c.f, &a, 7).unwrap();
        assert!(!bad.passed());
    }
}
