use num_traits::Zero;
use serde::Serialize;

use super::equality::{operator_equality_check, EqualityReport};
use super::virasoro::{heisenberg, virasoro_combination};
use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::Coefficient;
use crate::algebra::series::ZSeries;
use crate::algebra::tpoly::{monomial_basis, TPoly, VarKind};
use crate::curve::WittCoeffs;
use crate::error::{Error, Result};

/// `c_{kj} = [z^{-k-1}] h'(z) h(z)^{-j-1}`.
pub fn conjugation_coefficient(h: &ZSeries, k: i64, j: i64) -> Result<Coefficient> {
    // h = z u(z), so h' h^{-j-1} = z^{-j-1} u^{-j-1} h'
    let u = ZSeries::new(h.coefficients()[1..].to_vec(), h.order() - 1);
    let e = j + 1;
    let base = if e > 0 { u.recip()? } else { u.clone() };
    let pw = base.pow(e.unsigned_abs() as u32);
    let g = pw.mul(&h.derivative());
    let idx = j - k;
    if idx < 0 {
        return Ok(Coefficient::zero());
    }
    if idx > g.order() as i64 {
        return Err(Error::InsufficientOrder { needed: idx, available: g.order() as i64 });
    }
    Ok(g.coeff(idx as i32))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugationReport {
    pub weight: u32,
    pub modes: Vec<i64>,
    pub per_mode: Vec<(i64, EqualityReport)>,
}

impl ConjugationReport {
    pub fn passed(&self) -> bool {
        self.per_mode.iter().all(|(_, r)| r.passed())
    }
}

/// `V̂ Ĵ_k V̂^{-1} = Σ_{j ≥ k} c_{kj} Ĵ_j` with `V̂ = exp(Σ a_k L̂_k)`, on every
/// monomial of weight `≤ w`, for each requested mode `k`.
pub fn conjugation_check(h: &ZSeries, a: &WittCoeffs, w: u32, modes: &[i64]) -> Result<ConjugationReport> {
    let mut per_mode = Vec::new();
    for &k in modes {
        let bound = w + k.unsigned_abs() as u32;
        let idx = bound as usize;
        let plus = virasoro_combination(a, idx, 1);
        let minus = virasoro_combination(a, idx, -1);
        let jk = heisenberg(k, idx)?;
        let mut rhs_op = crate::operators::OpExpr::zero(VarKind::Small);
        for j in k..=bound as i64 {
            if j == 0 {
                continue;
            }
            let c = conjugation_coefficient(h, k, j)?;
            if !c.is_zero() {
                rhs_op.add_assign_scaled(&heisenberg(j, idx)?, &HbarPoly::constant(c))?;
            }
        }
        let basis: Vec<TPoly> = monomial_basis(VarKind::Small, w, false)
            .into_iter()
            .map(|m| TPoly::monomial(VarKind::Small, bound, m, HbarPoly::one()))
            .collect();
        let rep = operator_equality_check(
            &basis,
            |p| plus.exp_apply(&jk.apply(&minus.exp_apply(p, None)?)?, None),
            |p| rhs_op.apply(p),
        )?;
        per_mode.push((k, rep));
    }
    Ok(ConjugationReport { weight: w, modes: modes.to_vec(), per_mode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::curve::{build_curve, witt_coefficients, CurveParams};

    #[test]
    fn trivial_curve() {
        let h = ZSeries::z(12);
        let a = WittCoeffs::zeros(6);
        assert!(conjugation_check(&h, &a, 5, &[1, 2, -1]).unwrap().passed());
        assert_eq!(conjugation_coefficient(&h, 2, 2).unwrap(), int(1));
    }

    #[test]
    fn curve_and_sign_control() {
        let c = build_curve(&CurveParams::from_ints(1, 3, 2).unwrap(), 16).unwrap();
        let a = witt_coefficients(&c.f).unwrap();
        assert!(conjugation_check(&c.h, &a, 6, &[1, 2, 3, -1, -2]).unwrap().passed());
        let flipped = a.with(1, -a.get(1));
        assert!(!conjugation_check(&c.h, &flipped, 6, &[1, -1]).unwrap().passed());
    }
}
