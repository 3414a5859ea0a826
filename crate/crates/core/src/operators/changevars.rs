use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::virasoro::{linear_virasoro_generator, virasoro};
use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::{self, int, q, Coefficient};
use crate::algebra::series::ZSeries;
use crate::algebra::tpoly::{Monomial, TPoly, VarKind};
use crate::curve::{CurveParams, WittCoeffs};
use crate::error::{Error, Result};

/// `T_0 = t_1`, `T_k = (qL̂_0 + ((2q+p)/s)L̂_{-1} + L̂_{-2} - t_1²/2) T_{k-1}`
/// for `k ≤ max_index`, returned at weight bound `w`.
pub fn tqp_forms(params: &CurveParams, max_index: usize, w: u32) -> Result<Vec<TPoly>> {
    let inner = (2 * max_index + 3) as u32;
    let idx = inner as usize;
    let qq = params.q();
    let c1 = (int(2) * qq + params.p()) / params.s();
    let mut step = virasoro(0, idx).scaled(qq);
    step.add_assign_scaled(&virasoro(-1, idx), &HbarPoly::constant(c1))?;
    step.add_assign_scaled(&virasoro(-2, idx), &HbarPoly::one())?;
    step.add_scalar_term(q(-1, 2), &[1, 1], &[]);
    let mut forms = vec![TPoly::var(VarKind::Small, inner, 1)];
    for k in 1..=max_index {
        let next = step.apply(&forms[k - 1])?;
        if next.degree() > 1 {
            return Err(Error::Invariant(format!("T_{k} is not linear in t")));
        }
        forms.push(next);
    }
    Ok(forms.into_iter().map(|f| f.with_max_weight(w)).collect())
}

/// The same forms from the symbol calculus in `w = 1/z`:
/// `w^j ↦ j (w^{j+2} + n_1 w^{j+1} + q w^j)`, read back through `w^j ↔ j t_j`.
pub fn tqp_symbol_forms(params: &CurveParams, max_index: usize, w: u32) -> Vec<TPoly> {
    let top = 2 * max_index as i32 + 1;
    let qq = params.q();
    let n1 = params.s() + qq / params.s();
    let mut symbol = ZSeries::z(top);
    let mut forms = Vec::new();
    for k in 0..=max_index {
        if k > 0 {
            let mut next = vec![rational::zero(); top as usize + 1];
            for j in 1..=top {
                let c = symbol.coeff(j);
                if c.is_zero() {
                    continue;
                }
                let cj = &c * int(j as i64);
                for (shift, f) in [(2, rational::one()), (1, n1.clone()), (0, qq.clone())] {
                    let target = j + shift;
                    if target <= top {
                        next[target as usize] += &cj * &f;
                    }
                }
            }
            symbol = ZSeries::new(next, top);
        }
        let mut form = TPoly::zero(VarKind::Small, w);
        for j in 1..=top {
            let c = symbol.coeff(j);
            if !c.is_zero() {
                form.add_scalar_term(Monomial::var(j as usize), 0, &(c * int(j as i64)));
            }
        }
        forms.push(form);
    }
    forms
}

/// `T^R_k(T^{q,p}(t)) = Σ_j [z^j]R(-z) T^{q,p}_{k-j}(t)`.
pub fn tr_of_tqp(r: &ZSeries, forms: &[TPoly]) -> Result<Vec<TPoly>> {
    let rm = r.reflect();
    (0..forms.len())
        .map(|k| {
            let mut acc = TPoly::zero(VarKind::Small, forms[0].max_weight());
            for j in 0..=k {
                let c = rm.coeff(j as i32);
                acc.add_assign_scaled(&forms[k - j], &HbarPoly::constant(c))?;
            }
            Ok(acc)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChangeVarsReport {
    pub weight: u32,
    pub checked: Vec<usize>,
    pub failures: Vec<usize>,
}

impl ChangeVarsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `T^R_k(T^{q,p}(t)) = exp(Σ a_k Σ m t_m ∂_{k+m}) (2k+1)!! t_{2k+1}` for `k ≤ kmax`.
pub fn lemma_changevars_check(
    params: &CurveParams,
    r: &ZSeries,
    a: &WittCoeffs,
    kmax: usize,
    w: u32,
) -> Result<ChangeVarsReport> {
    let forms = tqp_forms(params, kmax, w)?;
    let lhs = tr_of_tqp(r, &forms)?;
    let gen = linear_virasoro_generator(a, w as usize);
    let mut failures = Vec::new();
    for (k, l) in lhs.iter().enumerate() {
        let df = Coefficient::from_integer(rational::double_factorial(2 * k as i64 + 1));
        let start = TPoly::var(VarKind::Small, w, 2 * k + 1).scale(&df);
        let rhs = gen.exp_apply(&start, None)?;
        if *l != rhs {
            failures.push(k);
        }
    }
    Ok(ChangeVarsReport { weight: w, checked: (0..=kmax).collect(), failures })
}

/// Images `T_m ↦ T^{q,p}_m(t)` for substitution.
pub fn tqp_images(params: &CurveParams, max_index: usize, w: u32) -> Result<BTreeMap<usize, TPoly>> {
    Ok(tqp_forms(params, max_index, w)?.into_iter().enumerate().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::catalog;

    #[test]
    fn first_forms() {
        let p = CurveParams::from_ints(1, 3, 2).unwrap();
        let f = tqp_forms(&p, 2, 9).unwrap();
        assert_eq!(f[0], TPoly::var(VarKind::Small, 9, 1));
        let t = |i| TPoly::var(VarKind::Small, 9, i);
        let expected = t(1).add(&t(2).scale(&int(5))).unwrap().add(&t(3).scale(&int(3))).unwrap();
        assert_eq!(f[1], expected);
    }

    #[test]
    fn parity_at_minus_two_q() {
        let p = CurveParams::from_ints(-1, 2, 1).unwrap();
        for f in tqp_forms(&p, 4, 9).unwrap() {
            assert!(!f.contains_even_times());
        }
    }

    #[test]
    fn symbol_calculus_agrees() {
        for p in catalog() {
            assert_eq!(tqp_forms(&p, 5, 11).unwrap(), tqp_symbol_forms(&p, 5, 11), "{p}");
        }
    }
}
