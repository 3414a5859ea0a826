use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::opexpr::OpExpr;
use super::virasoro::{quadratic, translation};
use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::{self, q, Coefficient};
use crate::algebra::series::ZSeries;
use crate::algebra::tpoly::{TPoly, VarKind};
use crate::algebra::window::Window;
use crate::curve::givental_v_matrix;
use crate::error::{Error, Result};

/// Where the dilaton shift sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `T̃_1 = T_1 - ħ^{-1}` (Kontsevich–Witten base).
    Standard,
    /// `T̃_0 = T_0 - ħ^{-1}` (BGW base).
    Theta,
}

impl Mode {
    fn dilaton_index(self) -> usize {
        match self {
            Mode::Standard => 1,
            Mode::Theta => 0,
        }
    }
}

fn max_big_index(p: &TPoly) -> usize {
    VarKind::Big.max_index(p.max_weight()).unwrap_or(0)
}

/// `Ŵ_k = -Σ_m T̃_m ∂_{m+2k-1} + ½ Σ_{m=0}^{2k-2} (-1)^m ∂_m ∂_{2k-2-m}` on `T_0 … T_max_index`.
pub fn w_operator(k: i64, mode: Mode, max_index: usize) -> Result<OpExpr> {
    if k <= 0 {
        return Err(Error::OperatorIndex(format!("W_{k}")));
    }
    let k = k as usize;
    let mut op = OpExpr::zero(VarKind::Big);
    for m in 0..=max_index {
        let j = m + 2 * k - 1;
        if j > max_index {
            break;
        }
        op.add_scalar_term(rational::int(-1), &[m], &[j]);
        if m == mode.dilaton_index() {
            op.add_term(HbarPoly::monomial(rational::one(), -1), &[], &[j]);
        }
    }
    for m in 0..=2 * k - 2 {
        let n = 2 * k - 2 - m;
        if m <= max_index && n <= max_index {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            op.add_scalar_term(q(sign, 2), &[], &[m, n]);
        }
    }
    Ok(op)
}

pub fn w_apply(k: i64, p: &TPoly, mode: Mode) -> Result<TPoly> {
    if p.kind() != VarKind::Big {
        return Err(Error::WrongKind { expected: "T-side" });
    }
    w_operator(k, mode, max_big_index(p))?.apply(p)
}

/// `Σ c_k Ŵ_k` with `couplings[k-1] = c_k`.
pub fn givental_generator(couplings: &[Coefficient], mode: Mode, max_index: usize) -> Result<OpExpr> {
    let mut op = OpExpr::zero(VarKind::Big);
    for (i, c) in couplings.iter().enumerate() {
        let k = i + 1;
        // Ŵ_k lowers weight by at least 4k - 2
        if c.is_zero() || 4 * k - 2 > 2 * max_index + 1 {
            continue;
        }
        op.add_assign_scaled(&w_operator(k as i64, mode, max_index)?, &HbarPoly::constant(c.clone()))?;
    }
    Ok(op)
}

/// Couplings `c_k = [z^{2k-1}] log R`.
pub fn couplings_from_log_r(log_r: &ZSeries) -> Vec<Coefficient> {
    (1..=(log_r.order() + 1) / 2).map(|k| log_r.coeff(2 * k - 1)).collect()
}

/// `exp(Σ c_k Ŵ_k) · p`.
pub fn givental_direct(couplings: &[Coefficient], p: &TPoly, mode: Mode, window: Option<&Window>) -> Result<TPoly> {
    if p.kind() != VarKind::Big {
        return Err(Error::WrongKind { expected: "T-side" });
    }
    givental_generator(couplings, mode, max_big_index(p))?.exp_apply(p, window)
}

/// Dilaton-shift changes: `Σ δ_k z^k = z(1 - R(-z))` (standard) or
/// `Σ δ⁰_k z^k = 1 - R(-z)` (theta), indexed by `k`.
pub fn dilaton_changes(r: &ZSeries, mode: Mode, max_index: usize) -> Vec<Coefficient> {
    let rm = r.reflect();
    (0..=max_index)
        .map(|k| match mode {
            Mode::Standard if k >= 2 => -rm.coeff(k as i32 - 1),
            Mode::Theta if k >= 1 => -rm.coeff(k as i32),
            _ => rational::zero(),
        })
        .collect()
}

/// Linear part of `T ↦ T^R`: `T_k ↦ Σ_j [z^j]R(-z) T_{k-j}`, images at weight bound `w`.
pub fn r_linear_images(r: &ZSeries, max_index: usize, w: u32) -> BTreeMap<usize, TPoly> {
    let rm = r.reflect();
    (0..=max_index)
        .map(|k| {
            let mut img = TPoly::zero(VarKind::Big, w);
            for j in 0..=k {
                let c = rm.coeff(j as i32);
                if !c.is_zero() {
                    img.add_scalar_term(crate::algebra::tpoly::Monomial::var(k - j), 0, &c);
                }
            }
            (k, img)
        })
        .collect()
}

/// `exp(½ΣV∂∂) exp(ħ^{-1}Σδ∂) p`, then the linear substitution `T ↦ R(-z)T`.
pub fn givental_factorized(r: &ZSeries, p: &TPoly, mode: Mode, window: Option<&Window>) -> Result<TPoly> {
    if p.kind() != VarKind::Big {
        return Err(Error::WrongKind { expected: "T-side" });
    }
    if !r.coeff(0).is_one() {
        return Err(Error::RNotNormalized);
    }
    let n = max_big_index(p);
    let needed = 2 * (n + 1) - 1;
    if (r.order() as usize) < needed {
        return Err(Error::InsufficientOrder { needed: needed as i64, available: r.order() as i64 });
    }
    let v = givental_v_matrix(r, n + 1)?;
    let shift = translation(VarKind::Big, &dilaton_changes(r, mode, n), n);
    let translated = shift.exp_apply(p, window)?;
    let quad = quadratic(&v).exp_apply(&translated, window)?;
    let images = r_linear_images(r, n, p.max_weight());
    let mut out = quad.substitute(&images)?;
    if let Some(w) = window {
        w.prune(&mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::tpoly::Monomial;

    fn big(i: usize, w: u32) -> TPoly {
        TPoly::var(VarKind::Big, w, i)
    }

    #[test]
    fn w_examples() {
        let w = 9;
        assert!(w_apply(1, &big(0, w), Mode::Standard).unwrap().is_zero());
        assert_eq!(w_apply(1, &big(1, w), Mode::Standard).unwrap(), big(0, w).neg());
        let sq = big(0, w).pow(2).unwrap();
        assert_eq!(w_apply(1, &sq, Mode::Standard).unwrap(), TPoly::one(VarKind::Big, w));
        assert!(w_apply(0, &sq, Mode::Standard).is_err());
        let dil = w_apply(1, &big(2, w), Mode::Standard).unwrap();
        assert_eq!(dil.coeff_at(&Monomial::one(), -1), int(1));
        assert_eq!(dil.coeff_at(&Monomial::var(1), 0), int(-1));
    }

    #[test]
    fn trivial_r_is_identity() {
        let p = big(0, 9).pow(3).unwrap().add(&big(1, 9)).unwrap();
        let one = ZSeries::one(12);
        assert_eq!(givental_factorized(&one, &p, Mode::Standard, None).unwrap(), p);
        assert_eq!(givental_direct(&[], &p, Mode::Standard, None).unwrap(), p);
    }
}
