use num_traits::Zero;

use super::opexpr::OpExpr;
use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::{self, int, q, Coefficient};
use crate::algebra::tpoly::{TPoly, VarKind};
use crate::curve::WittCoeffs;
use crate::error::{Error, Result};

/// `L̂_m` on `t_1 … t_max_index`:
/// `½Σ_{a+b=-m} ab t_a t_b + Σ k t_k ∂_{k+m} + ½Σ_{a+b=m} ∂_a ∂_b`.
pub fn virasoro(m: i64, max_index: usize) -> OpExpr {
    let mut op = OpExpr::zero(VarKind::Small);
    let n = max_index as i64;
    if m < 0 {
        for a in 1..-m {
            let b = -m - a;
            if a <= n && b <= n {
                op.add_scalar_term(q(a * b, 2), &[a as usize, b as usize], &[]);
            }
        }
    }
    for k in 1..=n {
        let j = k + m;
        if j >= 1 && j <= n {
            op.add_scalar_term(int(k), &[k as usize], &[j as usize]);
        }
    }
    if m > 0 {
        for a in 1..m {
            let b = m - a;
            if a <= n && b <= n {
                op.add_scalar_term(q(1, 2), &[], &[a as usize, b as usize]);
            }
        }
    }
    op
}

/// `Ĵ_k`: `∂_k` for `k > 0`, multiplication by `-k t_{-k}` for `k < 0`.
pub fn heisenberg(k: i64, max_index: usize) -> Result<OpExpr> {
    let mut op = OpExpr::zero(VarKind::Small);
    match k {
        0 => return Err(Error::OperatorIndex("J_0".into())),
        k if k > 0 => {
            if k as usize <= max_index {
                op.add_scalar_term(int(1), &[], &[k as usize]);
            }
        }
        k => op.add_scalar_term(int(-k), &[(-k) as usize], &[]),
    }
    Ok(op)
}

fn index_range(p: &TPoly) -> usize {
    p.max_weight().max(1) as usize
}

pub fn virasoro_apply(m: i64, p: &TPoly) -> Result<TPoly> {
    if p.kind() != VarKind::Small {
        return Err(Error::WrongKind { expected: "t-side" });
    }
    virasoro(m, index_range(p)).apply(p)
}

pub fn heisenberg_apply(k: i64, p: &TPoly) -> Result<TPoly> {
    if p.kind() != VarKind::Small {
        return Err(Error::WrongKind { expected: "t-side" });
    }
    heisenberg(k, index_range(p))?.apply(p)
}

/// `Σ a_k L̂_k` over `1 ≤ k ≤ max_index`.
pub fn virasoro_combination(a: &WittCoeffs, max_index: usize, sign: i64) -> OpExpr {
    let mut op = OpExpr::zero(VarKind::Small);
    let s = int(sign);
    for (k, ak) in a.nonzero() {
        if k <= max_index {
            op.add_assign_scaled(&virasoro(k as i64, max_index), &HbarPoly::constant(ak * &s))
                .expect("same kind");
        }
    }
    op
}

/// `Σ_k a_k Σ_m m t_m ∂_{k+m}` (the linear part of `Σ a_k L̂_k`).
pub fn linear_virasoro_generator(a: &WittCoeffs, max_index: usize) -> OpExpr {
    let mut op = OpExpr::zero(VarKind::Small);
    for (k, ak) in a.nonzero() {
        for m in 1..=max_index {
            if k + m <= max_index {
                op.add_scalar_term(ak * int(m as i64), &[m], &[k + m]);
            }
        }
    }
    op
}

/// `ħ^{-1} Σ c_k ∂_k` for the given kind; `coeffs[k]` is the coefficient of `∂_k`.
pub fn translation(kind: VarKind, coeffs: &[Coefficient], max_index: usize) -> OpExpr {
    let mut op = OpExpr::zero(kind);
    for (k, c) in coeffs.iter().enumerate() {
        if k < kind.first_index() || k > max_index || c.is_zero() {
            continue;
        }
        op.add_term(HbarPoly::monomial(c.clone(), -1), &[], &[k]);
    }
    op
}

/// `½ Σ V_{ij} ∂_{T_i} ∂_{T_j}` over `0 ≤ i, j < V.size()`.
pub fn quadratic(v: &crate::curve::GiventalMatrix) -> OpExpr {
    let mut op = OpExpr::zero(VarKind::Big);
    let n = v.size();
    for i in 0..n {
        for j in 0..n {
            let c = v.get(i, j);
            if !c.is_zero() {
                op.add_scalar_term(c * q(1, 2), &[], &[i, j]);
            }
        }
    }
    op
}

/// Central term of `[L̂_k, L̂_m]`.
pub fn virasoro_central(k: i64, m: i64) -> Coefficient {
    if k + m == 0 {
        q(k * k * k - k, 12)
    } else {
        rational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tpoly::Monomial;

    fn t(i: usize, w: u32) -> TPoly {
        TPoly::var(VarKind::Small, w, i)
    }

    #[test]
    fn examples() {
        let w = 6;
        assert_eq!(virasoro_apply(0, &t(1, w)).unwrap(), t(1, w));
        let l2 = virasoro_apply(-2, &t(1, w)).unwrap();
        assert_eq!(l2.coeff_at(&Monomial::power(1, 3), 0), q(1, 2));
        assert_eq!(l2.coeff_at(&Monomial::var(3), 0), int(3));
        assert_eq!(l2.len(), 2);
        let p = t(1, w).mul(&t(3, w)).unwrap();
        assert_eq!(virasoro_apply(2, &p).unwrap(), t(1, w).pow(2).unwrap());
    }

    #[test]
    fn heisenberg_examples() {
        assert_eq!(heisenberg_apply(3, &t(3, 5)).unwrap(), TPoly::one(VarKind::Small, 5));
        let j = heisenberg_apply(-2, &TPoly::one(VarKind::Small, 5)).unwrap();
        assert_eq!(j, t(2, 5).scale(&int(2)));
        assert!(heisenberg(0, 5).is_err());
        assert!(heisenberg_apply(1, &TPoly::var(VarKind::Big, 5, 0)).is_err());
    }
}
