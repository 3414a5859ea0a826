//! Schur polynomials and the D-polynomials of the Hirota bilinear identity.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::rational::{self, int, Coefficient};
use crate::algebra::tpoly::{monomial_basis, Monomial, VarKind};

/// Polynomial in `D_1, D_2, …` (or `y_1, y_2, …`), variable `k` of weight `k`.
pub type DPoly = BTreeMap<Monomial, Coefficient>;

fn weight(m: &Monomial) -> u32 {
    m.weight(VarKind::Small)
}

fn add(target: &mut DPoly, m: Monomial, c: Coefficient) {
    if c.is_zero() {
        return;
    }
    let entry = target.entry(m.clone()).or_insert_with(rational::zero);
    *entry += c;
    if entry.is_zero() {
        target.remove(&m);
    }
}

/// `p_j(x)` with `x_k ↦ scale(k) · X_k`: `Σ_{|λ| = j} Π (scale(k) X_k)^{m_k} / m_k!`.
pub fn schur(j: u32, scale: impl Fn(usize) -> Coefficient) -> DPoly {
    let mut out = DPoly::new();
    for m in monomial_basis(VarKind::Small, j, false) {
        if weight(&m) != j {
            continue;
        }
        let mut c = rational::one() / m.factorial();
        for (k, e) in m.vars() {
            c *= rational::pow(&scale(k), e as i64);
        }
        add(&mut out, m, c);
    }
    out
}

/// Coefficient `P_β(D)` of `y^β` in `Σ_j p_j(-2y) p_{j+1}(D̃) exp(Σ y_r D_r)`,
/// with `D̃_k = D_k / k`. Odd-degree monomials are dropped (`D^α τ·τ = 0`).
pub fn hirota_polynomial(beta: &Monomial) -> DPoly {
    let mut out = DPoly::new();
    for beta1 in beta.divisors() {
        let beta2 = beta.div(&beta1);
        let j = weight(&beta1);
        let mut c1 = rational::one() / beta1.factorial() / beta2.factorial();
        for (_, e) in beta1.vars() {
            c1 *= rational::pow(&int(-2), e as i64);
        }
        for (m, c) in schur(j + 1, |k| rational::q(1, k as i64)) {
            let alpha = m.mul(&beta2);
            if alpha.degree() % 2 == 1 {
                continue;
            }
            add(&mut out, alpha, &c1 * c);
        }
    }
    out
}

/// Every nonzero `P_β` for `y`-weight `1 ≤ |β| ≤ y_weight`.
pub fn hirota_system(y_weight: u32) -> Vec<(Monomial, DPoly)> {
    monomial_basis(VarKind::Small, y_weight, false)
        .into_iter()
        .filter(|b| !b.is_one())
        .map(|b| {
            let p = hirota_polynomial(&b);
            (b, p)
        })
        .filter(|(_, p)| !p.is_empty())
        .collect()
}

/// `D_1^4 + 3 D_2^2 - 4 D_1 D_3`.
pub fn first_kp_polynomial() -> DPoly {
    let mut p = DPoly::new();
    p.insert(Monomial::power(1, 4), int(1));
    p.insert(Monomial::power(2, 2), int(3));
    p.insert(Monomial::from_pairs(&[(1, 1), (3, 1)]), int(-4));
    p
}
