//! Hirota bilinear residuals of truncated tau-functions.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::schur::{first_kp_polynomial, hirota_system, DPoly};
use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::{self, Coefficient};
use crate::algebra::tpoly::{Monomial, TPoly, VarKind};
use crate::algebra::window::Window;
use crate::error::{Error, Result};

/// Which residual terms are determined by the truncated input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Coverage {
    /// The input is exact up to this weight.
    Weight { max_weight: u32 },
    /// The input is exact on this window (ħ kept formal).
    Window { window: Window },
}

impl Coverage {
    pub fn max_weight(&self) -> u32 {
        match self {
            Coverage::Weight { max_weight } => *max_weight,
            Coverage::Window { window } => window.max_weight,
        }
    }

    /// Whether the residual term `ħ^e m` of an operator of D-weight `d` is exact.
    pub fn covers(&self, w: u32, e: i32, d: u32) -> bool {
        if w + d > self.max_weight() {
            return false;
        }
        match self {
            Coverage::Weight { .. } => true,
            Coverage::Window { window } => window.kappa * e - (w + d) as i32 <= window.dmax,
        }
    }
}

/// `∂^β τ` for every `β` needed, memoized.
struct Derivatives<'a> {
    tau: &'a TPoly,
    cache: BTreeMap<Monomial, TPoly>,
}

impl<'a> Derivatives<'a> {
    fn new(tau: &'a TPoly) -> Self {
        Self { tau, cache: BTreeMap::new() }
    }

    fn get(&mut self, beta: &Monomial) -> TPoly {
        if let Some(p) = self.cache.get(beta) {
            return p.clone();
        }
        let mut p = self.tau.clone();
        for (i, e) in beta.vars() {
            for _ in 0..e {
                p = p.derivative(i);
            }
        }
        self.cache.insert(beta.clone(), p.clone());
        p
    }
}

/// `D^α τ·τ = Σ_{β ≤ α} α!/(β!(α-β)!) (-1)^{|α-β|} ∂^β τ ∂^{α-β} τ`.
fn bilinear(alpha: &Monomial, derivs: &BTreeMap<Monomial, TPoly>, kind: VarKind, w: u32) -> Result<TPoly> {
    let mut out = TPoly::zero(kind, w);
    let af = alpha.factorial();
    for beta in alpha.divisors() {
        let gamma = alpha.div(&beta);
        let mut c = &af / beta.factorial() / gamma.factorial();
        if gamma.degree() % 2 == 1 {
            c = -c;
        }
        let prod = derivs[&beta].mul(&derivs[&gamma])?;
        out.add_assign_scaled(&prod, &HbarPoly::constant(c))?;
    }
    Ok(out)
}

/// Residuals `P(D) τ·τ` for the given D-polynomials, restricted to the covered terms.
pub fn residuals(tau: &TPoly, polys: &[DPoly], coverage: &Coverage) -> Result<Vec<TPoly>> {
    if tau.kind() != VarKind::Small {
        return Err(Error::WrongKind { expected: "t-side" });
    }
    let alphas: BTreeSet<Monomial> = polys.iter().flat_map(|p| p.keys().cloned()).collect();
    let mut d = Derivatives::new(tau);
    for a in &alphas {
        for b in a.divisors() {
            d.get(&b);
        }
    }
    let derivs = d.cache;
    let w = tau.max_weight();
    let kind = tau.kind();
    let products: BTreeMap<Monomial, TPoly> = alphas
        .par_iter()
        .map(|a| Ok((a.clone(), bilinear(a, &derivs, kind, w)?)))
        .collect::<Result<_>>()?;
    polys
        .iter()
        .map(|p| {
            let mut acc = TPoly::zero(kind, w);
            let mut deg = 0;
            for (alpha, c) in p {
                deg = alpha.weight(VarKind::Small);
                acc.add_assign_scaled(&products[alpha], &HbarPoly::constant(c.clone()))?;
            }
            acc.retain(|m, e| coverage.covers(m.weight(kind), e, deg));
            Ok(acc)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HirotaFailure {
    pub equation: String,
    pub monomial: String,
    pub coefficient: HbarPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct HirotaReport {
    /// `"formal"` or the rational value ħ was set to.
    pub hbar: String,
    #[serde(rename = "yWeight")]
    pub y_weight: u32,
    /// Largest residual weight examined.
    #[serde(rename = "coveredWeight")]
    pub covered_weight: i64,
    pub coverage: Coverage,
    pub equations: usize,
    pub status: &'static str,
    pub failures: Vec<HirotaFailure>,
}

impl HirotaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const MAX_REPORTED: usize = 16;

fn report(hbar: String, y_weight: u32, coverage: Coverage, names: Vec<String>, res: Vec<TPoly>) -> HirotaReport {
    let mut failures = Vec::new();
    for (name, r) in names.iter().zip(&res) {
        for (m, c) in r.terms() {
            if failures.len() < MAX_REPORTED {
                failures.push(HirotaFailure {
                    equation: name.clone(),
                    monomial: m.display(VarKind::Small),
                    coefficient: c.clone(),
                });
            }
        }
    }
    let any = res.iter().any(|r| !r.is_zero());
    HirotaReport {
        hbar,
        y_weight,
        covered_weight: coverage.max_weight() as i64 - y_weight as i64 - 1,
        coverage,
        equations: names.len(),
        status: if any { "fail" } else { "pass" },
        failures,
    }
}

/// Full bilinear identity through `y`-weight `y_weight`.
pub fn hirota_check(tau: &TPoly, y_weight: u32, coverage: &Coverage, hbar: &str) -> Result<HirotaReport> {
    let system = hirota_system(y_weight);
    let names = system.iter().map(|(b, _)| b.display(VarKind::Small).replace('t', "y")).collect();
    let polys: Vec<DPoly> = system.into_iter().map(|(_, p)| p).collect();
    let res = residuals(tau, &polys, coverage)?;
    Ok(report(hbar.to_string(), y_weight, *coverage, names, res))
}

/// The first KP equation only.
pub fn first_kp_check(tau: &TPoly, coverage: &Coverage, hbar: &str) -> Result<HirotaReport> {
    let res = residuals(tau, &[first_kp_polynomial()], coverage)?;
    Ok(report(hbar.to_string(), 3, *coverage, vec!["D1^4+3D2^2-4D1D3".into()], res))
}

/// Hirota check of an exact truncation at `ħ = value`.
pub fn hirota_at(tau: &TPoly, value: &Coefficient, y_weight: u32) -> Result<HirotaReport> {
    let t = tau.specialize_hbar(value)?;
    let cov = Coverage::Weight { max_weight: tau.max_weight() };
    hirota_check(&t, y_weight, &cov, &rational::format(value))
}

/// Hirota check of a windowed series at `ħ = value`: ħ is rescaled and kept
/// formal, so every power of ħ is tested separately.
pub fn hirota_windowed(tau: &TPoly, window: &Window, value: &Coefficient, y_weight: u32) -> Result<HirotaReport> {
    if value.is_zero() {
        return Err(Error::HbarZero);
    }
    let t = tau.rescale_hbar(value);
    hirota_check(&t, y_weight, &Coverage::Window { window: window.target() }, &rational::format(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, q};

    fn t(i: usize, w: u32) -> TPoly {
        TPoly::var(VarKind::Small, w, i)
    }

    #[test]
    fn exponential_of_linear_is_tau() {
        // exp(Σ c_k t_k) solves every Hirota equation
        let w = 8;
        let f = t(1, w).scale(&q(2, 3)).add(&t(2, w).scale(&int(-1))).unwrap().add(&t(3, w)).unwrap();
        let tau = f.exp_positive().unwrap();
        let rep = hirota_check(&tau, 4, &Coverage::Weight { max_weight: w }, "1").unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn one_soliton_and_broken() {
        // 1 + exp(Σ (a^k - b^k) t_k) truncated
        let w = 8;
        let (a, b) = (int(2), int(-1));
        let mut lin = TPoly::zero(VarKind::Small, w);
        for k in 1..=w as usize {
            let c = rational::pow(&a, k as i64) - rational::pow(&b, k as i64);
            lin = lin.add(&t(k, w).scale(&c)).unwrap();
        }
        let tau = lin.exp_positive().unwrap().add(&TPoly::one(VarKind::Small, w)).unwrap();
        let cov = Coverage::Weight { max_weight: w };
        assert!(hirota_check(&tau, 4, &cov, "1").unwrap().passed());
        let broken = tau.add(&t(1, w).pow(2).unwrap()).unwrap();
        assert!(!hirota_check(&broken, 4, &cov, "1").unwrap().passed());
        assert!(!first_kp_check(&broken, &cov, "1").unwrap().passed());
    }
}
