use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::givental::{w_operator, Mode};
use super::opexpr::OpExpr;
use super::virasoro::{heisenberg, virasoro, virasoro_central};
use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::{int, q};
use crate::algebra::tpoly::{monomial_basis, TPoly, VarKind};
use crate::error::Result;

/// Random polynomial with up to `terms` monomials of weight `≤ w`, stored at bound `bound`.
pub fn random_poly(rng: &mut ChaCha8Rng, kind: VarKind, w: u32, bound: u32, terms: usize) -> TPoly {
    let basis = monomial_basis(kind, w, false);
    let mut p = TPoly::zero(kind, bound);
    for _ in 0..terms {
        let m = basis.choose(rng).expect("basis").clone();
        let c = q(rng.gen_range(-20..=20), rng.gen_range(1..=7));
        let e = rng.gen_range(-1..=1);
        p.add_term(m, &HbarPoly::monomial(c, e));
    }
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorCase {
    pub relation: String,
    pub samples: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorReport {
    pub weight: u32,
    pub seed: u64,
    pub cases: Vec<CommutatorCase>,
}

impl CommutatorReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.failures == 0)
    }
}

fn count_failures(inputs: &[TPoly], mut eq: impl FnMut(&TPoly) -> Result<bool>) -> Result<usize> {
    let mut n = 0;
    for p in inputs {
        if !eq(p)? {
            n += 1;
        }
    }
    Ok(n)
}

/// `[L̂_k, L̂_m] = (k-m) L̂_{k+m} + c_{k,m}`, `[L̂_k, Ĵ_m] = -m Ĵ_{k+m}` and
/// `[Ŵ_k, Ŵ_m] = 0` on random polynomials of weight `≤ w`.
pub fn commutator_suite(w: u32, samples: usize, range: i64, seed: u64) -> Result<CommutatorReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // two raising steps of at most `range` each stay below the bound
    let bound = w + 2 * range as u32;
    let idx = bound as usize;
    let small: Vec<TPoly> = (0..samples).map(|_| random_poly(&mut rng, VarKind::Small, w, bound, 6)).collect();
    let big: Vec<TPoly> = (0..samples).map(|_| random_poly(&mut rng, VarKind::Big, w, w, 6)).collect();
    let mut cases = Vec::new();

    let mut fails = 0;
    for k in -range..=range {
        for m in -range..=range {
            let (lk, lm, lkm) = (virasoro(k, idx), virasoro(m, idx), virasoro(k + m, idx));
            let central = virasoro_central(k, m);
            fails += count_failures(&small, |p| {
                let lhs = lk.commutator_apply(&lm, p)?;
                let rhs = lkm.apply(p)?.scale(&int(k - m)).add(&p.scale(&central))?;
                Ok(lhs == rhs)
            })?;
        }
    }
    cases.push(CommutatorCase { relation: "[L_k,L_m]=(k-m)L_{k+m}+(k^3-k)/12 d_{k+m,0}".into(), samples, failures: fails });

    let mut fails = 0;
    for k in -range..=range {
        for m in (-range..=range).filter(|m| *m != 0) {
            let lk = virasoro(k, idx);
            let jm = heisenberg(m, idx)?;
            let jkm = if k + m == 0 { OpExpr::zero(VarKind::Small) } else { heisenberg(k + m, idx)? };
            fails += count_failures(&small, |p| {
                let lhs = lk.commutator_apply(&jm, p)?;
                let rhs = jkm.apply(p)?.scale(&int(-m));
                Ok(lhs == rhs)
            })?;
        }
    }
    cases.push(CommutatorCase { relation: "[L_k,J_m]=-m J_{k+m}".into(), samples, failures: fails });

    let big_idx = VarKind::Big.max_index(w).unwrap_or(0);
    let mut fails = 0;
    for mode in [Mode::Standard, Mode::Theta] {
        for k in 1..=range {
            for m in 1..=range {
                let (wk, wm) = (w_operator(k, mode, big_idx)?, w_operator(m, mode, big_idx)?);
                fails += count_failures(&big, |p| Ok(wk.commutator_apply(&wm, p)?.is_zero()))?;
            }
        }
    }
    cases.push(CommutatorCase { relation: "[W_k,W_m]=0".into(), samples, failures: fails });

    Ok(CommutatorReport { weight: w, seed, cases })
}
