//! Mutation testing of the Hirota check: perturb a single coefficient and
//! require a failure.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hirota::{hirota_check, Coverage};
use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::{self, q};
use crate::algebra::tpoly::{monomial_basis, VarKind};
use crate::algebra::tpoly::TPoly;
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Mutant {
    pub monomial: String,
    pub delta: String,
    pub detected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationReport {
    pub seed: u64,
    pub mutants: Vec<Mutant>,
    pub detected: usize,
}

impl MutationReport {
    pub fn all_detected(&self) -> bool {
        self.detected == self.mutants.len()
    }
}

/// Adds `δ · m` to an ħ-free `tau` for `count` random monomials `m` of weight
/// `≤ W - y_weight - 1` and random nonzero `δ`, then reruns the Hirota check.
pub fn mutation_test(tau: &TPoly, y_weight: u32, count: usize, seed: u64) -> Result<MutationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = tau.max_weight();
    let cov = Coverage::Weight { max_weight: w };
    let reach = w.saturating_sub(y_weight + 1);
    let pool = monomial_basis(VarKind::Small, reach, false);
    let mut mutants = Vec::with_capacity(count);
    for _ in 0..count {
        let m = pool.choose(&mut rng).expect("nonempty basis").clone();
        let mut num: i64 = 0;
        while num == 0 {
            num = rng.gen_range(-9..=9);
        }
        let delta = q(num, rng.gen_range(1..=6));
        let mut mutant = tau.clone();
        mutant.add_term(m.clone(), &HbarPoly::constant(delta.clone()));
        debug_assert!(!delta.is_zero());
        let rep = hirota_check(&mutant, y_weight, &cov, "1")?;
        mutants.push(Mutant {
            monomial: m.display(VarKind::Small),
            delta: rational::format(&delta),
            detected: !rep.passed(),
        });
    }
    let detected = mutants.iter().filter(|m| m.detected).count();
    Ok(MutationReport { seed, mutants, detected })
}
