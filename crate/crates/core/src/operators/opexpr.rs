use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::{self, Coefficient};
use crate::algebra::tpoly::{Monomial, TPoly, VarKind};
use crate::algebra::window::Window;
use crate::error::{Error, Result};

type Idx = SmallVec<[usize; 2]>;

/// A finite normal-ordered sum `Σ c · x_{a}… ∂_{b}…` acting on [`TPoly`]
/// values of one variable kind. Terms are grouped by their derivative part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpExpr {
    kind: VarKind,
    /// derivative indices (sorted) → list of (multiplier indices, coefficient)
    terms: BTreeMap<Idx, BTreeMap<Idx, HbarPoly>>,
}

fn sorted(v: &[usize]) -> Idx {
    let mut s: Idx = v.iter().copied().collect();
    s.sort_unstable();
    s
}

impl OpExpr {
    pub fn zero(kind: VarKind) -> Self {
        Self { kind, terms: BTreeMap::new() }
    }

    pub fn identity(kind: VarKind) -> Self {
        let mut op = Self::zero(kind);
        op.add_term(HbarPoly::one(), &[], &[]);
        op
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of elementary terms.
    pub fn len(&self) -> usize {
        self.terms.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · Π x_{mul} Π ∂_{diff}`.
    pub fn add_term(&mut self, c: HbarPoly, mul: &[usize], diff: &[usize]) {
        if c.is_zero() {
            return;
        }
        let first = self.kind.first_index();
        assert!(
            mul.iter().chain(diff).all(|i| *i >= first),
            "operator index below {first}"
        );
        let group = self.terms.entry(sorted(diff)).or_default();
        let key = sorted(mul);
        let slot = group.entry(key.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            group.remove(&key);
            if group.is_empty() {
                self.terms.remove(&sorted(diff));
            }
        }
    }

    pub fn add_scalar_term(&mut self, c: Coefficient, mul: &[usize], diff: &[usize]) {
        self.add_term(HbarPoly::constant(c), mul, diff);
    }

    pub fn add_assign_scaled(&mut self, other: &OpExpr, by: &HbarPoly) -> Result<()> {
        if other.kind != self.kind {
            return Err(Error::MixedKinds);
        }
        for (diff, group) in &other.terms {
            for (mul, c) in group {
                self.add_term(c * by, mul, diff);
            }
        }
        Ok(())
    }

    pub fn scaled(&self, by: &Coefficient) -> Self {
        let mut out = Self::zero(self.kind);
        out.add_assign_scaled(self, &HbarPoly::constant(by.clone())).expect("same kind");
        out
    }

    /// Minimum of `weight(∂ part) - weight(multiplier part)` over all terms.
    pub fn weight_drop(&self) -> i64 {
        let w = |v: &Idx| v.iter().map(|i| self.kind.weight(*i) as i64).sum::<i64>();
        self.terms
            .iter()
            .flat_map(|(d, g)| g.keys().map(move |m| w(d) - w(m)))
            .min()
            .unwrap_or(i64::MAX)
    }

    /// Applies the operator, truncating at the weight bound of `p`.
    pub fn apply(&self, p: &TPoly) -> Result<TPoly> {
        if p.kind() != self.kind {
            return Err(Error::WrongKind { expected: self.kind.name() });
        }
        let mut out = TPoly::zero(p.kind(), p.max_weight());
        for (m, c) in p.terms() {
            // derivative groups this monomial can feed
            for (diff, group) in &self.terms {
                let Some((base, factor)) = differentiate(m, diff) else { continue };
                let scaled = if factor == rational::one() { c.clone() } else { c.scale(&factor) };
                for (mul, k) in group {
                    let mut mono = base.clone();
                    for i in mul {
                        mono = mono.mul_var(*i);
                    }
                    out.add_term(mono, &(&scaled * k));
                }
            }
        }
        Ok(out)
    }

    /// `Σ_n opⁿ p / n!`, optionally pruning every iterate to a window.
    pub fn exp_apply(&self, p: &TPoly, window: Option<&Window>) -> Result<TPoly> {
        let drop = self.weight_drop();
        if self.is_zero() {
            return Ok(p.clone());
        }
        if drop <= 0 {
            return Err(Error::NonNilpotent(drop));
        }
        let mut acc = p.clone();
        if let Some(w) = window {
            w.prune(&mut acc);
        }
        let mut term = acc.clone();
        let mut n = 1i64;
        while !term.is_zero() {
            term = self.apply(&term)?.scale(&rational::q(1, n));
            if let Some(w) = window {
                w.prune(&mut term);
            }
            acc.add_assign_scaled(&term, &HbarPoly::one())?;
            n += 1;
        }
        Ok(acc)
    }

    /// `[self, other] p = self(other p) - other(self p)`.
    pub fn commutator_apply(&self, other: &OpExpr, p: &TPoly) -> Result<TPoly> {
        self.apply(&other.apply(p)?)?.sub(&other.apply(&self.apply(p)?)?)
    }
}

/// `∂_{diff} m` as (monomial, falling-factorial factor), or `None` if zero.
fn differentiate(m: &Monomial, diff: &[usize]) -> Option<(Monomial, Coefficient)> {
    let mut mono = m.clone();
    let mut factor: i64 = 1;
    for i in diff {
        let (next, e) = mono.div_var(*i)?;
        factor *= e as i64;
        mono = next;
    }
    Some((mono, rational::int(factor)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn translation_matches_substitution() {
        let w = 8;
        let t = |i| TPoly::var(VarKind::Small, w, i);
        let p = t(1).pow(3).unwrap().add(&t(2).mul(&t(3)).unwrap()).unwrap();
        let mut op = OpExpr::zero(VarKind::Small);
        op.add_scalar_term(int(2), &[], &[1]);
        op.add_scalar_term(rational::q(-1, 3), &[], &[3]);
        let lhs = op.exp_apply(&p, None).unwrap();
        let mut images = BTreeMap::new();
        for i in 1..=w as usize {
            images.insert(i, t(i));
        }
        images.insert(1, t(1).add(&TPoly::constant(VarKind::Small, w, HbarPoly::constant(int(2)))).unwrap());
        images.insert(
            3,
            t(3).add(&TPoly::constant(VarKind::Small, w, HbarPoly::constant(rational::q(-1, 3)))).unwrap(),
        );
        assert_eq!(lhs, p.substitute(&images).unwrap());
    }

    #[test]
    fn exp_of_zero_and_non_nilpotent() {
        let p = TPoly::var(VarKind::Small, 4, 2);
        assert_eq!(OpExpr::zero(VarKind::Small).exp_apply(&p, None).unwrap(), p);
        let mut op = OpExpr::zero(VarKind::Small);
        op.add_scalar_term(int(1), &[1], &[1]);
        assert_eq!(op.exp_apply(&p, None), Err(Error::NonNilpotent(0)));
    }

    #[test]
    fn second_derivative_factor() {
        let p = TPoly::var(VarKind::Big, 9, 0).pow(3).unwrap();
        let mut op = OpExpr::zero(VarKind::Big);
        op.add_scalar_term(int(1), &[], &[0, 0]);
        let out = op.apply(&p).unwrap();
        assert_eq!(out.coeff_at(&Monomial::var(0), 0), int(6));
    }
}
