use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::tpoly::TPoly;
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub input: String,
    pub monomial: String,
    pub difference: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EqualityReport {
    pub checked: usize,
    pub failures: Vec<Discrepancy>,
}

impl EqualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Applies both sides to every input and records where they differ.
/// Inputs are processed in parallel; the report keeps input order.
pub fn operator_equality_check<L, R>(inputs: &[TPoly], lhs: L, rhs: R) -> Result<EqualityReport>
where
    L: Fn(&TPoly) -> Result<TPoly> + Sync,
    R: Fn(&TPoly) -> Result<TPoly> + Sync,
{
    let outcomes: Vec<Result<Option<Discrepancy>>> = inputs
        .par_iter()
        .map(|p| {
            let l = lhs(p)?;
            let r = rhs(p)?;
            let diff = l.sub(&r)?;
            let first = diff.terms().next().map(|(m, c)| Discrepancy {
                input: p.to_string(),
                monomial: m.display(diff.kind()),
                difference: serde_json::to_string(c).unwrap_or_default(),
            });
            Ok(first)
        })
        .collect();
    let mut failures = Vec::new();
    for o in outcomes {
        if let Some(d) = o? {
            failures.push(d);
        }
    }
    Ok(EqualityReport { checked: inputs.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tpoly::VarKind;

    #[test]
    fn identity_versus_identity() {
        let inputs = vec![TPoly::var(VarKind::Small, 4, 1), TPoly::one(VarKind::Small, 4)];
        let rep = operator_equality_check(&inputs, |p| Ok(p.clone()), |p| Ok(p.clone())).unwrap();
        assert!(rep.passed());
        let bad = operator_equality_check(&inputs, |p| Ok(p.clone()), |p| Ok(p.neg())).unwrap();
        assert_eq!(bad.failures.len(), 2);
    }
}
