//! Graded truncation windows.
//!
//! Every series built from a base tau-function is homogeneous once the curve
//! parameters are given a degree. For a term `ħ^e · m` with `m` of weight `w`,
//! the defect `D = κe - w` equals that parameter degree; it is never negative
//! and no operator used here decreases it. A window keeps the terms with
//! `D ≤ dmax` and `w ≤ W + ρ(dmax - D)`, which is exactly what later steps
//! with weight-drop to defect-gain ratio at most `ρ` can still push into the
//! final range `w ≤ W, D ≤ dmax`.

use serde::Serialize;

use super::tpoly::{Monomial, TPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    /// Final weight bound `W`.
    pub max_weight: u32,
    /// ħ-grading `κ` (3 for the Kontsevich–Witten base, 1 for BGW).
    pub kappa: i32,
    /// Largest defect kept.
    pub dmax: i32,
    /// Weight-drop to defect-gain bound of the remaining steps.
    pub rho: u32,
}

impl Window {
    pub fn new(max_weight: u32, kappa: i32, dmax: i32, rho: u32) -> Self {
        Self { max_weight, kappa, dmax, rho }
    }

    pub fn defect(&self, w: u32, e: i32) -> i32 {
        self.kappa * e - w as i32
    }

    /// Largest weight that can still matter.
    pub fn source_weight(&self) -> u32 {
        self.max_weight + self.rho * self.dmax.max(0) as u32
    }

    pub fn keeps(&self, w: u32, e: i32) -> bool {
        let d = self.defect(w, e);
        d <= self.dmax && w <= self.max_weight + self.rho * (self.dmax - d).max(0) as u32
    }

    /// The final window (`ρ = 0`).
    pub fn target(&self) -> Self {
        Self { rho: 0, ..*self }
    }

    pub fn prune(&self, p: &mut TPoly) {
        let kind = p.kind();
        p.retain(|m: &Monomial, e| self.keeps(m.weight(kind), e));
    }

    pub fn pruned(&self, p: &TPoly) -> TPoly {
        let mut out = p.clone();
        self.prune(&mut out);
        out
    }

    /// Smallest defect present, if any term violates `D ≥ 0`.
    pub fn negative_defect(&self, p: &TPoly) -> Option<i32> {
        let kind = p.kind();
        p.flat_terms()
            .map(|(m, e, _)| self.defect(m.weight(kind), e))
            .filter(|d| *d < 0)
            .min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_expected_terms() {
        let w = Window::new(9, 3, 4, 4);
        assert!(w.keeps(9, 3));
        assert!(w.keeps(24, 8));
        assert!(!w.keeps(27, 9));
        assert!(w.keeps(17, 19 / 3));
        assert!(!w.keeps(3, 3));
        assert!(w.target().keeps(9, 4));
        assert!(!w.target().keeps(10, 4));
        assert_eq!(w.source_weight(), 25);
    }
}
