//! The two base tau-functions as exact truncated series.

use serde::Serialize;

use super::intersections::{Base, Intersections};
use crate::algebra::hbar::HbarPoly;
use crate::algebra::tpoly::{monomial_basis, TPoly, VarKind};
use crate::algebra::window::Window;
use crate::error::Result;
use crate::operators::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TauKind {
    Kw,
    Bgw,
}

impl TauKind {
    pub fn name(self) -> &'static str {
        match self {
            TauKind::Kw => "kw",
            TauKind::Bgw => "bgw",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "kw" => Some(TauKind::Kw),
            "bgw" => Some(TauKind::Bgw),
            _ => None,
        }
    }

    /// ħ-grading of the base (`weight = κ · e` on every term).
    pub fn kappa(self) -> i32 {
        match self {
            TauKind::Kw => 3,
            TauKind::Bgw => 1,
        }
    }

    /// Largest weight-drop to defect-gain ratio of the dressing operators.
    pub fn rho(self) -> u32 {
        match self {
            TauKind::Kw => 4,
            TauKind::Bgw => 2,
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            TauKind::Kw => Mode::Standard,
            TauKind::Bgw => Mode::Theta,
        }
    }

    /// Truncation window for dressing this base.
    pub fn window(self, max_weight: u32, dmax: i32) -> Window {
        Window::new(max_weight, self.kappa(), dmax, self.rho())
    }

    fn base(self) -> Base {
        match self {
            TauKind::Kw => Base::KontsevichWitten,
            TauKind::Bgw => Base::BrezinGrossWitten,
        }
    }
}

/// Free energy `F = Σ ħ^{2g-2+n} ⟨τ_{a_1}…τ_{a_n}⟩_g Π T_{a_i} / |Aut|`
/// in the big times, up to weight `w`.
pub fn free_energy(kind: TauKind, w: u32) -> TPoly {
    let mut table = Intersections::new(kind.base());
    let mut out = TPoly::zero(VarKind::Big, w);
    for m in monomial_basis(VarKind::Big, w, false) {
        if m.is_one() {
            continue;
        }
        let a: Vec<u8> = m.vars().flat_map(|(i, e)| std::iter::repeat(i as u8).take(e as usize)).collect();
        let Some(g) = table.genus_for(&a) else { continue };
        let c = table.correlator(g, &a);
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        let e = 2 * g as i32 - 2 + a.len() as i32;
        out.add_term(m.clone(), &HbarPoly::monomial(c / m.factorial(), e));
    }
    out
}

/// `τ = exp(F)` in the big times `T_k`, up to weight `w`.
pub fn tau_big(kind: TauKind, w: u32) -> Result<TPoly> {
    free_energy(kind, w).exp_positive()
}

/// The same series in the odd times `t_{2k+1} = T_k / (2k+1)!!`.
pub fn tau_small(kind: TauKind, w: u32) -> Result<TPoly> {
    tau_big(kind, w)?.big_to_small()
}
