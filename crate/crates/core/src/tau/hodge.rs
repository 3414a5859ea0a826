//! Hodge-type tau-functions: the Givental action on a base tau-function,
//! pulled back along `T ↦ T^{q,p}(t)`, against the Virasoro-dressed base.

use serde::Serialize;

use super::base::{tau_big, TauKind};
use crate::algebra::hbar::HbarPoly;
use crate::algebra::rational::Coefficient;
use crate::algebra::tpoly::{TPoly, VarKind};
use crate::algebra::window::Window;
use crate::curve::{build_curve, shift_data, witt_coefficients, CurveParams, CurveSeries, ShiftData, WittCoeffs};
use crate::error::{Error, Result};
use crate::operators::{
    couplings_from_log_r, givental_direct, givental_factorized, operator_equality_check, tqp_images, translation,
    virasoro_combination, EqualityReport, Mode,
};

/// Curve data for one parameter point, known to a fixed order.
#[derive(Clone, Debug)]
pub struct PointData {
    pub params: CurveParams,
    pub curve: CurveSeries,
    pub a: WittCoeffs,
    pub shifts: ShiftData,
}

impl PointData {
    /// Enough data to act on polynomials of weight `≤ w`.
    pub fn new(params: &CurveParams, w: u32) -> Result<Self> {
        let curve = build_curve(params, w as i32 + 2)?;
        let a = witt_coefficients(&curve.f)?;
        let shifts = shift_data(&curve)?;
        Ok(Self { params: params.clone(), curve, a, shifts })
    }

    pub fn order(&self) -> u32 {
        self.curve.order as u32
    }

    /// Translation coefficients for the mode, indexed by `k`.
    pub fn translations(&self, mode: Mode) -> &[Coefficient] {
        match mode {
            Mode::Standard => &self.shifts.v,
            Mode::Theta => &self.shifts.v0,
        }
    }

    fn require(&self, w: u32) -> Result<()> {
        if self.order() < w + 2 {
            return Err(Error::InsufficientOrder { needed: w as i64 + 2, available: self.order() as i64 });
        }
        Ok(())
    }

    /// `exp(ħ^{-1} Σ v_k ∂_k) exp(Σ a_k L̂_k) p` on the small side.
    pub fn dress(&self, p: &TPoly, mode: Mode, window: Option<&Window>) -> Result<TPoly> {
        let idx = p.max_weight() as usize;
        self.require(p.max_weight())?;
        let vir = virasoro_combination(&self.a, idx, 1);
        let moved = vir.exp_apply(p, window)?;
        translation(VarKind::Small, self.translations(mode), idx).exp_apply(&moved, window)
    }

    /// `[R̂ p](T^{q,p}(t))` for a big-side `p`.
    pub fn givental_pullback(&self, p: &TPoly, mode: Mode, window: Option<&Window>) -> Result<TPoly> {
        self.require(p.max_weight())?;
        let z = givental_factorized(&self.curve.r, p, mode, window)?;
        self.pullback(&z, window)
    }

    fn pullback(&self, z: &TPoly, window: Option<&Window>) -> Result<TPoly> {
        let n = VarKind::Big.max_index(z.max_weight()).unwrap_or(0);
        let mut out = z.substitute(&tqp_images(&self.params, n, z.max_weight())?)?;
        if let Some(w) = window {
            w.prune(&mut out);
        }
        Ok(out)
    }
}

/// `R̂ τ` from the base kind, computed by the direct exponential and by the
/// factorized form; a disagreement is an invariant violation.
pub fn hodge_partition(point: &PointData, kind: TauKind, window: &Window) -> Result<TPoly> {
    let src = window.source_weight();
    point.require(src)?;
    let base = tau_big(kind, src)?;
    let mode = kind.mode();
    let couplings = couplings_from_log_r(&point.curve.log_r);
    let direct = givental_direct(&couplings, &base, mode, Some(window))?;
    let factorized = givental_factorized(&point.curve.r, &base, mode, Some(window))?;
    if let Some((m, c)) = direct.first_difference(&factorized) {
        return Err(Error::Invariant(format!(
            "direct and factorized Givental actions differ at {} by {}",
            m.display(VarKind::Big),
            serde_json::to_string(&c).unwrap_or_default()
        )));
    }
    Ok(direct)
}

/// A Hodge tau-function built both ways.
#[derive(Clone, Debug, Serialize)]
pub struct DressedTau {
    pub kind: TauKind,
    pub params: CurveParams,
    pub window: Window,
    /// `[R̂ τ](T^{q,p}(t))` on the target window.
    pub tau: TPoly,
    /// Whether the Virasoro-dressed base agrees on the whole window.
    pub agree: bool,
    /// First disagreeing monomial, if any.
    pub difference: Option<String>,
}

/// Builds `[R̂ τ](T^{q,p}(t))` and compares it to the dressed base.
pub fn dressed_tau(point: &PointData, kind: TauKind, max_weight: u32, dmax: i32) -> Result<DressedTau> {
    let window = kind.window(max_weight, dmax);
    let z = hodge_partition(point, kind, &window)?;
    let lhs = point.pullback(&z, Some(&window))?;
    let base = tau_big(kind, window.source_weight())?.big_to_small()?;
    let rhs = point.dress(&base, kind.mode(), Some(&window))?;
    let difference = lhs.first_difference(&rhs).map(|(m, c)| {
        format!("{}: {}", m.display(VarKind::Small), serde_json::to_string(&c).unwrap_or_default())
    });
    let target = window.target();
    let mut tau = lhs.with_max_weight(max_weight);
    target.prune(&mut tau);
    Ok(DressedTau { kind, params: point.params.clone(), window, tau, agree: difference.is_none(), difference })
}

/// `[R̂ p](T^{q,p}(t)) = exp(ħ^{-1}Σ v_k ∂_k) exp(Σ a_k L̂_k) p(t)` on every input.
pub fn rl_identity_check(point: &PointData, inputs: &[TPoly], mode: Mode) -> Result<EqualityReport> {
    operator_equality_check(
        inputs,
        |p| point.givental_pullback(p, mode, None),
        |p| point.dress(&p.big_to_small()?, mode, None),
    )
}

/// Inputs for the operator identity: every big-side monomial of weight `≤ w`.
pub fn monomial_inputs(w: u32) -> Vec<TPoly> {
    crate::algebra::tpoly::monomial_basis(VarKind::Big, w, false)
        .into_iter()
        .map(|m| TPoly::monomial(VarKind::Big, w, m, HbarPoly::one()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::algebra::tpoly::Monomial;

    #[test]
    fn rl_on_monomials() {
        let point = PointData::new(&CurveParams::from_ints(1, 3, 2).unwrap(), 7).unwrap();
        let rep = rl_identity_check(&point, &monomial_inputs(7), Mode::Standard).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures.first());
    }

    #[test]
    fn hodge_low_weight() {
        let point = PointData::new(&CurveParams::from_ints(1, 3, 2).unwrap(), 20).unwrap();
        let d = dressed_tau(&point, TauKind::Kw, 5, 3).unwrap();
        assert!(d.agree, "{:?}", d.difference);
        assert_eq!(d.tau.coeff_at(&Monomial::one(), 0), q(1, 1));
    }
}
