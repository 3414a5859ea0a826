use std::collections::BTreeMap;
use num_traits::Zero;

use hodgekp_core::algebra::rational::{self, q, Coefficient};
use hodgekp_core::algebra::tpoly::{monomial_basis, Monomial, TPoly, VarKind};
use hodgekp_core::algebra::window::Window;
use hodgekp_core::{HbarPoly, ZSeries};
use proptest::prelude::*;

const K: i32 = 8;

fn coeff() -> impl Strategy<Value = Coefficient> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn series() -> impl Strategy<Value = ZSeries> {
    prop::collection::vec(coeff(), (K + 1) as usize).prop_map(|c| ZSeries::new(c, K))
}

/// `z + O(z^2)`.
fn monic() -> impl Strategy<Value = ZSeries> {
    prop::collection::vec(coeff(), K as usize - 1).prop_map(|tail| {
        let mut c = vec![rational::zero(), rational::one()];
        c.extend(tail);
        ZSeries::new(c, K)
    })
}

/// `O(z)`.
fn small() -> impl Strategy<Value = ZSeries> {
    prop::collection::vec(coeff(), K as usize).prop_map(|tail| {
        let mut c = vec![rational::zero()];
        c.extend(tail);
        ZSeries::new(c, K)
    })
}

fn hbar() -> impl Strategy<Value = HbarPoly> {
    prop::collection::vec((-2i32..=2, coeff()), 0..4).prop_map(|terms| {
        let mut h = HbarPoly::zero();
        for (e, c) in terms {
            h.add_term(e, &c);
        }
        h
    })
}

const W: u32 = 6;

fn tpoly(kind: VarKind) -> impl Strategy<Value = TPoly> {
    let basis = monomial_basis(kind, W, false);
    let n = basis.len();
    prop::collection::vec((0..n, -1i32..=1, coeff()), 0..6).prop_map(move |terms| {
        let mut p = TPoly::zero(kind, W);
        for (i, e, c) in terms {
            p.add_term(basis[i].clone(), &HbarPoly::monomial(c, e));
        }
        p
    })
}

/// Positive-weight, ħ-free polynomial (so exp terminates).
fn positive_tpoly() -> impl Strategy<Value = TPoly> {
    tpoly(VarKind::Small).prop_map(|p| {
        p.filtered(|m, _| !m.is_one()).specialize_hbar(&rational::one()).expect("no zero issue")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn reciprocal(a in series()) {
        prop_assume!(!a.coeff(0).is_zero());
        let r = a.recip().unwrap();
        prop_assert!(a.mul(&r).agrees_to(&ZSeries::one(K), K));
    }

    #[test]
    fn reversion_round_trip(a in monic()) {
        let b = a.reversion().unwrap();
        prop_assert!(ZSeries::compose(&a, &b).unwrap().agrees_to(&ZSeries::z(K), K));
        prop_assert!(ZSeries::compose(&b, &a).unwrap().agrees_to(&ZSeries::z(K), K));
    }

    #[test]
    fn exp_log_inverse(a in small()) {
        let e = a.expm().unwrap();
        let back = e.sub(&ZSeries::one(K)).log1p().unwrap();
        prop_assert!(back.agrees_to(&a, K));
    }

    #[test]
    fn derivative_of_antiderivative(a in series()) {
        prop_assert!(a.antiderivative().unwrap().derivative().agrees_to(&a, K));
    }

    #[test]
    fn rational_text_round_trip(c in coeff()) {
        prop_assert_eq!(rational::parse(&rational::format(&c)).unwrap(), c);
    }

    #[test]
    fn hbar_evaluation_is_a_homomorphism(a in hbar(), b in hbar(), x in coeff()) {
        prop_assume!(!x.is_zero());
        let ev = |h: &HbarPoly| h.evaluate(&x).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }

    #[test]
    fn tpoly_ring_axioms(a in tpoly(VarKind::Small), b in tpoly(VarKind::Small), c in tpoly(VarKind::Small)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in tpoly(VarKind::Big), b in tpoly(VarKind::Big), imgs in prop::collection::vec(tpoly(VarKind::Small), 4)) {
        // images of T_0..T_3 with no constant term keep the weight filtration honest
        let images: BTreeMap<usize, TPoly> = imgs
            .into_iter()
            .enumerate()
            .map(|(i, p)| (i, p.filtered(|m, _| m.weight(VarKind::Small) >= 2 * i as u32 + 1)))
            .collect();
        let s = |p: &TPoly| p.substitute(&images).unwrap();
        prop_assert_eq!(s(&a.mul(&b).unwrap()), s(&a).mul(&s(&b)).unwrap());
        prop_assert_eq!(s(&a.add(&b).unwrap()), s(&a).add(&s(&b)).unwrap());
    }

    #[test]
    fn odd_time_rewriting_round_trip(a in tpoly(VarKind::Big)) {
        prop_assert_eq!(a.big_to_small().unwrap().small_to_big().unwrap(), a);
    }

    #[test]
    fn exponential_turns_sums_into_products(a in positive_tpoly(), b in positive_tpoly()) {
        let lhs = a.add(&b).unwrap().exp_positive().unwrap();
        let rhs = a.exp_positive().unwrap().mul(&b.exp_positive().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_leibniz(a in tpoly(VarKind::Small), b in tpoly(VarKind::Small), i in 1usize..=W as usize) {
        // product of two weight-≤6 polynomials is truncated at 6, so compare below the cut
        let lhs = a.mul(&b).unwrap().derivative(i).with_max_weight(W - i as u32);
        let rhs = a.derivative(i).mul(&b).unwrap().add(&a.mul(&b.derivative(i)).unwrap()).unwrap().with_max_weight(W - i as u32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn window_prune_is_idempotent(a in tpoly(VarKind::Small), dmax in 0i32..4) {
        let w = Window::new(4, 3, dmax, 2);
        let once = w.pruned(&a);
        prop_assert_eq!(w.pruned(&once), once.clone());
        for (m, e, _) in once.flat_terms() {
            prop_assert!(w.keeps(m.weight(VarKind::Small), e));
        }
    }
}

#[test]
fn monomial_basis_counts_partitions() {
    // p(0..=6) = 1, 1, 2, 3, 5, 7, 11
    assert_eq!(monomial_basis(VarKind::Small, 6, false).len(), 30);
    assert!(monomial_basis(VarKind::Small, 6, true).iter().all(|m: &Monomial| m.vars().all(|(i, _)| i % 2 == 1)));
}
