//! Linear operators on [`TPoly`](crate::TPoly): Heisenberg–Virasoro modes on
//! the small times, quantized Givental generators on the big times, their
//! exponentials and the two changes of variables.

mod changevars;
mod commutators;
mod conjugation;
mod equality;
mod givental;
mod grunsky;
mod opexpr;
mod virasoro;

pub use changevars::{lemma_changevars_check, tqp_forms, tqp_images, tqp_symbol_forms, tr_of_tqp, ChangeVarsReport};
pub use commutators::{commutator_suite, random_poly, CommutatorCase, CommutatorReport};
pub use conjugation::{conjugation_check, conjugation_coefficient, ConjugationReport};
pub use equality::{operator_equality_check, Discrepancy, EqualityReport};
pub use givental::{
    couplings_from_log_r, dilaton_changes, givental_direct, givental_factorized, givental_generator,
    r_linear_images, w_apply, w_operator, Mode,
};
pub use grunsky::{grunsky_factorization_check, grunsky_quadratic, GrunskyReport};
pub use opexpr::OpExpr;
pub use virasoro::{
    heisenberg, heisenberg_apply, linear_virasoro_generator, quadratic, translation, virasoro, virasoro_apply,
    virasoro_central, virasoro_combination,
};
