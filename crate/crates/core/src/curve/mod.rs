//! Univariate data attached to a parameter point: the curve, its uniformizer,
//! the Bernoulli `R`-series, Grunsky and Givental matrices, Witt coefficients
//! and shift vectors.

mod bernoulli;
mod build;
mod matrices;
mod moments;
mod params;
mod shifts;
mod witt;

pub use bernoulli::{bernoulli, bernoulli_table};
pub use build::{
    build_curve, build_from_denominator, denominator, log_r_series, miwa_couplings, r_series, CurveSeries,
};
pub use matrices::{
    givental_v_matrix, grunsky_matrix, identification_residual, perturbed_curve, perturbed_denominator,
    perturbed_residual, GiventalMatrix, GrunskyMatrix, Matrix,
};
pub use moments::{gaussian_moments, i_series, moment_transform};
pub use params::{catalog, CurveParams};
pub use shifts::{shift_data, verify_shift_identities, ShiftData, ShiftIdentities};
pub use witt::{witt_coefficients, witt_flow, WittCoeffs};
