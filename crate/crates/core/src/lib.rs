//! Exact truncated-series engine for the rank-one Givental action, the
//! Heisenberg–Virasoro action on KP tau-functions, and the Hodge-integral
//! generating functions that connect them.

pub mod algebra;
pub mod checks;
pub mod curve;
pub mod error;
pub mod kp;
pub mod operators;
pub mod tau;

pub use algebra::hbar::HbarPoly;
pub use algebra::rational::Coefficient;
pub use algebra::series::ZSeries;
pub use algebra::tpoly::{Monomial, TPoly, VarKind};
pub use error::{Error, Result};
