//! Coefficient rings, truncated series in `z`, and weight-truncated polynomials in the times.

pub mod hbar;
pub mod rational;
pub mod series;
pub mod tpoly;
pub mod window;
