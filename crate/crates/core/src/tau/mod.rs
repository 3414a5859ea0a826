pub mod base;
pub mod hodge;
pub mod intersections;
pub mod series;

pub use base::{free_energy, tau_big, tau_small, TauKind};
pub use hodge::{dressed_tau, hodge_partition, monomial_inputs, rl_identity_check, DressedTau, PointData};
pub use intersections::{Base, Intersections};
pub use series::{build_series, Provenance, SeriesKind, TauSeries};
