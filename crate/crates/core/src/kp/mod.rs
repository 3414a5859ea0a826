pub mod hirota;
pub mod mutation;
pub mod schur;

pub use hirota::{first_kp_check, hirota_at, hirota_check, hirota_windowed, residuals, Coverage, HirotaFailure, HirotaReport};
pub use mutation::{mutation_test, MutationReport};
pub use schur::{first_kp_polynomial, hirota_polynomial, hirota_system, schur, DPoly};
